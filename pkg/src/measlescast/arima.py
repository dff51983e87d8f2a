"""ARIMA(p,d,q) model core: representation, likelihood, fitting, simulation.

The process convention throughout the package is

    X_t = c + phi_1 X_{t-1} + ... + phi_p X_{t-p}
            + a_t - theta_1 a_{t-1} - ... - theta_q a_{t-q}

with Gaussian innovations a_t. Note the MA terms SUBTRACT: some ecosystems
use the additive convention, so thetas fitted here have the opposite sign
of those tools' output.

Estimation is conditional sum of squares: presample innovations are zero
and the first p observations of the (differenced) series are dropped from
the sum of squares. The Gaussian likelihood is concentrated over the
innovation variance and maximised by simplex descent on an unconstrained
parameterisation (partial autocorrelations through tanh), which keeps every
visited point stationary and invertible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateError,
    LengthError,
    OrderError,
    StabilityError,
)
from .rng import SplitMix64
from .series import TimeSeries, difference
from .simplex import minimize_simplex

ORDER_CEILING = 2
SIMULATION_BURN_IN = 100

# tanh saturates to exactly 1.0 in float64 for arguments beyond ~19; keep
# partials strictly inside the open interval so root conditions stay strict.
_PARTIAL_BOUND = 1.0 - 1e-12


@dataclass(frozen=True)
class ArimaOrder:
    """Model order (p, d, q); the engine ceiling is 2 for each."""

    p: int
    d: int
    q: int

    def __post_init__(self):
        for name, value in (("p", self.p), ("d", self.d), ("q", self.q)):
            if value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
            if value > ORDER_CEILING:
                raise OrderError(
                    f"{name}={value} exceeds the engine ceiling of {ORDER_CEILING}"
                )


@dataclass(frozen=True)
class ArimaParams:
    """Coefficients of the differenced-series model.

    Attributes:
        phi: AR coefficients phi_1..phi_p.
        theta: MA coefficients theta_1..theta_q (subtractive convention).
        constant: Intercept c of the differenced series; relates to the
            series mean mu by c = mu * (1 - sum(phi)).
        sigma2: Innovation variance, > 0.
    """

    phi: np.ndarray
    theta: np.ndarray
    constant: float
    sigma2: float

    def __post_init__(self):
        phi = np.array(self.phi, dtype=float)
        theta = np.array(self.theta, dtype=float)
        phi.setflags(write=False)
        theta.setflags(write=False)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "theta", theta)
        if not self.sigma2 > 0:
            raise ValueError(f"sigma2 must be > 0, got {self.sigma2}")


@dataclass(frozen=True)
class ResidualSeries:
    """Innovation estimates a_t with the CSS conditioning convention."""

    values: np.ndarray
    conditioning_dropped: int

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ArimaFit:
    """Result of conditional maximum-likelihood estimation."""

    order: ArimaOrder
    params: ArimaParams
    residuals: ResidualSeries
    log_likelihood: float
    n_effective: int
    converged: bool
    iterations: int
    constant_included: bool = True


def check_roots(coeffs) -> bool:
    """True iff 1 - c1 z - c2 z^2 has all roots strictly outside the unit
    circle (closed-form conditions for degree <= 2).

    Raises:
        OrderError: More than 2 coefficients.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if len(coeffs) > ORDER_CEILING:
        raise OrderError(
            f"root check supports degree <= {ORDER_CEILING}, got {len(coeffs)}"
        )
    if len(coeffs) == 0:
        return True
    if len(coeffs) == 1:
        return bool(abs(coeffs[0]) < 1.0)
    c1, c2 = float(coeffs[0]), float(coeffs[1])
    return abs(c2) < 1.0 and c2 + c1 < 1.0 and c2 - c1 < 1.0


def partials_to_coeffs(partials: np.ndarray) -> np.ndarray:
    """Expand partial autocorrelations into AR-style coefficients.

    Each partial in (-1, 1) maps to a coefficient vector whose polynomial
    1 - c1 z - ... has all roots strictly outside the unit circle.
    """
    coeffs = np.array(partials, dtype=float)
    for k in range(1, len(partials)):
        coeffs[:k] = coeffs[:k] - partials[k] * coeffs[k - 1 :: -1]
    return coeffs


def _raw_css(phi, theta, c, w):
    """Residual recursion on plain arrays; returns a_t for t >= p."""
    p, q = len(phi), len(theta)
    n = len(w)
    e = w[p:] - c
    for i in range(1, p + 1):
        e = e - phi[i - 1] * w[p - i : n - i]
    if q == 0:
        return e
    # The MA recursion is inherently sequential; rolling registers keep the
    # Python loop tight. Lagged innovations start at zero (presample/CSS).
    out = [0.0] * len(e)
    if q == 1:
        th1 = float(theta[0])
        prev = 0.0
        for t, val in enumerate(e.tolist()):
            prev = val + th1 * prev
            out[t] = prev
    else:
        th1, th2 = float(theta[0]), float(theta[1])
        lag1 = lag2 = 0.0
        for t, val in enumerate(e.tolist()):
            cur = val + th1 * lag1 + th2 * lag2
            out[t] = cur
            lag2 = lag1
            lag1 = cur
    return np.array(out)


def css_residuals(params: ArimaParams, w: TimeSeries) -> ResidualSeries:
    """Recursive innovations of the already-differenced series.

    a_t = w_t - c - sum_i phi_i w_{t-i} + sum_j theta_j a_{t-j}, computed
    for t = p+1..n with presample innovations set to zero; the first p
    observations condition the recursion and are dropped.

    Raises:
        LengthError: If len(w) <= p + q.
    """
    p, q = len(params.phi), len(params.theta)
    if len(w) <= p + q:
        raise LengthError(
            f"need more than p+q={p + q} observations, got {len(w)}"
        )
    values = _raw_css(params.phi, params.theta, params.constant, w.values)
    return ResidualSeries(values=values, conditioning_dropped=p)


def _concentrated_loglik(sse: float, m: int) -> float:
    sigma2_hat = sse / m
    return -(m / 2.0) * (math.log(2.0 * math.pi * sigma2_hat) + 1.0)


def log_likelihood(params: ArimaParams, w: TimeSeries) -> float:
    """Gaussian conditional log-likelihood at the given parameters.

    l = -(m/2) ln(2 pi sigma2) - SSE / (2 sigma2) over the m CSS residuals;
    at the conditional maximum sigma2 = SSE/m this equals
    -(m/2)(ln(2 pi SSE/m) + 1).

    Raises:
        LengthError: Propagated from the residual recursion.
        DegenerateError: If SSE is zero (perfect fit, unbounded likelihood).
    """
    res = css_residuals(params, w)
    m = len(res)
    sse = float(np.dot(res.values, res.values))
    if sse == 0.0:
        raise DegenerateError("zero residual sum of squares; likelihood unbounded")
    return -(m / 2.0) * math.log(2.0 * math.pi * params.sigma2) - sse / (
        2.0 * params.sigma2
    )


def fit(
    series: TimeSeries,
    order: ArimaOrder,
    include_constant: bool = True,
) -> ArimaFit:
    """Estimate model parameters by conditional maximum likelihood.

    Differences the series d times, then maximises the concentrated
    Gaussian CSS likelihood over (phi, theta, constant) with simplex
    descent on the unconstrained tanh/partial parameterisation. The
    mean-only order (0,0,0) has a closed-form optimum (sample mean and
    biased variance) and is computed directly.

    Iteration cap reached means ``converged=False``; no exception.

    Raises:
        LengthError: If len(series) < p + q + d + 3.
        DegenerateError: If the optimum has zero residual variance.
    """
    p, d, q = order.p, order.d, order.q
    if len(series) < p + q + d + 3:
        raise LengthError(
            f"order ({p},{d},{q}) needs at least {p + q + d + 3} observations, "
            f"got {len(series)}"
        )
    w = difference(series, d).values if d > 0 else series.values
    n = len(w)
    m = n - p

    if p == 0 and q == 0:
        c = float(np.mean(w)) if include_constant else 0.0
        resid = w - c
        sse = float(np.dot(resid, resid))
        if sse == 0.0:
            raise DegenerateError("differenced series is constant")
        return ArimaFit(
            order=order,
            params=ArimaParams(
                phi=np.empty(0), theta=np.empty(0), constant=c, sigma2=sse / m
            ),
            residuals=ResidualSeries(values=resid, conditioning_dropped=0),
            log_likelihood=_concentrated_loglik(sse, m),
            n_effective=m,
            converged=True,
            iterations=0,
            constant_included=include_constant,
        )

    def unpack(x):
        phi = partials_to_coeffs(
            np.clip(np.tanh(x[:p]), -_PARTIAL_BOUND, _PARTIAL_BOUND)
        )
        theta = partials_to_coeffs(
            np.clip(np.tanh(x[p : p + q]), -_PARTIAL_BOUND, _PARTIAL_BOUND)
        )
        c = x[p + q] if include_constant else 0.0
        return phi, theta, c

    def objective(x):
        phi, theta, c = unpack(x)
        a = _raw_css(phi, theta, c, w)
        sse = max(float(np.dot(a, a)), 1e-300)
        return -_concentrated_loglik(sse, m)

    c0 = float(np.mean(w))
    x0 = np.zeros(p + q + (1 if include_constant else 0))
    steps = np.full(len(x0), 0.5)
    if include_constant:
        x0[p + q] = c0
        steps[p + q] = 0.25 * (1.0 + float(np.std(w)))

    result = minimize_simplex(objective, x0, steps)

    phi, theta, c = unpack(result.x)
    a = _raw_css(phi, theta, c, w)
    sse = float(np.dot(a, a))
    if sse == 0.0:
        raise DegenerateError("zero residual sum of squares at the optimum")
    return ArimaFit(
        order=order,
        params=ArimaParams(phi=phi, theta=theta, constant=c, sigma2=sse / m),
        residuals=ResidualSeries(values=a, conditioning_dropped=p),
        log_likelihood=_concentrated_loglik(sse, m),
        n_effective=m,
        converged=result.converged,
        iterations=result.iterations,
        constant_included=include_constant,
    )


def simulate(
    params: ArimaParams,
    order: ArimaOrder,
    n: int,
    seed: int,
    start_label: int = 2000,
) -> TimeSeries:
    """Generate a synthetic series from the model.

    Runs the process recursion on seeded SplitMix64/Box-Muller innovations,
    discards a 100-observation burn-in (presample values start at the
    process mean), then applies d cumulative integrations. Identical
    arguments produce bit-identical output.

    Raises:
        StabilityError: If the coefficients violate the root conditions.
        ValueError: If n < 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    phi, theta = params.phi, params.theta
    if not check_roots(phi):
        raise StabilityError(f"AR coefficients {phi.tolist()} are not stationary")
    if not check_roots(theta):
        raise StabilityError(f"MA coefficients {theta.tolist()} are not invertible")

    p, q = len(phi), len(theta)
    total = SIMULATION_BURN_IN + n
    a = math.sqrt(params.sigma2) * SplitMix64(seed).normals(total)
    mu = params.constant / (1.0 - float(np.sum(phi))) if p else params.constant

    x = np.empty(total)
    for t in range(total):
        value = params.constant + a[t]
        for i in range(1, p + 1):
            value += phi[i - 1] * (x[t - i] if t - i >= 0 else mu)
        for j in range(1, q + 1):
            if t - j >= 0:
                value -= theta[j - 1] * a[t - j]
        x[t] = value

    out = x[SIMULATION_BURN_IN:]
    for _ in range(order.d):
        out = np.cumsum(out)
    return TimeSeries(values=out, start_label=start_label)
