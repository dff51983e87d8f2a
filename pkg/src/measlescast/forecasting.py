"""h-step forecasts with psi-weight prediction intervals.

Point forecasts run the model recursion forward with future innovations set
to zero and the fitted CSS residuals standing in for past innovations.
Interval widths come from the truncated moving-average representation: the
j-step error variance on the differenced scale is sigma2 * sum_{i<j} psi_i^2,
and for d > 0 the psi sequence is pushed through the cumulative-sum operator
d times so variances live on the case-count scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arima import ArimaFit, ArimaOrder, ArimaParams, check_roots
from .errors import DomainError, HorizonError, NotConvergedError, StabilityError
from .series import TimeSeries, difference


@dataclass(frozen=True)
class ForecastResult:
    """Forecast bundle on the case-count scale.

    ``point``, ``lower`` and ``upper`` are floored at zero (case counts
    cannot be negative); the unclamped values are kept alongside for
    auditability. ``psi`` holds the differenced-scale weights psi_0..psi_{h-1}.
    """

    horizon_labels: tuple
    point: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    level: float
    psi: np.ndarray
    point_unclamped: np.ndarray
    lower_unclamped: np.ndarray
    upper_unclamped: np.ndarray
    clamped: bool

    def __post_init__(self):
        for name in (
            "point",
            "lower",
            "upper",
            "psi",
            "point_unclamped",
            "lower_unclamped",
            "upper_unclamped",
        ):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(
            self, "horizon_labels", tuple(int(y) for y in self.horizon_labels)
        )


# Acklam's rational approximation to the standard normal quantile; the
# Newton polish below pushes the error to machine precision.
_ACKLAM_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_ACKLAM_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_ACKLAM_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_ACKLAM_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)


def _normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def z_quantile(prob: float) -> float:
    """Standard normal quantile; |Phi(z_quantile(p)) - p| < 1e-8.

    Raises:
        DomainError: If prob is not strictly inside (0, 1).
    """
    if not 0.0 < prob < 1.0:
        raise DomainError(f"probability must be in (0, 1), got {prob}")
    a, b, c, d = _ACKLAM_A, _ACKLAM_B, _ACKLAM_C, _ACKLAM_D
    p_low = 0.02425
    if prob < p_low:
        q = math.sqrt(-2.0 * math.log(prob))
        x = (
            ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
        ) / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)
    elif prob <= 1.0 - p_low:
        q = prob - 0.5
        r = q * q
        x = (
            (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5])
            * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0)
        )
    else:
        q = math.sqrt(-2.0 * math.log(1.0 - prob))
        x = -(
            ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
        ) / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0)

    # One Newton step against the erf-based CDF.
    err = _normal_cdf(x) - prob
    pdf = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
    if pdf > 0.0:
        x -= err / pdf
    return x


def psi_weights(params: ArimaParams, order: ArimaOrder, h: int) -> np.ndarray:
    """Moving-average weights psi_0..psi_{h-1} of the differenced process.

    psi_0 = 1 and psi_j = sum_{i=1..min(j,p)} phi_i psi_{j-i} - theta_j,
    with theta_j = 0 beyond the MA order (subtractive sign convention).

    Raises:
        StabilityError: If the parameters violate the root conditions.
        ValueError: If h < 1.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    phi, theta = params.phi, params.theta
    if not check_roots(phi) or not check_roots(theta):
        raise StabilityError("psi weights require stationary/invertible parameters")
    p, q = len(phi), len(theta)
    psi = np.zeros(h)
    psi[0] = 1.0
    for j in range(1, h):
        val = -theta[j - 1] if j <= q else 0.0
        for i in range(1, min(j, p) + 1):
            val += phi[i - 1] * psi[j - i]
        psi[j] = val
    return psi


def forecast(
    fit: ArimaFit,
    original: TimeSeries,
    h: int,
    level: float = 0.95,
) -> ForecastResult:
    """Forecast h steps ahead on the original (case-count) scale.

    Args:
        fit: A converged fit of ``original``.
        original: The raw series the fit came from.
        h: Forecast horizon, >= 1.
        level: Interval coverage probability in (0, 1).

    Raises:
        NotConvergedError: If the fit did not converge.
        HorizonError: If h < 1.
        DomainError: If level is outside (0, 1).
    """
    if h < 1:
        raise HorizonError(f"horizon must be >= 1, got {h}")
    if not fit.converged:
        raise NotConvergedError("forecasting requires a converged fit")
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must be in (0, 1), got {level}")

    order, params = fit.order, fit.params
    p, d, q = order.p, order.d, order.q
    phi, theta, c = params.phi, params.theta, params.constant

    work = difference(original, d) if d > 0 else original
    w = work.values
    n = len(w)

    # Innovations aligned with the differenced series; presample and future
    # values are zero, per the CSS convention.
    innov = np.zeros(n)
    innov[fit.residuals.conditioning_dropped :] = fit.residuals.values

    ext = np.concatenate([w, np.zeros(h)])
    for s in range(1, h + 1):
        t = n + s - 1
        val = c
        for i in range(1, p + 1):
            val += phi[i - 1] * ext[t - i]
        for j in range(1, q + 1):
            if 0 <= t - j < n:
                val -= theta[j - 1] * innov[t - j]
        ext[t] = val
    w_fc = ext[n:]

    psi = psi_weights(params, order, h)
    psi_scale = psi.copy()
    for _ in range(d):
        psi_scale = np.cumsum(psi_scale)

    if d == 0:
        point = w_fc.copy()
    else:
        # Walk back up the differencing levels, anchored on the last
        # observation at each level.
        anchors = []
        level_series = original
        for k in range(d):
            anchors.append(float(level_series.values[-1]))
            level_series = difference(level_series, 1)
        point = w_fc
        for anchor in reversed(anchors):
            point = anchor + np.cumsum(point)

    stderr = np.sqrt(params.sigma2 * np.cumsum(psi_scale**2))
    z = z_quantile(0.5 * (1.0 + level))
    lower = point - z * stderr
    upper = point + z * stderr

    last_year = original.start_label + len(original) - 1
    labels = tuple(range(last_year + 1, last_year + 1 + h))

    point_c = np.maximum(point, 0.0)
    lower_c = np.maximum(lower, 0.0)
    upper_c = np.maximum(upper, 0.0)
    clamped = bool(
        np.any(point_c != point) or np.any(lower_c != lower) or np.any(upper_c != upper)
    )

    return ForecastResult(
        horizon_labels=labels,
        point=point_c,
        lower=lower_c,
        upper=upper_c,
        level=level,
        psi=psi,
        point_unclamped=point,
        lower_unclamped=lower,
        upper_unclamped=upper,
        clamped=clamped,
    )
