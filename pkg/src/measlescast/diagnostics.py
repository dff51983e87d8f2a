"""Residual diagnostics, information criteria, and order selection.

The chi-square tail needed by the Ljung-Box test is computed here from
first principles (regularized incomplete gamma: series expansion for small
arguments, continued fraction for large) so the package carries no
statistical dependency.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .arima import ArimaFit, ArimaOrder, ResidualSeries, fit as fit_arima
from .errors import (
    DegenerateError,
    DofError,
    DomainError,
    LagError,
    MeaslescastError,
    NoModelError,
    NotConvergedError,
)
from .series import TimeSeries, _autocorrelations

NO_PARALLEL_ENV = "MEASLESCAST_NO_PARALLEL"

_GAMMA_EPS = 1e-16
_GAMMA_ITMAX = 500
_FPMIN = 1e-300


@dataclass(frozen=True)
class LjungBoxReport:
    """Portmanteau test of residual whiteness."""

    q_statistic: float
    dof: int
    p_value: float
    lags_used: int


@dataclass(frozen=True)
class CandidateReport:
    """One grid-search candidate; skipped entries carry no criteria."""

    order: ArimaOrder
    aic: float | None
    bic: float | None
    converged: bool
    skipped: bool = False
    note: str = ""


@dataclass(frozen=True)
class ModelRanking:
    """All candidates plus the BIC winner."""

    candidates: tuple
    winner: ArimaOrder


def _lower_gamma_series(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x) by series expansion."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_GAMMA_ITMAX):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_gamma_cf(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) by continued fraction
    (modified Lentz algorithm)."""
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_ITMAX + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def chi_square_sf(x: float, k: int) -> float:
    """Survival function P(X > x) of the chi-square distribution with k
    degrees of freedom, absolute error below 1e-10.

    Raises:
        DomainError: If x < 0 or k < 1.
    """
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    if x == 0.0:
        return 1.0
    a = 0.5 * k
    s = 0.5 * x
    if s < a + 1.0:
        return min(1.0, max(0.0, 1.0 - _lower_gamma_series(a, s)))
    return min(1.0, max(0.0, _upper_gamma_cf(a, s)))


def ljung_box(
    residuals: ResidualSeries, lags: int, fitted_param_count: int
) -> LjungBoxReport:
    """Ljung-Box portmanteau statistic over the residual autocorrelations.

    Q = n (n+2) sum_{k=1..m} r_k^2 / (n-k), referred to a chi-square with
    m - fitted_param_count degrees of freedom.

    Raises:
        DofError: If lags <= fitted_param_count.
        LagError: If the residual series is not longer than ``lags``.
        DegenerateError: If the residuals have zero variance.
    """
    if lags <= fitted_param_count:
        raise DofError(
            f"lags ({lags}) must exceed fitted parameter count ({fitted_param_count})"
        )
    values = residuals.values
    n = len(values)
    if n <= lags:
        raise LagError(f"need more than {lags} residuals, got {n}")
    if np.ptp(values) == 0.0:
        raise DegenerateError("residuals have zero variance")

    r = _autocorrelations(values, lags)
    q = n * (n + 2.0) * float(
        np.sum(r[1:] ** 2 / (n - np.arange(1, lags + 1, dtype=float)))
    )
    dof = lags - fitted_param_count
    return LjungBoxReport(
        q_statistic=q,
        dof=dof,
        p_value=chi_square_sf(q, dof),
        lags_used=lags,
    )


def default_diag_lags(n_residuals: int) -> int:
    """Default portmanteau depth: min(10, n/2)."""
    return min(10, n_residuals // 2)


def information_criteria(fit: ArimaFit) -> tuple:
    """AIC and BIC of a converged fit.

    Parameter count k = p + q + (1 if a constant was estimated) + 1 for the
    innovation variance; AIC = -2l + 2k, BIC = -2l + k ln(n_effective).

    Raises:
        NotConvergedError: If the fit did not converge.
    """
    if not fit.converged:
        raise NotConvergedError("information criteria require a converged fit")
    k = fit.order.p + fit.order.q + (1 if fit.constant_included else 0) + 1
    aic = -2.0 * fit.log_likelihood + 2.0 * k
    bic = -2.0 * fit.log_likelihood + k * math.log(fit.n_effective)
    return aic, bic


def _rank_key(entry):
    order, _aic, bic = entry
    return (bic, order.p + order.q, order.q, order.p)


def grid_search(
    series: TimeSeries,
    max_p: int,
    max_d: int,
    max_q: int,
    include_constant: bool = True,
    parallel: bool | None = None,
) -> ModelRanking:
    """Fit every order in the grid and rank converged fits by BIC.

    Ties break toward fewer parameters, then lower q, then lower p.
    Candidates the series is too short for are listed as skipped; fits that
    hit the iteration cap are listed with ``converged=False``. The ranking
    is a pure reduction over the candidate list, so worker parallelism
    (disabled via the MEASLESCAST_NO_PARALLEL=1 environment variable or
    ``parallel=False``) cannot change the result.

    Raises:
        OrderError: If any maximum exceeds the engine ceiling.
        NoModelError: If no candidate converges.
    """
    orders = [
        ArimaOrder(p, d, q)
        for p, d, q in product(
            range(max_p + 1), range(max_d + 1), range(max_q + 1)
        )
    ]

    if parallel is None:
        parallel = os.environ.get(NO_PARALLEL_ENV, "") != "1"

    def evaluate(order: ArimaOrder) -> CandidateReport:
        needed = order.p + order.q + order.d + 3
        if len(series) < needed:
            return CandidateReport(
                order=order,
                aic=None,
                bic=None,
                converged=False,
                skipped=True,
                note=f"needs {needed} observations, series has {len(series)}",
            )
        try:
            result = fit_arima(series, order, include_constant=include_constant)
        except MeaslescastError as exc:
            return CandidateReport(
                order=order,
                aic=None,
                bic=None,
                converged=False,
                skipped=True,
                note=str(exc),
            )
        if not result.converged:
            return CandidateReport(
                order=order,
                aic=None,
                bic=None,
                converged=False,
                note="iteration cap reached",
            )
        aic, bic = information_criteria(result)
        return CandidateReport(order=order, aic=aic, bic=bic, converged=True)

    if parallel and len(orders) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(orders))) as pool:
            reports = list(pool.map(evaluate, orders))
    else:
        reports = [evaluate(order) for order in orders]

    ranked = sorted(
        ((r.order, r.aic, r.bic) for r in reports if r.converged),
        key=_rank_key,
    )
    if not ranked:
        raise NoModelError("no candidate model converged")
    return ModelRanking(candidates=tuple(reports), winner=ranked[0][0])
