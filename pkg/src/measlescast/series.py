"""Annual time-series container and the stationarity toolkit.

Holds the observed series, first-differencing and its inverse, sample
autocorrelation / partial autocorrelation (the Box-Jenkins identification
instruments), and year-over-year trend summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ArityError,
    DegenerateError,
    LagError,
    LengthError,
    NumericalError,
)

# Prediction-error variance below this is treated as numerically singular
# in the Durbin-Levinson recursion.
_DL_FLOOR = 1e-14


@dataclass(frozen=True)
class TimeSeries:
    """Ordered real-valued observations with annual integer labels.

    Attributes:
        values: Observation values (case counts or differenced values).
        start_label: Calendar year of the first observation; labels
            increase by one per step.
        differencing_applied: How many times this series has been
            differenced relative to the raw data.
    """

    values: np.ndarray
    start_label: int
    differencing_applied: int = 0

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1:
            raise ValueError(f"values must be one-dimensional, got shape {arr.shape}")
        if self.differencing_applied < 0:
            raise ValueError("differencing_applied must be >= 0")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def labels(self) -> np.ndarray:
        """Year label for each observation."""
        return self.start_label + np.arange(len(self.values))


@dataclass(frozen=True)
class Correlogram:
    """ACF or PACF coefficients by lag plus the white-noise band.

    The band is the usual approximate 95% bound 1.96/sqrt(n).
    """

    lags: tuple
    coefficients: np.ndarray
    confidence_band: float

    def __post_init__(self):
        arr = np.array(self.coefficients, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "coefficients", arr)
        object.__setattr__(self, "lags", tuple(int(k) for k in self.lags))


def default_max_lag(n: int) -> int:
    """Default correlogram depth: min(n - 1, floor(10 * log10(n)))."""
    if n < 2:
        raise LengthError(f"need at least 2 observations, got {n}")
    return max(1, min(n - 1, int(math.floor(10.0 * math.log10(n)))))


def difference(series: TimeSeries, d: int) -> TimeSeries:
    """Apply first differencing d times.

    Args:
        series: Input series.
        d: Number of differencing passes, >= 0.

    Returns:
        Series of length len(series) - d with start_label advanced by d
        and differencing_applied incremented by d.

    Raises:
        LengthError: If the series has d or fewer observations.
    """
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    if len(series) <= d:
        raise LengthError(
            f"cannot difference {len(series)} observations {d} times"
        )
    vals = series.values
    for _ in range(d):
        vals = vals[1:] - vals[:-1]
    return TimeSeries(
        values=vals,
        start_label=series.start_label + d,
        differencing_applied=series.differencing_applied + d,
    )


def anchors_of(series: TimeSeries, d: int) -> list[float]:
    """Anchor values needed to undo d differencing passes: the first
    observation at each intermediate differencing level, shallowest first."""
    anchors = []
    current = series
    for _ in range(d):
        anchors.append(float(current.values[0]))
        current = difference(current, 1)
    return anchors


def integrate(diffs: TimeSeries, initials) -> TimeSeries:
    """Invert differencing using one anchor value per level.

    ``initials`` is ordered shallowest level first, as produced by
    :func:`anchors_of`; ``integrate(difference(x, d), anchors_of(x, d))``
    reproduces ``x`` exactly.

    Raises:
        ArityError: If no anchors are given, or the anchor count disagrees
            with the series' recorded differencing depth.
    """
    initials = [float(v) for v in initials]
    k = len(initials)
    if k == 0:
        raise ArityError("integrate requires at least one anchor value")
    if diffs.differencing_applied > 0 and k != diffs.differencing_applied:
        raise ArityError(
            f"{k} anchors given but series records "
            f"{diffs.differencing_applied} differencing passes"
        )
    vals = diffs.values
    for anchor in reversed(initials):
        vals = np.concatenate([[anchor], anchor + np.cumsum(vals)])
    return TimeSeries(
        values=vals,
        start_label=diffs.start_label - k,
        differencing_applied=max(diffs.differencing_applied - k, 0),
    )


def _autocorrelations(x: np.ndarray, max_lag: int) -> np.ndarray:
    """Sample autocorrelations rho_0..rho_max_lag with the biased
    (divide-by-n) covariance estimator."""
    n = len(x)
    centered = x - x.mean()
    c0 = float(np.dot(centered, centered)) / n
    rho = np.empty(max_lag + 1)
    rho[0] = 1.0
    for k in range(1, max_lag + 1):
        rho[k] = float(np.dot(centered[:-k], centered[k:])) / n / c0
    return rho


def _check_acf_inputs(series: TimeSeries, max_lag: int) -> np.ndarray:
    n = len(series)
    if n < 2:
        raise LengthError(f"need at least 2 observations, got {n}")
    if max_lag < 1:
        raise LagError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= n:
        raise LagError(f"max_lag {max_lag} must be < series length {n}")
    x = series.values
    if np.ptp(x) == 0.0:
        raise DegenerateError("series is constant; autocorrelation undefined")
    return x


def sample_acf(series: TimeSeries, max_lag: int) -> Correlogram:
    """Sample autocorrelation function at lags 0..max_lag.

    Coefficient at lag k is c_k / c_0 with
    c_k = (1/n) * sum_{t=1..n-k} (x_t - xbar)(x_{t+k} - xbar).
    The divide-by-n convention keeps the autocovariance sequence positive
    semidefinite, so downstream Durbin-Levinson stays in [-1, 1].

    Raises:
        LengthError: Fewer than 2 observations.
        LagError: max_lag out of range.
        DegenerateError: Constant series.
    """
    x = _check_acf_inputs(series, max_lag)
    rho = _autocorrelations(x, max_lag)
    return Correlogram(
        lags=tuple(range(max_lag + 1)),
        coefficients=rho,
        confidence_band=1.96 / math.sqrt(len(x)),
    )


def sample_pacf(series: TimeSeries, max_lag: int) -> Correlogram:
    """Sample partial autocorrelations phi_kk at lags 1..max_lag.

    Computed by the Durbin-Levinson recursion on the sample ACF; the lag-1
    partial equals the lag-1 autocorrelation.

    Raises:
        LengthError, LagError, DegenerateError: As for :func:`sample_acf`.
        NumericalError: If a recursion denominator underflows below 1e-14.
    """
    x = _check_acf_inputs(series, max_lag)
    rho = _autocorrelations(x, max_lag)

    pacf = np.empty(max_lag)
    phi_prev = np.empty(0)
    v = 1.0
    for k in range(1, max_lag + 1):
        if v < _DL_FLOOR:
            raise NumericalError(
                f"Durbin-Levinson prediction variance underflow at lag {k}"
            )
        num = rho[k] - float(np.dot(phi_prev, rho[k - 1 : 0 : -1]))
        phi_kk = num / v
        phi_prev = np.concatenate([phi_prev - phi_kk * phi_prev[::-1], [phi_kk]])
        v *= 1.0 - phi_kk * phi_kk
        pacf[k - 1] = phi_kk

    return Correlogram(
        lags=tuple(range(1, max_lag + 1)),
        coefficients=pacf,
        confidence_band=1.96 / math.sqrt(len(x)),
    )


def trend_summary(series: TimeSeries):
    """Year-over-year deltas with direction per consecutive pair.

    Returns:
        List of (period_label, delta, sign) tuples, one per consecutive
        pair, labelled by the later year; sign is "increase", "decrease"
        or "flat" (delta exactly 0).

    Raises:
        LengthError: Fewer than 2 observations.
    """
    if len(series) < 2:
        raise LengthError("trend summary needs at least 2 observations")
    out = []
    vals = series.values
    for i in range(1, len(vals)):
        delta = float(vals[i] - vals[i - 1])
        if delta > 0:
            sign = "increase"
        elif delta < 0:
            sign = "decrease"
        else:
            sign = "flat"
        out.append((int(series.start_label + i), delta, sign))
    return out
