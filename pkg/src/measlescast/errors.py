"""Typed exceptions raised across the package.

Every failure mode callers are expected to handle gets its own class so the
CLI can map them onto stable exit codes without string matching.
"""

from __future__ import annotations


class MeaslescastError(Exception):
    """Base class for all package errors."""


class LengthError(MeaslescastError):
    """Series too short for the requested operation."""


class ArityError(MeaslescastError):
    """Anchor-value count does not match the differencing depth."""


class DegenerateError(MeaslescastError):
    """Input has no usable variation (constant series, all-zero residuals)."""


class LagError(MeaslescastError):
    """Requested lag is out of range for the series length."""


class NumericalError(MeaslescastError):
    """A recursion denominator underflowed past the safe threshold."""


class OrderError(MeaslescastError):
    """Model order exceeds the engine ceiling."""


class StabilityError(MeaslescastError):
    """Coefficients violate the stationarity/invertibility root conditions."""


class NotConvergedError(MeaslescastError):
    """Operation requires a converged fit."""


class DofError(MeaslescastError):
    """Ljung-Box degrees of freedom would be non-positive."""


class DomainError(MeaslescastError):
    """Argument outside the mathematical domain of the function."""


class HorizonError(MeaslescastError):
    """Forecast horizon must be a positive integer."""


class NoModelError(MeaslescastError):
    """No candidate model converged during grid search."""


class DataError(MeaslescastError):
    """Base class for ingest failures."""


class HeaderError(DataError):
    """CSV header row missing or wrong."""


class RowError(DataError):
    """A CSV data row failed validation."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateError(DataError):
    """Two rows share the same (region, year) key."""

    def __init__(self, region: str, year: int):
        super().__init__(f"duplicate record for ({region!r}, {year})")
        self.key = (region, year)


class GapError(DataError):
    """Year coverage is not contiguous."""

    def __init__(self, missing_years):
        self.missing_years = tuple(missing_years)
        super().__init__(
            "missing years: " + ", ".join(str(y) for y in self.missing_years)
        )


class EmptyError(DataError):
    """Dataset or series is empty where content is required."""
