"""ARIMA trend analysis and forecasting for epidemic case-count series."""

__version__ = "0.1.0"

from .arima import (
    ArimaFit,
    ArimaOrder,
    ArimaParams,
    ResidualSeries,
    check_roots,
    css_residuals,
    fit,
    log_likelihood,
    simulate,
)
from .diagnostics import (
    CandidateReport,
    LjungBoxReport,
    ModelRanking,
    chi_square_sf,
    grid_search,
    information_criteria,
    ljung_box,
)
from .errors import (
    ArityError,
    DataError,
    DegenerateError,
    DofError,
    DomainError,
    DuplicateError,
    EmptyError,
    GapError,
    HeaderError,
    HorizonError,
    LagError,
    LengthError,
    MeaslescastError,
    NoModelError,
    NotConvergedError,
    NumericalError,
    OrderError,
    RowError,
    StabilityError,
)
from .forecasting import ForecastResult, forecast, psi_weights, z_quantile
from .ingest import (
    Dataset,
    SurveillanceRecord,
    aggregate_annual,
    parse_csv,
    serialize_csv,
    validate_regions,
)
from .series import (
    Correlogram,
    TimeSeries,
    anchors_of,
    default_max_lag,
    difference,
    integrate,
    sample_acf,
    sample_pacf,
    trend_summary,
)
from .svgplot import render_svg

__all__ = [
    "ArimaFit",
    "ArimaOrder",
    "ArimaParams",
    "ArityError",
    "CandidateReport",
    "Correlogram",
    "DataError",
    "Dataset",
    "DegenerateError",
    "DofError",
    "DomainError",
    "DuplicateError",
    "EmptyError",
    "ForecastResult",
    "GapError",
    "HeaderError",
    "HorizonError",
    "LagError",
    "LengthError",
    "LjungBoxReport",
    "MeaslescastError",
    "ModelRanking",
    "NoModelError",
    "NotConvergedError",
    "NumericalError",
    "OrderError",
    "ResidualSeries",
    "RowError",
    "StabilityError",
    "SurveillanceRecord",
    "TimeSeries",
    "aggregate_annual",
    "anchors_of",
    "check_roots",
    "chi_square_sf",
    "css_residuals",
    "default_max_lag",
    "difference",
    "fit",
    "forecast",
    "grid_search",
    "information_criteria",
    "integrate",
    "ljung_box",
    "log_likelihood",
    "parse_csv",
    "psi_weights",
    "render_svg",
    "sample_acf",
    "sample_pacf",
    "serialize_csv",
    "simulate",
    "trend_summary",
    "validate_regions",
    "z_quantile",
]
