"""Command-line front door.

Subcommands: acf, forecast, select, simulate, export. Machine-readable
output goes to the designated path (`-` for stdout); human messages go to
stderr. Exit codes are a stable contract:

    0  success
    1  usage error (bad flags or values)
    2  data error (unreadable input, parse/validation failure, too short)
    3  degenerate series (no variation)
    4  fit did not converge (report still written)
    5  model order above the engine ceiling
    6  no grid-search candidate converged
    7  unstable simulation parameters
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .arima import ArimaOrder, ArimaParams, fit as fit_arima, simulate as simulate_arima
from .diagnostics import (
    default_diag_lags,
    grid_search,
    information_criteria,
    ljung_box,
)
from .errors import (
    DataError,
    DegenerateError,
    DofError,
    DomainError,
    HorizonError,
    LagError,
    LengthError,
    MeaslescastError,
    NoModelError,
    OrderError,
    StabilityError,
)
from .forecasting import forecast as run_forecast
from .ingest import (
    Dataset,
    SurveillanceRecord,
    aggregate_annual,
    parse_csv,
    serialize_csv,
    validate_regions,
)
from .report import (
    candidate_dict,
    content_digest,
    correlogram_dict,
    dumps_canonical,
    order_dict,
    run_report,
    SCHEMA_VERSION,
)
from .series import default_max_lag, sample_acf, sample_pacf, trend_summary
from .svgplot import render_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DEGENERATE = 3
EXIT_NOT_CONVERGED = 4
EXIT_ORDER = 5
EXIT_NO_MODEL = 6
EXIT_UNSTABLE = 7

MAX_HORIZON = 200


class _UsageExit(Exception):
    """Bad flag or value; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage failures exit 1, not 2."""

    def error(self, message):
        raise _UsageExit(message)


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def _read_input(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None


def _write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _parse_order(text: str) -> ArimaOrder:
    parts = text.split(",")
    if len(parts) != 3:
        raise _UsageExit(f"order must be 'p,d,q', got {text!r}")
    try:
        p, d, q = (int(tok.strip()) for tok in parts)
    except ValueError:
        raise _UsageExit(f"order must be three integers, got {text!r}") from None
    if p < 0 or d < 0 or q < 0:
        raise _UsageExit("order components must be non-negative")
    return ArimaOrder(p, d, q)


def _parse_coeffs(text: str, name: str) -> list:
    if not text:
        return []
    try:
        return [float(tok.strip()) for tok in text.split(",")]
    except ValueError:
        raise _UsageExit(f"{name} must be comma-separated numbers, got {text!r}") from None


def _load_series(input_path: str):
    data = _read_input(input_path)
    ds = parse_csv(data)
    for warning in validate_regions(ds):
        _say(f"warning: {warning}")
    return data, aggregate_annual(ds)


def _try_ljung_box(fit_result):
    """Portmanteau diagnostics, or None when the residuals are too few."""
    n_res = len(fit_result.residuals)
    fitted = fit_result.order.p + fit_result.order.q
    lags = default_diag_lags(n_res)
    if lags <= fitted or lags >= n_res:
        _say(
            f"note: Ljung-Box skipped ({n_res} residuals cannot support "
            f"{fitted} fitted parameters at default lag depth)"
        )
        return None
    try:
        return ljung_box(fit_result.residuals, lags, fitted)
    except (DofError, LagError, DegenerateError) as exc:
        _say(f"note: Ljung-Box skipped ({exc})")
        return None


def _cmd_acf(args) -> int:
    data, series = _load_series(args.input)
    max_lag = args.max_lag if args.max_lag is not None else default_max_lag(len(series))
    acf = sample_acf(series, max_lag)
    pacf = sample_pacf(series, max_lag)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": f"acf --input {args.input} --max-lag {max_lag} --out-json {args.out_json}",
        "input_digest": content_digest(data),
        "n": len(series),
        "start_year": series.start_label,
        "acf": correlogram_dict(acf),
        "pacf": correlogram_dict(pacf),
    }
    _write_output(args.out_json, dumps_canonical(doc))
    return EXIT_OK


def _cmd_forecast(args) -> int:
    if args.horizon < 1:
        raise _UsageExit(f"horizon must be >= 1, got {args.horizon}")
    if args.horizon > MAX_HORIZON:
        raise _UsageExit(f"horizon capped at {MAX_HORIZON}, got {args.horizon}")
    if not 0.0 < args.level < 1.0:
        raise _UsageExit(f"level must be inside (0, 1), got {args.level}")
    order = _parse_order(args.order)

    data, series = _load_series(args.input)
    fit_result = fit_arima(series, order, include_constant=not args.no_constant)

    diagnostics = _try_ljung_box(fit_result)
    criteria = information_criteria(fit_result) if fit_result.converged else None
    fc = (
        run_forecast(fit_result, series, args.horizon, args.level)
        if fit_result.converged
        else None
    )

    command = (
        f"forecast --input {args.input} --order {order.p},{order.d},{order.q}"
        f" --horizon {args.horizon} --level {args.level!r}"
        + (" --no-constant" if args.no_constant else "")
        + f" --out-json {args.out_json}"
        + (f" --out-svg {args.out_svg}" if args.out_svg else "")
    )
    doc = run_report(
        tool_version=__version__,
        command=command,
        input_digest=content_digest(data),
        order=order,
        params=fit_result.params,
        converged=fit_result.converged,
        diagnostics=diagnostics,
        criteria=criteria,
        forecast=fc,
    )
    doc["trend"] = [
        {"year": year, "delta": delta, "sign": sign}
        for year, delta, sign in trend_summary(series)
    ]
    _write_output(args.out_json, dumps_canonical(doc))

    if args.out_svg:
        title = f"Measles cases with {args.horizon}-year forecast"
        _write_output(args.out_svg, render_svg(series, fc, title))

    if not fit_result.converged:
        _say("fit did not converge; report written with converged=false")
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_select(args) -> int:
    max_order = _parse_order(args.max_order)
    data, series = _load_series(args.input)
    ranking = grid_search(series, max_order.p, max_order.d, max_order.q)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": f"select --input {args.input} --max-order "
        f"{max_order.p},{max_order.d},{max_order.q} --out-json {args.out_json}",
        "input_digest": content_digest(data),
        "winner": order_dict(ranking.winner),
        "candidates": [candidate_dict(c) for c in ranking.candidates],
    }
    _write_output(args.out_json, dumps_canonical(doc))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.n < 1:
        raise _UsageExit(f"--n must be >= 1, got {args.n}")
    if not (math.isfinite(args.sigma2) and args.sigma2 > 0):
        raise _UsageExit(f"--sigma2 must be a positive number, got {args.sigma2}")
    if not math.isfinite(args.constant):
        raise _UsageExit(f"--constant must be finite, got {args.constant}")
    if args.d < 0:
        raise _UsageExit(f"--d must be >= 0, got {args.d}")
    last_year = args.start_year + args.n - 1
    if args.start_year < 1900 or last_year > 2100:
        raise _UsageExit(
            f"synthetic years {args.start_year}..{last_year} leave the "
            f"1900-2100 range the CSV format accepts"
        )
    phi = _parse_coeffs(args.phi, "--phi")
    theta = _parse_coeffs(args.theta, "--theta")
    if not all(math.isfinite(v) for v in phi + theta):
        raise _UsageExit("coefficients must be finite numbers")
    if len(phi) > 2 or len(theta) > 2 or args.d > 2:
        raise OrderError("simulation orders are limited to 2")
    order = ArimaOrder(len(phi), args.d, len(theta))
    params = ArimaParams(
        phi=np.array(phi), theta=np.array(theta),
        constant=args.constant, sigma2=args.sigma2,
    )
    sim = simulate_arima(params, order, args.n, args.seed, start_label=args.start_year)
    records = tuple(
        SurveillanceRecord(
            region="Synthetic",
            year=int(year),
            cases=max(0, int(round(value))),
            deaths=0,
        )
        for year, value in zip(sim.labels, sim.values)
    )
    _write_output(args.out, serialize_csv(Dataset(records=records, source_note="simulated")))
    return EXIT_OK


def _cmd_export(args) -> int:
    data = _read_input(args.input)
    ds = parse_csv(data)
    for warning in validate_regions(ds):
        _say(f"warning: {warning}")
    _write_output(args.out, serialize_csv(ds))
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(
        prog="measlescast",
        description="ARIMA trend analysis and forecasting for epidemic case counts.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    acf = sub.add_parser("acf", help="emit ACF/PACF correlograms as JSON")
    acf.add_argument("--input", required=True, help="surveillance CSV path")
    acf.add_argument("--max-lag", type=int, default=None)
    acf.add_argument("--out-json", default="-", help="output path or - for stdout")
    acf.set_defaults(func=_cmd_acf)

    fc = sub.add_parser("forecast", help="fit a model and forecast h steps ahead")
    fc.add_argument("--input", required=True)
    fc.add_argument("--order", default="1,0,1", help="model order p,d,q")
    fc.add_argument("--horizon", type=int, default=5)
    fc.add_argument("--level", type=float, default=0.95)
    fc.add_argument("--no-constant", action="store_true")
    fc.add_argument("--out-json", default="-")
    fc.add_argument("--out-svg", default=None)
    fc.set_defaults(func=_cmd_forecast)

    sel = sub.add_parser("select", help="grid-search orders and rank by BIC")
    sel.add_argument("--input", required=True)
    sel.add_argument("--max-order", default="2,2,2", help="grid bounds p,d,q")
    sel.add_argument("--out-json", default="-")
    sel.set_defaults(func=_cmd_select)

    sim = sub.add_parser("simulate", help="write a synthetic surveillance CSV")
    sim.add_argument("--phi", default="", help="AR coefficients, comma-separated")
    sim.add_argument("--theta", default="", help="MA coefficients, comma-separated")
    sim.add_argument("--constant", type=float, default=0.0)
    sim.add_argument("--sigma2", type=float, default=1.0)
    sim.add_argument("--d", type=int, default=0, help="integration passes")
    sim.add_argument("--n", type=int, default=20)
    sim.add_argument("--seed", type=int, default=1)
    sim.add_argument("--start-year", type=int, default=2000)
    sim.add_argument("--out", default="-")
    sim.set_defaults(func=_cmd_simulate)

    exp = sub.add_parser("export", help="validate and canonically re-serialize a CSV")
    exp.add_argument("--input", required=True)
    exp.add_argument("--out", default="-")
    exp.set_defaults(func=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageExit as exc:
        _say(f"usage error: {exc}")
        return EXIT_USAGE
    except (HorizonError, DomainError, LagError) as exc:
        _say(f"usage error: {exc}")
        return EXIT_USAGE
    except OrderError as exc:
        _say(f"order error: {exc}")
        return EXIT_ORDER
    except DegenerateError as exc:
        _say(f"degenerate input: {exc}")
        return EXIT_DEGENERATE
    except NoModelError as exc:
        _say(f"selection failed: {exc}")
        return EXIT_NO_MODEL
    except StabilityError as exc:
        _say(f"unstable parameters: {exc}")
        return EXIT_UNSTABLE
    except (DataError, LengthError) as exc:
        _say(f"data error: {exc}")
        return EXIT_DATA
    except MeaslescastError as exc:
        _say(f"error: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
