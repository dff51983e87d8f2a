"""Dependency-free SVG rendering of history + forecast charts.

Geometry is pinned so golden files are portable (see docs/plotting.md):
800x500 viewBox, margins top 60 / right 20 / bottom 40 / left 60, linear
scales over the data extents padded by 5% of the range on each side.
Output is a pure function of the inputs.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import EmptyError
from .forecasting import ForecastResult
from .series import TimeSeries

WIDTH = 800
HEIGHT = 500
MARGIN_TOP = 60
MARGIN_RIGHT = 20
MARGIN_BOTTOM = 40
MARGIN_LEFT = 60

_HISTORY_COLOR = "#1f77b4"
_FORECAST_COLOR = "#d62728"
_BAND_COLOR = "#d62728"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _tick_label(value: float) -> str:
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return f"{value:.6g}"


def render_svg(
    history: TimeSeries,
    fc: ForecastResult | None = None,
    title: str = "",
) -> str:
    """Render the historical polyline, forecast polyline, and interval band.

    With ``fc=None`` only the history polyline is drawn. Returns the SVG
    document as text.

    Raises:
        EmptyError: If the history series is empty.
    """
    if len(history) == 0:
        raise EmptyError("cannot render an empty series")

    hist_years = history.labels.astype(float)
    hist_vals = history.values

    xs = [hist_years]
    ys = [hist_vals]
    if fc is not None:
        fc_years = np.array(fc.horizon_labels, dtype=float)
        xs.append(fc_years)
        ys.extend([fc.point, fc.lower, fc.upper])

    x_all = np.concatenate(xs)
    y_all = np.concatenate(ys)
    if not (np.all(np.isfinite(x_all)) and np.all(np.isfinite(y_all))):
        raise ValueError("plot data contains non-finite values")

    x_min, x_max = float(x_all.min()), float(x_all.max())
    y_min, y_max = float(y_all.min()), float(y_all.max())
    x_pad = 0.05 * (x_max - x_min) if x_max > x_min else 0.5
    y_pad = 0.05 * (y_max - y_min) if y_max > y_min else 1.0
    x_lo, x_hi = x_min - x_pad, x_max + x_pad
    y_lo, y_hi = y_min - y_pad, y_max + y_pad

    plot_left = MARGIN_LEFT
    plot_right = WIDTH - MARGIN_RIGHT
    plot_top = MARGIN_TOP
    plot_bottom = HEIGHT - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return plot_left + (x - x_lo) / (x_hi - x_lo) * (plot_right - plot_left)

    def sy(y: float) -> float:
        return plot_bottom - (y - y_lo) / (y_hi - y_lo) * (plot_bottom - plot_top)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.1f}" y="30" text-anchor="middle" '
            f'font-family="sans-serif" font-size="18">{_escape(title)}</text>'
        )

    # Y gridlines and tick labels (5 divisions).
    for i in range(6):
        value = y_lo + (y_hi - y_lo) * i / 5.0
        y_px = sy(value)
        parts.append(
            f'<line x1="{plot_left}" y1="{_fmt(y_px)}" x2="{plot_right}" '
            f'y2="{_fmt(y_px)}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{plot_left - 6}" y="{_fmt(y_px + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_tick_label(value)}</text>'
        )

    # Year ticks: every year when few, otherwise a uniform stride.
    first_year = int(math.ceil(x_min))
    last_year = int(math.floor(x_max))
    n_years = last_year - first_year + 1
    stride = max(1, int(math.ceil(n_years / 12.0)))
    for year in range(first_year, last_year + 1, stride):
        x_px = sx(float(year))
        parts.append(
            f'<line x1="{_fmt(x_px)}" y1="{plot_bottom}" x2="{_fmt(x_px)}" '
            f'y2="{plot_bottom + 5}" stroke="#000000" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(x_px)}" y="{plot_bottom + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{year}</text>'
        )

    # Axes.
    parts.append(
        f'<line x1="{plot_left}" y1="{plot_bottom}" x2="{plot_right}" '
        f'y2="{plot_bottom}" stroke="#000000" stroke-width="1.5"/>'
    )
    parts.append(
        f'<line x1="{plot_left}" y1="{plot_top}" x2="{plot_left}" '
        f'y2="{plot_bottom}" stroke="#000000" stroke-width="1.5"/>'
    )

    if fc is not None:
        # Interval band, anchored at the last observation for continuity.
        band_pts = [(float(hist_years[-1]), float(hist_vals[-1]))]
        band_pts += [(float(x), float(v)) for x, v in zip(fc_years, fc.upper)]
        band_pts += [(float(x), float(v)) for x, v in zip(fc_years[::-1], fc.lower[::-1])]
        band = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in band_pts)
        parts.append(
            f'<polygon points="{band}" fill="{_BAND_COLOR}" fill-opacity="0.15" '
            f'stroke="none"/>'
        )

    history_pts = " ".join(
        f"{_fmt(sx(float(x)))},{_fmt(sy(float(y)))}"
        for x, y in zip(hist_years, hist_vals)
    )
    parts.append(
        f'<polyline points="{history_pts}" fill="none" stroke="{_HISTORY_COLOR}" '
        f'stroke-width="2"/>'
    )

    if fc is not None:
        fc_pts = [(float(hist_years[-1]), float(hist_vals[-1]))]
        fc_pts += [(float(x), float(v)) for x, v in zip(fc_years, fc.point)]
        forecast_path = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in fc_pts)
        parts.append(
            f'<polyline points="{forecast_path}" fill="none" '
            f'stroke="{_FORECAST_COLOR}" stroke-width="2" stroke-dasharray="6,4"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
