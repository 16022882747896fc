"""Minimal self-contained SVG charts (inline styles, no external assets)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape

__all__ = ["LineSeries", "PointSeries", "render_chart"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


@dataclass(frozen=True)
class PointSeries:
    label: str
    points: tuple  # of (x, y)
    color: str | None = None


@dataclass(frozen=True)
class LineSeries:
    label: str
    points: tuple  # of (x, y)
    color: str | None = None
    dashed: bool = False


@dataclass
class _Frame:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    left: float = 72.0
    top: float = 48.0
    width: float = 720.0
    height: float = 480.0
    right_pad: float = 24.0
    bottom_pad: float = 56.0

    plot_width: float = field(init=False)
    plot_height: float = field(init=False)

    def __post_init__(self) -> None:
        self.plot_width = self.width - self.left - self.right_pad
        self.plot_height = self.height - self.top - self.bottom_pad

    def x(self, value: float) -> float:
        span = self.x_max - self.x_min
        return self.left + (value - self.x_min) / span * self.plot_width

    def y(self, value: float) -> float:
        span = self.y_max - self.y_min
        return self.top + self.plot_height - (value - self.y_min) / span * self.plot_height


def _nice_ticks(low: float, high: float, count: int = 6) -> list[float]:
    if high <= low:
        return [low]
    raw_step = (high - low) / max(count - 1, 1)
    magnitude = 10.0 ** math.floor(math.log10(raw_step))
    for multiplier in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = multiplier * magnitude
        if step >= raw_step:
            break
    first = math.ceil(low / step) * step
    ticks = []
    value = first
    while value <= high + 0.5 * step:
        ticks.append(0.0 if abs(value) < 1e-12 * step else value)
        value += step
    return ticks


def _format_tick(value: float) -> str:
    if value == int(value) and abs(value) < 1e7:
        return str(int(value))
    return f"{value:.4g}"


def _bounds(series_list) -> tuple[float, float, float, float]:
    xs = [x for series in series_list for x, _ in series.points]
    ys = [y for series in series_list for _, y in series.points]
    x_min, x_max = min(xs), max(xs)
    y_min, y_max = min(ys), max(ys)
    if x_max == x_min:
        x_min, x_max = x_min - 1.0, x_max + 1.0
    if y_max == y_min:
        y_min, y_max = y_min - 1.0, y_max + 1.0
    x_pad = 0.04 * (x_max - x_min)
    y_pad = 0.06 * (y_max - y_min)
    return x_min - x_pad, x_max + x_pad, max(0.0, y_min - y_pad) if y_min >= 0.0 else y_min - y_pad, y_max + y_pad


def render_chart(
    points: list[PointSeries],
    lines: list[LineSeries],
    *,
    title: str,
    x_label: str,
    y_label: str,
    width: float = 720.0,
    height: float = 480.0,
) -> str:
    """Render scatter and line series into a standalone SVG document."""
    all_series = [s for s in (*points, *lines) if s.points]
    if not all_series:
        raise ValueError("nothing to plot")
    x_min, x_max, y_min, y_max = _bounds(all_series)
    frame = _Frame(x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max, width=width, height=height)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" font-family="sans-serif" font-size="16" '
        f'text-anchor="middle">{escape(title)}</text>',
    ]

    axis_style = 'stroke="#333333" stroke-width="1"'
    text_style = 'font-family="sans-serif" font-size="12" fill="#333333"'
    bottom = frame.top + frame.plot_height
    right = frame.left + frame.plot_width
    parts.append(f'<line x1="{frame.left:.1f}" y1="{bottom:.1f}" x2="{right:.1f}" y2="{bottom:.1f}" {axis_style}/>')
    parts.append(f'<line x1="{frame.left:.1f}" y1="{frame.top:.1f}" x2="{frame.left:.1f}" y2="{bottom:.1f}" {axis_style}/>')

    for tick in _nice_ticks(x_min, x_max):
        x = frame.x(tick)
        parts.append(f'<line x1="{x:.1f}" y1="{bottom:.1f}" x2="{x:.1f}" y2="{bottom + 5:.1f}" {axis_style}/>')
        parts.append(f'<line x1="{x:.1f}" y1="{frame.top:.1f}" x2="{x:.1f}" y2="{bottom:.1f}" stroke="#e0e0e0" stroke-width="0.5"/>')
        parts.append(f'<text x="{x:.1f}" y="{bottom + 18:.1f}" {text_style} text-anchor="middle">{_format_tick(tick)}</text>')
    for tick in _nice_ticks(y_min, y_max):
        y = frame.y(tick)
        parts.append(f'<line x1="{frame.left - 5:.1f}" y1="{y:.1f}" x2="{frame.left:.1f}" y2="{y:.1f}" {axis_style}/>')
        parts.append(f'<line x1="{frame.left:.1f}" y1="{y:.1f}" x2="{right:.1f}" y2="{y:.1f}" stroke="#e0e0e0" stroke-width="0.5"/>')
        parts.append(f'<text x="{frame.left - 8:.1f}" y="{y + 4:.1f}" {text_style} text-anchor="end">{_format_tick(tick)}</text>')

    parts.append(
        f'<text x="{(frame.left + right) / 2:.1f}" y="{height - 12:.1f}" {text_style} '
        f'text-anchor="middle">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="18" y="{(frame.top + bottom) / 2:.1f}" {text_style} text-anchor="middle" '
        f'transform="rotate(-90 18 {(frame.top + bottom) / 2:.1f})">{escape(y_label)}</text>'
    )

    color_cycle = iter(_PALETTE * 4)
    legend_entries = []
    for series in lines:
        if not series.points:
            continue
        color = series.color or next(color_cycle)
        coords = " ".join(f"{frame.x(x):.2f},{frame.y(y):.2f}" for x, y in series.points)
        dash = ' stroke-dasharray="6,4"' if series.dashed else ""
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.8"{dash}/>')
        legend_entries.append((series.label, color, "line"))
    for series in points:
        if not series.points:
            continue
        color = series.color or next(color_cycle)
        for x, y in series.points:
            parts.append(f'<circle cx="{frame.x(x):.2f}" cy="{frame.y(y):.2f}" r="3" fill="{color}" fill-opacity="0.65"/>')
        legend_entries.append((series.label, color, "point"))

    legend_y = frame.top + 8
    for label, color, kind in legend_entries:
        if kind == "line":
            parts.append(f'<line x1="{right - 150:.1f}" y1="{legend_y:.1f}" x2="{right - 126:.1f}" y2="{legend_y:.1f}" stroke="{color}" stroke-width="2"/>')
        else:
            parts.append(f'<circle cx="{right - 138:.1f}" cy="{legend_y:.1f}" r="3.5" fill="{color}"/>')
        parts.append(f'<text x="{right - 120:.1f}" y="{legend_y + 4:.1f}" {text_style}>{escape(label)}</text>')
        legend_y += 18

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
