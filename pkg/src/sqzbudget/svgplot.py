"""Minimal log-log SVG chart writer.

No plotting framework: a fixed layout rendered with deterministic
number formatting, so the same data always produces the same bytes.
Only what the spectrum plot needs: decade grids, a handful of
polyline traces, a legend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError

_FONT = "font-family=\"Helvetica, Arial, sans-serif\""


@dataclass(frozen=True)
class Trace:
    label: str
    color: str
    x: Sequence[float]
    y: Sequence[float]
    width: float = 1.6
    dash: str | None = None


def _fmt(v: float) -> str:
    return "%.2f" % v


def _decade_label(exponent: int) -> str:
    if -3 <= exponent <= 4:
        return "%g" % (10.0**exponent)
    return "1e%d" % exponent


class _LogAxis:
    def __init__(self, lo: float, hi: float, px_lo: float, px_hi: float):
        if lo <= 0.0 or hi <= lo:
            raise DomainError(f"log axis needs 0 < lo < hi, got ({lo!r}, {hi!r})")
        self.lo = math.log10(lo)
        self.hi = math.log10(hi)
        self.px_lo = px_lo
        self.px_hi = px_hi

    def place(self, value: float) -> float:
        frac = (math.log10(value) - self.lo) / (self.hi - self.lo)
        return self.px_lo + frac * (self.px_hi - self.px_lo)

    def decades(self) -> list[int]:
        return list(range(math.ceil(self.lo - 1e-9), math.floor(self.hi + 1e-9) + 1))

    def minor_ticks(self) -> list[float]:
        ticks = []
        for d in range(math.floor(self.lo), math.ceil(self.hi)):
            for m in range(2, 10):
                v = math.log10(m) + d
                if self.lo < v < self.hi:
                    ticks.append(10.0**v)
        return ticks


def render_loglog(
    traces: Sequence[Trace],
    *,
    title: str,
    xlabel: str,
    ylabel: str,
    width: int = 820,
    height: int = 520,
) -> str:
    """Render traces on log-log axes; returns the SVG document text."""
    if not traces:
        raise DomainError("nothing to plot")
    margin_l, margin_r, margin_t, margin_b = 86.0, 24.0, 48.0, 58.0
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b

    xs = [v for t in traces for v in t.x]
    ys = [v for t in traces for v in t.y]
    if any((not math.isfinite(v)) or v <= 0.0 for v in xs + ys):
        raise DomainError("log-log traces need positive finite data")

    x_lo = 10.0 ** math.floor(math.log10(min(xs)) + 1e-12)
    x_hi = 10.0 ** math.ceil(math.log10(max(xs)) - 1e-12)
    y_lo = 10.0 ** math.floor(math.log10(min(ys)) + 1e-12)
    y_hi = 10.0 ** math.ceil(math.log10(max(ys)) - 1e-12)

    ax_x = _LogAxis(x_lo, x_hi, margin_l, margin_l + plot_w)
    ax_y = _LogAxis(y_lo, y_hi, margin_t + plot_h, margin_t)  # y grows upward

    out: list[str] = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
        'viewBox="0 0 %d %d">' % (width, height, width, height)
    )
    out.append('<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (width, height))
    out.append(
        '<text x="%s" y="26" %s font-size="15" text-anchor="middle" fill="#202020">%s</text>'
        % (_fmt(margin_l + plot_w / 2.0), _FONT, _escape(title))
    )

    # gridlines: faint minors, solid decade majors with labels
    for v in ax_x.minor_ticks():
        px = ax_x.place(v)
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#ececec" stroke-width="0.6"/>'
            % (_fmt(px), _fmt(margin_t), _fmt(px), _fmt(margin_t + plot_h))
        )
    for v in ax_y.minor_ticks():
        py = ax_y.place(v)
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#ececec" stroke-width="0.6"/>'
            % (_fmt(margin_l), _fmt(py), _fmt(margin_l + plot_w), _fmt(py))
        )
    for d in ax_x.decades():
        px = ax_x.place(10.0**d)
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#c8c8c8" stroke-width="1"/>'
            % (_fmt(px), _fmt(margin_t), _fmt(px), _fmt(margin_t + plot_h))
        )
        out.append(
            '<text x="%s" y="%s" %s font-size="12" text-anchor="middle" fill="#404040">%s</text>'
            % (_fmt(px), _fmt(margin_t + plot_h + 20.0), _FONT, _decade_label(d))
        )
    for d in ax_y.decades():
        py = ax_y.place(10.0**d)
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#c8c8c8" stroke-width="1"/>'
            % (_fmt(margin_l), _fmt(py), _fmt(margin_l + plot_w), _fmt(py))
        )
        out.append(
            '<text x="%s" y="%s" %s font-size="12" text-anchor="end" fill="#404040">%s</text>'
            % (_fmt(margin_l - 8.0), _fmt(py + 4.0), _FONT, _decade_label(d))
        )

    out.append(
        '<rect x="%s" y="%s" width="%s" height="%s" fill="none" stroke="#404040" stroke-width="1"/>'
        % (_fmt(margin_l), _fmt(margin_t), _fmt(plot_w), _fmt(plot_h))
    )
    out.append(
        '<text x="%s" y="%s" %s font-size="13" text-anchor="middle" fill="#202020">%s</text>'
        % (_fmt(margin_l + plot_w / 2.0), _fmt(height - 14.0), _FONT, _escape(xlabel))
    )
    out.append(
        '<text x="20" y="%s" %s font-size="13" text-anchor="middle" '
        'fill="#202020" transform="rotate(-90 20 %s)">%s</text>'
        % (
            _fmt(margin_t + plot_h / 2.0),
            _FONT,
            _fmt(margin_t + plot_h / 2.0),
            _escape(ylabel),
        )
    )

    for trace in traces:
        points = " ".join(
            "%s,%s" % (_fmt(ax_x.place(x)), _fmt(ax_y.place(y)))
            for x, y in zip(trace.x, trace.y)
        )
        dash = ' stroke-dasharray="%s"' % trace.dash if trace.dash else ""
        out.append(
            '<polyline points="%s" fill="none" stroke="%s" stroke-width="%s"%s/>'
            % (points, trace.color, _fmt(trace.width), dash)
        )

    # legend, top right inside the frame
    legend_x = margin_l + plot_w - 230.0
    legend_y = margin_t + 14.0
    box_h = 20.0 * len(traces) + 10.0
    out.append(
        '<rect x="%s" y="%s" width="222" height="%s" fill="white" '
        'stroke="#c8c8c8" stroke-width="1"/>'
        % (_fmt(legend_x), _fmt(legend_y), _fmt(box_h))
    )
    for i, trace in enumerate(traces):
        row_y = legend_y + 20.0 * i + 18.0
        dash = ' stroke-dasharray="%s"' % trace.dash if trace.dash else ""
        out.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"%s/>'
            % (
                _fmt(legend_x + 10.0),
                _fmt(row_y - 4.0),
                _fmt(legend_x + 42.0),
                _fmt(row_y - 4.0),
                trace.color,
                _fmt(trace.width),
                dash,
            )
        )
        out.append(
            '<text x="%s" y="%s" %s font-size="12" fill="#202020">%s</text>'
            % (_fmt(legend_x + 50.0), _fmt(row_y), _FONT, _escape(trace.label))
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
