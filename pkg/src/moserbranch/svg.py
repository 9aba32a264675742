"""Static SVG rendering of branch tables (no raster, no plotting deps).

Output is deterministic text: fixed viewport, 6-digit coordinates, so two
renders of the same table are byte-identical and diff-able.
"""

from __future__ import annotations

import math
from typing import Sequence

FOUR_PI = 4.0 * math.pi
EIGHT_PI = 8.0 * math.pi

_PANEL_W, _PANEL_H = 430.0, 360.0
_MARGIN_L, _MARGIN_B, _MARGIN_T = 62.0, 46.0, 30.0
_GAP = 40.0


def _fmt(x: float) -> str:
    return f"{x:.6g}"


class _Axes:
    def __init__(self, x0, y0, data_x, data_y, extra_y=()):
        self.ox = x0 + _MARGIN_L
        self.oy = y0 + _MARGIN_T
        self.w = _PANEL_W - _MARGIN_L - 12.0
        self.h = _PANEL_H - _MARGIN_T - _MARGIN_B
        ys = list(data_y) + [y for y in extra_y]
        self.xmin, self.xmax = min(data_x), max(data_x)
        self.ymin, self.ymax = min(ys), max(ys)
        if self.xmax == self.xmin:
            self.xmax = self.xmin + 1.0
        if self.ymax == self.ymin:
            self.ymax = self.ymin + 1.0
        padx = 0.04 * (self.xmax - self.xmin)
        pady = 0.06 * (self.ymax - self.ymin)
        self.xmin -= padx
        self.xmax += padx
        self.ymin -= pady
        self.ymax += pady

    def px(self, x):
        return self.ox + (x - self.xmin) / (self.xmax - self.xmin) * self.w

    def py(self, y):
        return self.oy + self.h - (y - self.ymin) / (self.ymax - self.ymin) \
            * self.h

    def frame(self, xlabel, ylabel, title):
        out = [f'<rect x="{_fmt(self.ox)}" y="{_fmt(self.oy)}" '
               f'width="{_fmt(self.w)}" height="{_fmt(self.h)}" '
               f'fill="none" stroke="#444" stroke-width="1"/>']
        for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
            xv = self.xmin + frac * (self.xmax - self.xmin)
            yv = self.ymin + frac * (self.ymax - self.ymin)
            xp, yp = self.px(xv), self.py(yv)
            out.append(f'<line x1="{_fmt(xp)}" y1="{_fmt(self.oy + self.h)}" '
                       f'x2="{_fmt(xp)}" y2="{_fmt(self.oy + self.h + 4)}" '
                       f'stroke="#444"/>')
            out.append(f'<text x="{_fmt(xp)}" y="{_fmt(self.oy + self.h + 16)}" '
                       f'font-size="10" text-anchor="middle">{_fmt(xv)}</text>')
            out.append(f'<line x1="{_fmt(self.ox - 4)}" y1="{_fmt(yp)}" '
                       f'x2="{_fmt(self.ox)}" y2="{_fmt(yp)}" stroke="#444"/>')
            out.append(f'<text x="{_fmt(self.ox - 7)}" y="{_fmt(yp + 3)}" '
                       f'font-size="10" text-anchor="end">{_fmt(yv)}</text>')
        out.append(f'<text x="{_fmt(self.ox + 0.5 * self.w)}" '
                   f'y="{_fmt(self.oy + self.h + 34)}" font-size="12" '
                   f'text-anchor="middle">{xlabel}</text>')
        out.append(f'<text x="{_fmt(self.ox - 48)}" '
                   f'y="{_fmt(self.oy + 0.5 * self.h)}" font-size="12" '
                   f'text-anchor="middle" transform="rotate(-90 '
                   f'{_fmt(self.ox - 48)} {_fmt(self.oy + 0.5 * self.h)})">'
                   f'{ylabel}</text>')
        out.append(f'<text x="{_fmt(self.ox + 0.5 * self.w)}" '
                   f'y="{_fmt(self.oy - 10)}" font-size="13" '
                   f'text-anchor="middle" font-weight="bold">{title}</text>')
        return out

    def polyline(self, xs, ys, color):
        pts = " ".join(f"{_fmt(self.px(x))},{_fmt(self.py(y))}"
                       for x, y in zip(xs, ys))
        return [f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="1.6"/>']

    def hline(self, y, color, label):
        if not (self.ymin <= y <= self.ymax):
            return []
        yp = self.py(y)
        return [f'<line x1="{_fmt(self.ox)}" y1="{_fmt(yp)}" '
                f'x2="{_fmt(self.ox + self.w)}" y2="{_fmt(yp)}" '
                f'stroke="{color}" stroke-width="1" '
                f'stroke-dasharray="6 4"/>',
                f'<text x="{_fmt(self.ox + self.w - 4)}" '
                f'y="{_fmt(yp - 4)}" font-size="10" text-anchor="end" '
                f'fill="{color}">{label}</text>']


def render_branch_svg(alphas: Sequence[float], lambdas: Sequence[float],
                      Lambdas: Sequence[float]) -> str:
    """Two-panel figure: Dirichlet energy against lambda and against alpha,
    with the 4 pi and 8 pi reference levels."""
    if len(alphas) == 0:
        raise ValueError("empty table")
    width = 2 * _PANEL_W + _GAP
    height = _PANEL_H + 10.0
    refs = [FOUR_PI]
    if max(Lambdas) > 0.5 * EIGHT_PI:
        refs.append(EIGHT_PI)
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{_fmt(width)}" height="{_fmt(height)}" '
             f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
             '<rect width="100%" height="100%" fill="white"/>']
    ax1 = _Axes(0.0, 0.0, lambdas, Lambdas, extra_y=refs)
    parts += ax1.frame("lambda", "Dirichlet energy", "energy vs lambda")
    parts += ax1.hline(FOUR_PI, "#b22", "4&#960;")
    parts += ax1.hline(EIGHT_PI, "#b22", "8&#960;")
    parts += ax1.polyline(lambdas, Lambdas, "#1452cc")
    ax2 = _Axes(_PANEL_W + _GAP, 0.0, alphas, Lambdas, extra_y=refs)
    parts += ax2.frame("alpha = u(0)", "Dirichlet energy", "energy vs alpha")
    parts += ax2.hline(FOUR_PI, "#b22", "4&#960;")
    parts += ax2.hline(EIGHT_PI, "#b22", "8&#960;")
    parts += ax2.polyline(alphas, Lambdas, "#1452cc")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
