"""Minimal static SVG plots (no plotting dependency): log-log convergence
figures with slope guides, and semilog drift-versus-time figures. Fixed
800x600 canvas."""

from __future__ import annotations

import math
from pathlib import Path

WIDTH, HEIGHT = 800, 600
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 90, 30, 50, 70
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _finite_positive(vals):
    return [v for v in vals if v is not None and math.isfinite(v) and v > 0]


def _axis_range(vals, log):
    lo, hi = min(vals), max(vals)
    if log:
        llo, lhi = math.floor(math.log10(lo)), math.ceil(math.log10(hi))
        if llo == lhi:
            lhi += 1
        return 10.0**llo, 10.0**lhi
    if lo == hi:
        lo, hi = lo - 1.0, hi + 1.0
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


class _Frame:
    def __init__(self, xlim, ylim, logx, logy):
        self.xlim, self.ylim = xlim, ylim
        self.logx, self.logy = logx, logy

    def px(self, x):
        lo, hi = self.xlim
        if self.logx:
            f = (math.log10(x) - math.log10(lo)) / (math.log10(hi) - math.log10(lo))
        else:
            f = (x - lo) / (hi - lo)
        return MARGIN_L + f * (WIDTH - MARGIN_L - MARGIN_R)

    def py(self, y):
        lo, hi = self.ylim
        if self.logy:
            f = (math.log10(y) - math.log10(lo)) / (math.log10(hi) - math.log10(lo))
        else:
            f = (y - lo) / (hi - lo)
        return HEIGHT - MARGIN_B - f * (HEIGHT - MARGIN_T - MARGIN_B)


def _decade_ticks(lim):
    lo, hi = (math.log10(lim[0]), math.log10(lim[1]))
    return [10.0**k for k in range(math.ceil(lo), math.floor(hi) + 1)]


def _linear_ticks(lim, count=6):
    lo, hi = lim
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _render(series, *, logx, logy, title, xlabel, ylabel, guides=()):
    pts_x, pts_y = [], []
    for s in series:
        for x, y in zip(s["x"], s["y"]):
            if math.isfinite(x) and math.isfinite(y) and (not logx or x > 0) and (not logy or y > 0):
                pts_x.append(x)
                pts_y.append(y)
    if not pts_x:
        pts_x, pts_y = [1.0], [1.0]
    fr = _Frame(_axis_range(pts_x, logx), _axis_range(pts_y, logy), logx, logy)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="13">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{WIDTH - MARGIN_L - MARGIN_R}" '
        f'height="{HEIGHT - MARGIN_T - MARGIN_B}" fill="none" stroke="black"/>',
        f'<text x="{WIDTH / 2}" y="{MARGIN_T - 18}" text-anchor="middle" '
        f'font-size="16">{title}</text>',
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 18}" text-anchor="middle">{xlabel}</text>',
        f'<text x="22" y="{HEIGHT / 2}" text-anchor="middle" '
        f'transform="rotate(-90 22 {HEIGHT / 2})">{ylabel}</text>',
    ]

    xticks = _decade_ticks(fr.xlim) if logx else _linear_ticks(fr.xlim)
    yticks = _decade_ticks(fr.ylim) if logy else _linear_ticks(fr.ylim)
    for xt in xticks:
        px = fr.px(xt)
        out.append(f'<line x1="{px:.1f}" y1="{HEIGHT - MARGIN_B}" x2="{px:.1f}" '
                   f'y2="{HEIGHT - MARGIN_B + 6}" stroke="black"/>')
        out.append(f'<line x1="{px:.1f}" y1="{MARGIN_T}" x2="{px:.1f}" '
                   f'y2="{HEIGHT - MARGIN_B}" stroke="#dddddd"/>')
        out.append(f'<text x="{px:.1f}" y="{HEIGHT - MARGIN_B + 22}" '
                   f'text-anchor="middle">{xt:g}</text>')
    for yt in yticks:
        py = fr.py(yt)
        out.append(f'<line x1="{MARGIN_L - 6}" y1="{py:.1f}" x2="{MARGIN_L}" '
                   f'y2="{py:.1f}" stroke="black"/>')
        out.append(f'<line x1="{MARGIN_L}" y1="{py:.1f}" x2="{WIDTH - MARGIN_R}" '
                   f'y2="{py:.1f}" stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN_L - 10}" y="{py + 4:.1f}" '
                   f'text-anchor="end">{yt:g}</text>')

    # slope guide lines (log-log only), anchored at the first series' last point
    if guides and logx and logy and series:
        s0 = [(x, y) for x, y in zip(series[0]["x"], series[0]["y"])
              if x > 0 and y > 0 and math.isfinite(y)]
        if s0:
            x0, y0 = s0[-1]
            for slope in guides:
                xa, xb = min(p for p, _ in s0), max(p for p, _ in s0)
                ya = y0 * (xa / x0) ** slope * 1.6
                yb = y0 * (xb / x0) ** slope * 1.6
                out.append(
                    f'<line x1="{fr.px(xa):.1f}" y1="{fr.py(ya):.1f}" '
                    f'x2="{fr.px(xb):.1f}" y2="{fr.py(yb):.1f}" '
                    f'stroke="#888888" stroke-dasharray="6,4"/>'
                )
                xm = math.sqrt(xa * xb)
                ym = y0 * (xm / x0) ** slope * 1.9
                out.append(f'<text x="{fr.px(xm):.1f}" y="{fr.py(ym):.1f}" '
                           f'fill="#555555">slope {slope:g}</text>')

    for i, s in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = [
            (fr.px(x), fr.py(y))
            for x, y in zip(s["x"], s["y"])
            if math.isfinite(x) and math.isfinite(y)
            and (not logx or x > 0) and (not logy or y > 0)
        ]
        if not pts:
            continue
        poly = " ".join(f"{px:.1f},{py:.1f}" for px, py in pts)
        out.append(f'<polyline points="{poly}" fill="none" stroke="{color}" stroke-width="1.8"/>')
        for px, py in pts:
            out.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3.2" fill="{color}"/>')
        out.append(
            f'<text x="{WIDTH - MARGIN_R - 10}" y="{MARGIN_T + 20 + 18 * i}" '
            f'text-anchor="end" fill="{color}">{s.get("label", f"series {i}")}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def loglog(series, *, title="", xlabel="", ylabel="", guides=()):
    """Log-log plot; `series` is a list of {"label", "x", "y"} dicts."""
    return _render(series, logx=True, logy=True, title=title,
                   xlabel=xlabel, ylabel=ylabel, guides=guides)


def semilogy(series, *, title="", xlabel="", ylabel=""):
    """Linear-x, log-y plot."""
    return _render(series, logx=False, logy=True, title=title,
                   xlabel=xlabel, ylabel=ylabel)


def save(path, svg_text: str) -> None:
    Path(path).write_text(svg_text)
