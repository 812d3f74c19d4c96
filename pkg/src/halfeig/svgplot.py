"""Minimal static SVG line plots (polylines, axes, tick labels)."""

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 640
MARGIN = 60
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
          "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"]


def _ticks(lo, hi, n=5):
    span = hi - lo
    raw = span / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12 * span:
        out.append(t)
        t += step
    return out


def render_curves(curves, xlim, ylim, title="", diagonal=False,
                  xlabel="a", ylabel="b"):
    """SVG text for a set of named polylines.

    ``curves`` maps a label to ``(xs, ys)``; points outside the limits are
    dropped so curves with asymptotes stay readable.
    """
    x0, x1 = xlim
    y0, y1 = ylim
    pw = WIDTH - 2 * MARGIN
    ph = HEIGHT - 2 * MARGIN

    def px(x):
        return MARGIN + (x - x0) / (x1 - x0) * pw

    def py(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        parts.append(f'<line x1="{px(t):.2f}" y1="{HEIGHT - MARGIN}" x2="{px(t):.2f}" '
                     f'y2="{HEIGHT - MARGIN + 5}" stroke="black"/>')
        parts.append(f'<text x="{px(t):.2f}" y="{HEIGHT - MARGIN + 18}" '
                     f'text-anchor="middle" font-family="sans-serif" '
                     f'font-size="11">{t:g}</text>')
    for t in _ticks(y0, y1):
        parts.append(f'<line x1="{MARGIN - 5}" y1="{py(t):.2f}" x2="{MARGIN}" '
                     f'y2="{py(t):.2f}" stroke="black"/>')
        parts.append(f'<text x="{MARGIN - 8}" y="{py(t) + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{t:g}</text>')
    parts.append(f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="13">{escape(xlabel)}</text>')
    parts.append(f'<text x="15" y="{HEIGHT / 2:.1f}" text-anchor="middle" '
                 f'font-family="sans-serif" font-size="13" '
                 f'transform="rotate(-90 15 {HEIGHT / 2:.1f})">{escape(ylabel)}</text>')
    if diagonal:
        lo = max(x0, y0)
        hi = min(x1, y1)
        parts.append(f'<line x1="{px(lo):.2f}" y1="{py(lo):.2f}" x2="{px(hi):.2f}" '
                     f'y2="{py(hi):.2f}" stroke="gray" stroke-dasharray="4 4"/>')
    for i, (label, (xs, ys)) in enumerate(curves.items()):
        color = COLORS[i % len(COLORS)]
        pts = [(px(x), py(y)) for x, y in zip(xs, ys)
               if x0 <= x <= x1 and y0 <= y <= y1]
        if len(pts) >= 2:
            coords = " ".join(f"{a:.2f},{b:.2f}" for a, b in pts)
            parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                         f'points="{coords}"><title>{escape(label)}</title></polyline>')
        ly = MARGIN + 16 + 16 * i
        parts.append(f'<text x="{WIDTH - MARGIN - 8}" y="{ly}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11" fill="{color}">'
                     f'{escape(label)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_curves(path, curves, xlim, ylim, **kwargs):
    with open(path, "w", newline="\n") as fh:
        fh.write(render_curves(curves, xlim, ylim, **kwargs))
