"""Minimal deterministic SVG line plots."""
from __future__ import annotations

from html import escape

import numpy as np

from .errors import EmptyCurve

WIDTH, HEIGHT = 640, 480
MARGIN = 56
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
BOUND_COLOR = "#555555"


def _ticks(lo: float, hi: float, n: int = 5):
    return np.linspace(lo, hi, n)


def render(curves, bound=None) -> str:
    """SVG document for ``curves`` (a list of ``(label, xs, ys)``).

    ``bound``, if given, is one more ``(label, xs, ys)`` drawn dashed.
    """
    if not curves:
        raise EmptyCurve("nothing to plot")
    series = list(curves) + ([bound] if bound is not None else [])
    for label, xs, ys in series:
        if len(xs) == 0:
            raise EmptyCurve(f"{label}: empty curve")
    allx = np.concatenate([np.asarray(s[1], dtype=float) for s in series])
    ally = np.concatenate([np.asarray(s[2], dtype=float) for s in series])
    x0, x1 = float(allx.min()), float(allx.max())
    y0, y1 = float(ally.min()), float(ally.max())
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    pad = 0.05 * (y1 - y0) if y1 > y0 else 0.5
    y0, y1 = y0 - pad, y1 + pad

    def sx(x):
        return MARGIN + (np.asarray(x) - x0) / (x1 - x0) * (WIDTH - 2 * MARGIN)

    def sy(y):
        return HEIGHT - MARGIN - (np.asarray(y) - y0) / (y1 - y0) * (HEIGHT - 2 * MARGIN)

    def points(xs, ys):
        return " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(sx(xs), sy(ys)))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        '<g stroke="black" stroke-width="1">',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}"/>',
        '</g>',
        '<g font-family="sans-serif" font-size="11" fill="black">',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{float(sx(t)):.3f}" y="{HEIGHT - MARGIN + 16}" '
                   f'text-anchor="middle">{t:.4g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN - 6}" y="{float(sy(t)) + 4:.3f}" '
                   f'text-anchor="end">{t:.4g}</text>')
    out.append('</g>')
    legend = []
    for k, (label, xs, ys) in enumerate(curves):
        color = COLORS[k % len(COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" '
                   f'points="{points(xs, ys)}"/>')
        legend.append((label, color, ""))
    if bound is not None:
        label, xs, ys = bound
        out.append(f'<polyline fill="none" stroke="{BOUND_COLOR}" stroke-width="1" '
                   f'stroke-dasharray="5,3" points="{points(xs, ys)}"/>')
        legend.append((label, BOUND_COLOR, ' stroke-dasharray="5,3"'))
    out.append('<g font-family="sans-serif" font-size="11">')
    for k, (label, color, dash) in enumerate(legend):
        y = MARGIN + 14 * k
        out.append(f'<line x1="{WIDTH - MARGIN - 150}" y1="{y}" x2="{WIDTH - MARGIN - 130}" '
                   f'y2="{y}" stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{WIDTH - MARGIN - 124}" y="{y + 4}">{escape(str(label))}</text>')
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
