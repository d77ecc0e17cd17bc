"""Minimal SVG rendering of performance profiles (log2 ratio axis)."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
DASHES = ("", "6,3", "2,2", "8,3,2,3", "4,4", "1,3", "10,2")

WIDTH, HEIGHT = 560, 400
LEFT, RIGHT, TOP, BOTTOM = 60, 140, 40, 50


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def profile_svg(curves, title="") -> str:
    """Step plot of ``rho_s(alpha)`` against ``log2(alpha)``."""
    finite = [a for c in curves for a, _ in c.points if math.isfinite(a)]
    top_log = max(1.0, math.ceil(math.log2(max(finite, default=1.0)) + 0.5))
    pw, ph = WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM

    def sx(log_a):
        return LEFT + pw * log_a / top_log

    def sy(rho):
        return TOP + ph * (1.0 - rho)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
           f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>']
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" '
                   f'font-size="14">{escape(title)}</text>')
    # axes, grid and ticks
    out.append(f'<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" '
               f'stroke="black"/>')
    step = max(1, int(math.ceil(top_log / 10)))
    for k in range(0, int(top_log) + 1, step):
        x = sx(k)
        out.append(f'<line x1="{_fmt(x)}" y1="{TOP}" x2="{_fmt(x)}" y2="{TOP + ph}" '
                   f'stroke="#dddddd"/>')
        out.append(f'<text x="{_fmt(x)}" y="{TOP + ph + 16}" text-anchor="middle">'
                   f'{2 ** k}</text>')
    for i in range(6):
        rho = i / 5
        y = sy(rho)
        out.append(f'<line x1="{LEFT}" y1="{_fmt(y)}" x2="{LEFT + pw}" y2="{_fmt(y)}" '
                   f'stroke="#dddddd"/>')
        out.append(f'<text x="{LEFT - 6}" y="{_fmt(y + 4)}" text-anchor="end">'
                   f'{rho:.1f}</text>')
    out.append(f'<text x="{LEFT + pw / 2:.2f}" y="{HEIGHT - 10}" text-anchor="middle">'
               f'performance ratio α (log2 scale)</text>')
    out.append(f'<text x="16" y="{TOP + ph / 2:.2f}" text-anchor="middle" '
               f'transform="rotate(-90 16 {TOP + ph / 2:.2f})">ρ(α)</text>')

    for idx, curve in enumerate(curves):
        color, dash = COLORS[idx % len(COLORS)], DASHES[idx % len(DASHES)]
        pts, rho = [], 0.0
        x_prev = sx(0.0)
        pts.append((x_prev, sy(0.0)))
        for a, r in curve.points:
            if not math.isfinite(a):
                continue
            x = sx(math.log2(a))
            pts.append((x, sy(rho)))
            pts.append((x, sy(r)))
            rho = r
        pts.append((sx(top_log), sy(rho)))
        path = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline points="{path}" fill="none" stroke="{color}" '
                   f'stroke-width="2"{dash_attr}/>')
        ly = TOP + 10 + 20 * idx
        out.append(f'<line x1="{LEFT + pw + 12}" y1="{ly}" x2="{LEFT + pw + 40}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash_attr}/>')
        out.append(f'<text x="{LEFT + pw + 46}" y="{ly + 4}">{escape(curve.solver)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
