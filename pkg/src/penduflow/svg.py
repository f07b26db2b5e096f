"""Minimal self-contained SVG line charts (no plotting stack required)."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]

_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 40
_MARGIN_B = 50


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    span = hi - lo
    step = 10.0 ** math.floor(math.log10(span / n))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if span / (step * mult) <= n:
            step *= mult
            break
    first = math.ceil(lo / step) * step
    out = []
    t = first
    while t <= hi + 1e-12 * span:
        out.append(0.0 if abs(t) < 1e-12 * span else t)
        t += step
    return out


def _fmt_tick(v: float) -> str:
    if v == 0.0:
        return "0"
    if abs(v) >= 1e4 or abs(v) < 1e-3:
        return f"{v:.1e}"
    return f"{v:.4g}"


def line_chart(
    path: str | Path,
    series: list[tuple[np.ndarray, np.ndarray, str]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    width: int = 880,
    height: int = 540,
) -> None:
    """Write an SVG line chart; NaN samples split the polylines."""
    xs = np.concatenate([np.asarray(s[0], dtype=float) for s in series])
    ys = np.concatenate([np.asarray(s[1], dtype=float) for s in series])
    finite = np.isfinite(xs) & np.isfinite(ys)
    if not finite.any():
        raise ValueError("no finite data to plot")
    x_lo, x_hi = float(xs[finite].min()), float(xs[finite].max())
    y_lo, y_hi = float(ys[np.isfinite(ys)].min()), float(ys[np.isfinite(ys)].max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    pad = 0.05 * (y_hi - y_lo)
    y_lo -= pad
    y_hi += pad

    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B

    def px(x):
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333"/>',
    ]
    for t in _ticks(x_lo, x_hi):
        x = px(t)
        parts.append(f'<line x1="{x:.1f}" y1="{_MARGIN_T}" x2="{x:.1f}" '
                     f'y2="{_MARGIN_T + plot_h}" stroke="#ddd"/>')
        parts.append(f'<text x="{x:.1f}" y="{_MARGIN_T + plot_h + 16}" '
                     f'text-anchor="middle">{_fmt_tick(t)}</text>')
    for t in _ticks(y_lo, y_hi):
        y = py(t)
        parts.append(f'<line x1="{_MARGIN_L}" y1="{y:.1f}" x2="{_MARGIN_L + plot_w}" '
                     f'y2="{y:.1f}" stroke="#ddd"/>')
        parts.append(f'<text x="{_MARGIN_L - 6}" y="{y + 4:.1f}" '
                     f'text-anchor="end">{_fmt_tick(t)}</text>')
    for k, (sx, sy, label) in enumerate(series):
        color = _PALETTE[k % len(_PALETTE)]
        sx = np.asarray(sx, dtype=float)
        sy = np.asarray(sy, dtype=float)
        ok = np.isfinite(sx) & np.isfinite(sy)
        pts: list[str] = []
        for i in range(len(sx)):
            if ok[i]:
                pts.append(f"{px(sx[i]):.2f},{py(sy[i]):.2f}")
            elif pts:
                parts.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                             f'stroke="{color}" stroke-width="1.3"/>')
                pts = []
        if pts:
            parts.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                         f'stroke="{color}" stroke-width="1.3"/>')
        if label:
            parts.append(f'<text x="{_MARGIN_L + 8 + 130 * k}" y="{_MARGIN_T - 8}" '
                         f'fill="{color}">{label}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="18" text-anchor="middle" '
                     f'font-size="14">{title}</text>')
    if xlabel:
        parts.append(f'<text x="{_MARGIN_L + plot_w / 2}" y="{height - 12}" '
                     f'text-anchor="middle">{xlabel}</text>')
    if ylabel:
        parts.append(f'<text x="16" y="{_MARGIN_T + plot_h / 2}" text-anchor="middle" '
                     f'transform="rotate(-90 16 {_MARGIN_T + plot_h / 2})">{ylabel}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")


def field_chart(
    path: str | Path,
    delta: np.ndarray,
    p: np.ndarray,
    ddelta: np.ndarray,
    dp: np.ndarray,
    points: list[tuple[float, float, str]] | None = None,
    title: str = "",
    width: int = 880,
    height: int = 540,
) -> None:
    """Write an SVG arrow-segment plot of a 2-D vector field over (delta, p)."""
    plot_w = width - _MARGIN_L - _MARGIN_R
    plot_h = height - _MARGIN_T - _MARGIN_B
    x_lo, x_hi = float(delta.min()), float(delta.max())
    y_lo, y_hi = float(p.min()), float(p.max())

    def px(x):
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * plot_h

    mag = np.hypot(ddelta, dp)
    scale = 0.45 * min((x_hi - x_lo) / max(len(delta) - 1, 1),
                       (y_hi - y_lo) / max(len(p) - 1, 1))
    max_mag = float(mag.max()) or 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333"/>',
    ]
    for i, d in enumerate(delta):
        for j, pv in enumerate(p):
            m = mag[i, j]
            if m == 0.0:
                continue
            ux = ddelta[i, j] / max_mag * scale
            uy = dp[i, j] / max_mag * scale
            x0, y0 = px(d - 0.5 * ux), py(pv - 0.5 * uy)
            x1, y1 = px(d + 0.5 * ux), py(pv + 0.5 * uy)
            parts.append(f'<line x1="{x0:.1f}" y1="{y0:.1f}" x2="{x1:.1f}" y2="{y1:.1f}" '
                         'stroke="#1f77b4" stroke-width="0.8"/>')
            parts.append(f'<circle cx="{x1:.1f}" cy="{y1:.1f}" r="1.2" fill="#1f77b4"/>')
    for (d, pv, label) in points or []:
        parts.append(f'<circle cx="{px(d):.1f}" cy="{py(pv):.1f}" r="5" fill="none" '
                     'stroke="#d62728" stroke-width="2"/>')
        parts.append(f'<text x="{px(d) + 8:.1f}" y="{py(pv) - 8:.1f}" '
                     f'fill="#d62728">{label}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="18" text-anchor="middle" '
                     f'font-size="14">{title}</text>')
    parts.append(f'<text x="{_MARGIN_L + plot_w / 2}" y="{height - 12}" '
                 'text-anchor="middle">Delta (rad)</text>')
    parts.append(f'<text x="16" y="{_MARGIN_T + plot_h / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {_MARGIN_T + plot_h / 2})">P</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")
