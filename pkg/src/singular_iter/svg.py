"""Minimal, byte-deterministic SVG 1.1 line plots."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

WIDTH, HEIGHT = 480, 480
MARGIN = 48
COLORS = ("#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad")


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _path(points, to_px, style: str) -> str:
    pts = [to_px(x, y) for x, y in points]
    if style == "step":
        stepped = [pts[0]]
        for (_, y0), (x1, y1) in zip(pts, pts[1:]):
            stepped.append((x1, y0))
            stepped.append((x1, y1))
        pts = stepped
    return " ".join(f"{_fmt(px)},{_fmt(py)}" for px, py in pts)


def residual(curve_a: Sequence, curve_b: Sequence) -> float:
    """Max |a - b| over a's abscissae, reading b by linear interpolation."""
    xa = np.array([x for x, _ in curve_a], dtype=float)
    ya = np.array([y for _, y in curve_a], dtype=float)
    xb = np.array([x for x, _ in curve_b], dtype=float)
    yb = np.array([y for _, y in curve_b], dtype=float)
    return float(np.max(np.abs(ya - np.interp(xa, xb, yb))))


def render(curves: Sequence[Sequence], labels: Sequence[str] = (), style: str = "line",
           xlim=(0.0, 1.0), ylim=(0.0, 1.0), title: str = "") -> str:
    """SVG text for one or more curves given as lists of (x, y) pairs.

    With two curves the maximum absolute residual between them is annotated.
    """
    if not curves or any(len(c) == 0 for c in curves):
        raise ValueError("cannot plot an empty table")
    if style not in ("line", "step"):
        raise ValueError(f"unknown plot style {style!r}")
    (x0, x1), (y0, y1) = xlim, ylim
    inner_w, inner_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def to_px(x, y):
        return (MARGIN + (float(x) - x0) / (x1 - x0) * inner_w,
                HEIGHT - MARGIN - (float(y) - y0) / (y1 - y0) * inner_h)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{inner_w}" height="{inner_h}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for frac in (0.0, 0.5, 1.0):
        tx = x0 + frac * (x1 - x0)
        ty = y0 + frac * (y1 - y0)
        px, _ = to_px(tx, y0)
        _, py = to_px(x0, ty)
        out.append(f'<text x="{_fmt(px)}" y="{HEIGHT - MARGIN + 16}" font-size="11" text-anchor="middle">{tx:g}</text>')
        out.append(f'<text x="{MARGIN - 6}" y="{_fmt(py + 4)}" font-size="11" text-anchor="end">{ty:g}</text>')
    if title:
        out.append(f'<text x="{WIDTH / 2:g}" y="{MARGIN - 16}" font-size="13" text-anchor="middle">{escape(title)}</text>')
    for i, curve in enumerate(curves):
        color = COLORS[i % len(COLORS)]
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{_path(curve, to_px, style)}"/>')
    for i, label in enumerate(labels):
        color = COLORS[i % len(COLORS)]
        out.append(f'<text x="{MARGIN + 8}" y="{MARGIN + 16 + 14 * i}" font-size="11" fill="{color}">{escape(label)}</text>')
    if len(curves) == 2:
        r = residual(curves[0], curves[1])
        out.append(f'<text x="{WIDTH - MARGIN - 8}" y="{HEIGHT - MARGIN - 10}" font-size="11" text-anchor="end">'
                   f'max |residual| = {r:.3e}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
