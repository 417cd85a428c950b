"""CSV and SVG emission for curve families and tables."""

from __future__ import annotations

import numpy as np

from .bounds import BoundCurve

SVG_PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def curves_to_csv(curves: list[BoundCurve], digits: int = 12) -> str:
    """Rows "phi,cos_phi,R,curve", one per sample."""
    if not curves:
        raise ValueError("no curves to emit")
    lines = ["phi,cos_phi,R,curve"]
    for curve in curves:
        for phi, r in zip(curve.phi, curve.rate):
            c = np.cos(phi)
            lines.append(
                f"{phi:.{digits}g},{c:.{digits}g},{r:.{digits}g},{curve.name}"
            )
    return "\n".join(lines) + "\n"


def curves_to_svg(curves: list[BoundCurve], *, x_axis: str = "cos_phi",
                  width: int = 640, height: int = 480) -> str:
    """Single plot with one polyline per curve and a small legend."""
    if not curves:
        raise ValueError("no curves to emit")
    margin = 56
    xs_all, ys_all = [], []
    series = []
    for curve in curves:
        xs = curve.cos_phi if x_axis == "cos_phi" else curve.phi
        ys = curve.rate
        ok = np.isfinite(ys)
        series.append((curve.name, np.asarray(xs)[ok], np.asarray(ys)[ok]))
        xs_all.append(np.asarray(xs)[ok])
        ys_all.append(np.asarray(ys)[ok])
    x_min = min(float(np.min(x)) for x in xs_all)
    x_max = max(float(np.max(x)) for x in xs_all)
    y_min = min(0.0, min(float(np.min(y)) for y in ys_all))
    y_max = max(float(np.max(y)) for y in ys_all)
    if x_max == x_min:
        x_max = x_min + 1.0
    if y_max == y_min:
        y_max = y_min + 1.0

    def sx(x):
        return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin)

    x_label = "cos phi" if x_axis == "cos_phi" else "phi"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" '
        f'y2="{height - margin}" stroke="black"/>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" '
        f'font-size="14">{x_label}</text>',
        f'<text x="16" y="{height // 2}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 16 {height // 2})">R</text>',
        f'<text x="{margin}" y="{height - margin + 16}" font-size="11">'
        f'{x_min:.3g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 16}" font-size="11" '
        f'text-anchor="end">{x_max:.3g}</text>',
        f'<text x="{margin - 4}" y="{margin}" font-size="11" text-anchor="end">'
        f'{y_max:.3g}</text>',
        f'<text x="{margin - 4}" y="{height - margin}" font-size="11" '
        f'text-anchor="end">{y_min:.3g}</text>',
    ]
    for idx, (name, xs, ys) in enumerate(series):
        color = SVG_PALETTE[idx % len(SVG_PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{pts}"/>'
        )
        ly = margin + 16 * idx
        parts.append(
            f'<line x1="{width - margin - 110}" y1="{ly}" '
            f'x2="{width - margin - 90}" y2="{ly}" stroke="{color}" '
            f'stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{width - margin - 84}" y="{ly + 4}" font-size="11">'
            f'{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
