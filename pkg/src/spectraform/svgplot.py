"""Dependency-free SVG plots emitted as plain text.

3-D positions are flattened with a fixed isometric projection so figures are
deterministic and diffable:

    u = (x - y) * cos(30 deg)
    v = (x + y) * sin(30 deg) - z

with v then flipped for the SVG y-down convention.
"""

from __future__ import annotations

import math

import numpy as np

ISO_PROJECTION = np.array(
    [
        [math.cos(math.pi / 6.0), -math.cos(math.pi / 6.0), 0.0],
        [math.sin(math.pi / 6.0), math.sin(math.pi / 6.0), -1.0],
    ]
)

COLOR_INITIAL = "#9e9e9e"
COLOR_DESIRED = "#d62728"
COLOR_FINAL = "#1f77b4"


def _project(points: np.ndarray) -> np.ndarray:
    return points @ ISO_PROJECTION.T


def _fit(points: np.ndarray, width: float, height: float, margin: float):
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    scale = min((width - 2 * margin) / span[0], (height - 2 * margin) / span[1])

    def to_px(p):
        x = margin + (p[0] - lo[0]) * scale
        y = height - margin - (p[1] - lo[1]) * scale
        return x, y

    return to_px


def _scatter(parts, pts2, to_px, color, radius, label):
    parts.append(f'<g fill="{color}" stroke="none">')
    for idx, p in enumerate(pts2):
        x, y = to_px(p)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{radius}"/>')
        parts.append(
            f'<text x="{x + radius + 2:.2f}" y="{y - radius:.2f}" font-size="9" '
            f'fill="{color}">{label}{idx + 1}</text>'
        )
    parts.append("</g>")


def _edges(parts, pts2, edges, to_px, color, dash=""):
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    parts.append(f'<g stroke="{color}" stroke-width="1.2" fill="none"{dash_attr}>')
    for i, j in edges:
        x1, y1 = to_px(pts2[i])
        x2, y2 = to_px(pts2[j])
        parts.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}"/>')
    parts.append("</g>")


def formation_svg(graph, initial_positions, final_positions, target_positions=None) -> str:
    """Formation snapshot: initial poses gray, final blue, desired red.

    The desired overlay is drawn only when target positions are available
    (bearing constraints alone do not pin positions).
    """
    width, height, margin = 640.0, 480.0, 40.0
    sets = [np.asarray(initial_positions, dtype=float), np.asarray(final_positions, dtype=float)]
    if target_positions is not None:
        sets.append(np.asarray(target_positions, dtype=float))
    flat = _project(np.vstack(sets))
    to_px = _fit(flat, width, height, margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        '<text x="12" y="20" font-size="12">formation (isometric projection): '
        f'<tspan fill="{COLOR_INITIAL}">initial</tspan>, '
        f'<tspan fill="{COLOR_DESIRED}">desired</tspan>, '
        f'<tspan fill="{COLOR_FINAL}">final</tspan></text>',
    ]
    init2 = _project(sets[0])
    final2 = _project(sets[1])
    _edges(parts, init2, graph.edges, to_px, COLOR_INITIAL, dash="4 3")
    _scatter(parts, init2, to_px, COLOR_INITIAL, 3.0, "a")
    if target_positions is not None:
        tgt2 = _project(sets[2])
        _edges(parts, tgt2, graph.edges, to_px, COLOR_DESIRED)
        _scatter(parts, tgt2, to_px, COLOR_DESIRED, 3.5, "a")
    _edges(parts, final2, graph.edges, to_px, COLOR_FINAL)
    _scatter(parts, final2, to_px, COLOR_FINAL, 3.5, "a")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def potential_svg(potentials) -> str:
    """Potential versus step on a log-10 vertical axis."""
    width, height, margin = 640.0, 420.0, 50.0
    phi = np.maximum(np.asarray(potentials, dtype=float), 1e-18)
    logs = np.log10(phi)
    lo = math.floor(float(logs.min()))
    hi = math.ceil(float(logs.max()))
    if hi == lo:
        hi = lo + 1
    steps = np.arange(len(phi))
    x_span = max(len(phi) - 1, 1)

    def to_px(k, lg):
        x = margin + (k / x_span) * (width - 2 * margin)
        y = height - margin - ((lg - lo) / (hi - lo)) * (height - 2 * margin)
        return x, y

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        '<text x="12" y="20" font-size="12">potential vs step (log scale)</text>',
        f'<g stroke="#333" stroke-width="1"><line x1="{margin}" y1="{height - margin}" '
        f'x2="{width - margin}" y2="{height - margin}"/>'
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}"/></g>',
    ]
    for decade in range(lo, hi + 1):
        _, y = to_px(0, decade)
        parts.append(
            f'<line x1="{margin - 4:.1f}" y1="{y:.2f}" x2="{margin:.1f}" y2="{y:.2f}" '
            'stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{margin - 8:.1f}" y="{y + 3:.2f}" font-size="9" text-anchor="end">'
            f"1e{decade}</text>"
        )
    for frac in (0.0, 0.5, 1.0):
        k = int(round(frac * (len(phi) - 1)))
        x, _ = to_px(k, lo)
        parts.append(
            f'<text x="{x:.1f}" y="{height - margin + 14:.1f}" font-size="9" '
            f'text-anchor="middle">{k}</text>'
        )
    pts = " ".join(
        f"{to_px(k, lg)[0]:.2f},{to_px(k, lg)[1]:.2f}" for k, lg in zip(steps, logs)
    )
    parts.append(f'<polyline points="{pts}" fill="none" stroke="{COLOR_FINAL}" stroke-width="1.5"/>')
    parts.append(f'<text x="{width / 2:.0f}" y="{height - 8:.0f}" font-size="11" text-anchor="middle">step</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
