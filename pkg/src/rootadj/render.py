"""Deterministic SVG rendering of hexagons and root-line fans in the disc model.

Computation lives in the upper half-plane; drawing uses the Cayley transform
z -> (z - i)/(z + i) so figures show the familiar unit disc with geodesics as
circular arcs orthogonal to the boundary.  Output is byte-stable: fixed float
formatting, fixed element order, no timestamps.
"""

from __future__ import annotations

import math

from . import __version__ as _pkg_version
from .geodesics import BoundaryPoint, InteriorPoint, ProperGeodesic
from .hexagon import SIDE_NAMES, HexagonConfig

VIEWBOX = "-1.05 -1.05 2.1 2.1"

_STYLE = (
    "circle.disc{fill:none;stroke:#222;stroke-width:0.008}"
    "path.axis-side{fill:none;stroke:#b03030;stroke-width:0.010}"
    "path.halfturn-side{fill:none;stroke:#2050b0;stroke-width:0.010}"
    "path.fan-line{fill:none;stroke:#20a060;stroke-width:0.006;stroke-dasharray:0.02 0.012}"
    "circle.vertex{fill:#222;stroke:none}"
    "circle.axis-point{fill:#b03030;stroke:none}"
)


def _fmt(x: float) -> str:
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.6f}"


def _cayley(z: complex) -> complex:
    return (z - 1j) / (z + 1j)


def _cayley_boundary(x: float) -> complex:
    if math.isinf(x):
        return complex(1.0, 0.0)
    return _cayley(complex(x, 0.0))


def _flip(w: complex) -> tuple[float, float]:
    # SVG y-axis points down; flip to draw the standard orientation
    return (w.real, -w.imag)


def _arc_path(p: float, q: float) -> str:
    """SVG path for the disc-model geodesic with ideal endpoints p, q."""
    u = _cayley_boundary(p)
    v = _cayley_boundary(q)
    denom = 1.0 + (u * v.conjugate()).real
    x1, y1 = _flip(u)
    x2, y2 = _flip(v)
    if abs(denom) < 1e-9:
        # diameter
        return f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    center = (u + v) / denom
    radius = abs(u - center)
    cx, cy = _flip(center)
    cross = (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx)
    sweep = 1 if cross > 0 else 0
    return (
        f"M {_fmt(x1)} {_fmt(y1)} "
        f"A {_fmt(radius)} {_fmt(radius)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"
    )


def _point_marker(z, css: str, r: float) -> str:
    if isinstance(z, complex):
        w = _cayley(z)
    else:
        w = _cayley_boundary(z)
    x, y = _flip(w)
    return f'<circle class="{css}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}"/>'


def render_svg(h: HexagonConfig, fan=None) -> str:
    """SVG document: disc outline, hexagon sides, vertex markers, optional fan."""
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{VIEWBOX}">',
        f"<desc>rootadj {_pkg_version} hexagon rendering</desc>",
        f"<style>{_STYLE}</style>",
        '<circle class="disc" cx="0.000000" cy="0.000000" r="1.000000"/>',
    ]
    for name, side in zip(SIDE_NAMES, h.sides):
        if isinstance(side, ProperGeodesic):
            css = "halfturn-side" if name in ("core", "l_B", "l_A") else "axis-side"
            parts.append(f'<path class="{css}" d="{_arc_path(side.p, side.q)}"/>')
        elif isinstance(side, BoundaryPoint):
            parts.append(_point_marker(side.p, "axis-point", 0.014))
        else:
            parts.append(_point_marker(side.z, "axis-point", 0.014))
    if fan is not None:
        for fl in fan.lines:
            parts.append(f'<path class="fan-line" d="{_arc_path(fl.line.p, fl.line.q)}"/>')
    seen = []
    for v in h.vertices:
        key = repr(v)
        if key in seen:
            continue
        seen.append(key)
        parts.append(_point_marker(v, "vertex", 0.010))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
