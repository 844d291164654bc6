"""SVG pictures of the tiled image of the (q-)mass map.

In the upper half plane the image is the union of the translates of the
ideal triangle ``(0, 1, inf)`` under ``z -> q z + 1``.  For ``q != 1`` the
translates accumulate on the geodesic from the fixed point ``1/(1-q)`` to
``inf``; in the disk (Cayley transform ``z -> (z - i)/(z + i)``) that
geodesic becomes the extra boundary interval and ``inf`` the red point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .boundary import phase_cloud

MAX_DEPTH = 64


class RenderMode(enum.Enum):
    DISK = "disk"
    HALFPLANE = "halfplane"
    PHASE_CLOUD = "phases"


@dataclass(frozen=True)
class RenderSpec:
    mode: RenderMode
    q: float = 1.0
    depth: int = 3
    size: int = 600
    chords: bool = False

    def __post_init__(self):
        if self.depth < 1 or self.depth > MAX_DEPTH:
            raise ValueError(f"depth must be in [1, {MAX_DEPTH}]")
        if self.q <= 0:
            raise ValueError("q must be positive")
        if self.size < 16:
            raise ValueError("size must be at least 16 pixels")


def orbit(q: float, j: int, x: float = 0.0) -> float:
    """Image of ``x`` under the ``j``-th power of ``z -> q z + 1``."""
    if j >= 0:
        for _ in range(j):
            x = q * x + 1
    else:
        for _ in range(-j):
            x = (x - 1) / q
    return x


def halfplane_triangles(q: float, depth: int) -> list[tuple[float, float]]:
    """Finite vertices ``(x_j, x_{j+1})`` of the ``2 depth + 1`` ideal triangles.

    The third vertex of each triangle is ``inf``.  Ordered by ``j`` from
    ``-depth`` to ``depth``.
    """
    return [(orbit(q, j), orbit(q, j + 1)) for j in range(-depth, depth + 1)]


def fixed_point(q: float) -> float | None:
    return None if q == 1.0 else 1.0 / (1.0 - q)


def cayley(z: complex) -> complex:
    if z == math.inf:
        return 1 + 0j
    return (z - 1j) / (z + 1j)


def _num(x: float) -> str:
    r = repr(float(x))
    return "0.0" if r == "-0.0" else r


def _svg_open(width: float, height: float, view: tuple[float, float, float, float]) -> list[str]:
    vx, vy, vw, vh = view
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="{_num(vx)} {_num(vy)} {_num(vw)} {_num(vh)}">',
    ]


def render_halfplane(spec: RenderSpec) -> str:
    tris = halfplane_triangles(spec.q, spec.depth)
    xs = [x for t in tris for x in t]
    fp = fixed_point(spec.q)
    if fp is not None:
        xs.append(fp)
    xmin, xmax = min(xs), max(xs)
    span = xmax - xmin
    pad = 0.05 * span
    top = span / 2 + pad
    scale = spec.size / (span + 2 * pad)

    def X(x):
        return (x - xmin + pad) * scale

    def Y(y):
        return (top - y) * scale

    width, height = spec.size, (top + pad) * scale
    out = _svg_open(width, height, (0, 0, width, height))
    out.append('<g fill="none" stroke="black" stroke-width="1">')
    for j, (x0, x1) in zip(range(-spec.depth, spec.depth + 1), tris):
        r = (x1 - x0) / 2 * scale
        d = (
            f"M {_num(X(x0))} {_num(Y(top))} L {_num(X(x0))} {_num(Y(0))} "
            f"A {_num(r)} {_num(r)} 0 0 1 {_num(X(x1))} {_num(Y(0))} "
            f"L {_num(X(x1))} {_num(Y(top))}"
        )
        out.append(f'<path data-index="{j}" data-x0="{_num(x0)}" data-x1="{_num(x1)}" d="{d}"/>')
    out.append("</g>")
    if fp is not None:
        out.append(
            f'<line class="blue-interval" stroke="blue" stroke-width="2" '
            f'x1="{_num(X(fp))}" y1="{_num(Y(0))}" x2="{_num(X(fp))}" y2="{_num(Y(top))}"/>'
        )
        out.append(f'<circle class="blue-point" fill="blue" cx="{_num(X(fp))}" cy="{_num(Y(0))}" r="4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _geodesic_arc(p1: complex, p2: complex, to_screen, scale: float, chords: bool) -> str:
    """Path segment from ``p1`` to ``p2`` (both on the unit circle) along the geodesic."""
    sx, sy = to_screen(p2)
    if chords:
        return f"L {_num(sx)} {_num(sy)}"
    cos_d = (p1 * p2.conjugate()).real
    if cos_d <= -1 + 1e-12:
        return f"L {_num(sx)} {_num(sy)}"
    centre = (p1 + p2) / (1 + cos_d)
    radius = math.sqrt(max(abs(centre) ** 2 - 1, 0.0)) * scale
    u, v = p1 - centre, p2 - centre
    cross = u.real * v.imag - u.imag * v.real
    # the screen y axis points down, so a counter-clockwise turn in the plane
    # is a decreasing SVG angle (sweep-flag 0)
    sweep = 0 if cross > 0 else 1
    return f"A {_num(radius)} {_num(radius)} 0 0 {sweep} {_num(sx)} {_num(sy)}"


def render_disk(spec: RenderSpec) -> str:
    size = spec.size
    half = size / 2
    rad = 0.45 * size

    def to_screen(w: complex) -> tuple[float, float]:
        return half + rad * w.real, half - rad * w.imag

    out = _svg_open(size, size, (0, 0, size, size))
    out.append(f'<circle class="boundary" cx="{_num(half)}" cy="{_num(half)}" r="{_num(rad)}" fill="none" stroke="gray"/>')
    out.append('<g fill="none" stroke="black" stroke-width="1">')
    red = cayley(math.inf)
    for j, (x0, x1) in zip(range(-spec.depth, spec.depth + 1), halfplane_triangles(spec.q, spec.depth)):
        p0, p1 = cayley(x0), cayley(x1)
        sx, sy = to_screen(p0)
        d = " ".join(
            [
                f"M {_num(sx)} {_num(sy)}",
                _geodesic_arc(p0, p1, to_screen, rad, spec.chords),
                _geodesic_arc(p1, red, to_screen, rad, spec.chords),
                _geodesic_arc(red, p0, to_screen, rad, spec.chords),
                "Z",
            ]
        )
        out.append(f'<path data-index="{j}" data-x0="{_num(x0)}" data-x1="{_num(x1)}" d="{d}"/>')
    out.append("</g>")
    fp = fixed_point(spec.q)
    if fp is not None:
        b = cayley(fp)
        bx, by = to_screen(b)
        d = f"M {_num(bx)} {_num(by)} " + _geodesic_arc(b, red, to_screen, rad, spec.chords)
        out.append(f'<path class="blue-interval" fill="none" stroke="blue" stroke-width="2" d="{d}"/>')
        out.append(f'<circle class="blue-point" fill="blue" cx="{_num(bx)}" cy="{_num(by)}" r="4"/>')
    rx, ry = to_screen(red)
    out.append(f'<circle class="red-point" fill="red" cx="{_num(rx)}" cy="{_num(ry)}" r="5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_phase_cloud(chart, r_max: int, n_max: int, size: int = 600) -> str:
    """Phase diagram: each semistable class (and its shift) as a dot on the unit circle."""
    half, rad = size / 2, 0.45 * size
    out = _svg_open(size, size, (0, 0, size, size))
    out.append(f'<circle cx="{_num(half)}" cy="{_num(half)}" r="{_num(rad)}" fill="none" stroke="gray" stroke-dasharray="2,2"/>')
    for (r, n), ph in phase_cloud(chart, r_max, n_max, include_shifts=True):
        ang = math.pi * ph
        x, y = half + rad * math.cos(ang), half - rad * math.sin(ang)
        out.append(f'<circle data-r="{r}" data-n="{n}" cx="{_num(x)}" cy="{_num(y)}" r="2" fill="blue"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(spec: RenderSpec, chart=None, r_max: int = 10, n_max: int = 10) -> str:
    if spec.mode is RenderMode.HALFPLANE:
        return render_halfplane(spec)
    if spec.mode is RenderMode.DISK:
        return render_disk(spec)
    if chart is None:
        raise ValueError("the phase cloud needs a chart point")
    return render_phase_cloud(chart, r_max, n_max, spec.size)
