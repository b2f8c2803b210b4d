"""Static SVG pictures of 2D and 3D instances.

Fixed 800x800 canvas, origin at the centre, y pointing up. All coordinates
go through :func:`_fmt` so equal inputs give byte-identical files.
"""

from __future__ import annotations

import math
from typing import Optional

from .arith import normalize
from .cones import ClosedSphericalConvex, RaySet, open_cone_nonempty
from .errors import DimensionError, EmptyConeError
from .formats import Instance
from .separation import CommonRayWitness, OpenIntersectionWitness, Separator

SIZE = 800
RADIUS = 300.0
SIDE_COLORS = ("#1f77b4", "#d62728")

# fixed orthographic camera for S^2
_AZIMUTH = math.radians(35.0)
_ELEVATION = math.radians(20.0)


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _screen(x: float, y: float, scale: float = RADIUS) -> tuple:
    return SIZE / 2 + scale * x, SIZE / 2 - scale * y


def _pt(x: float, y: float, scale: float = RADIUS) -> str:
    sx, sy = _screen(x, y, scale)
    return f"{_fmt(sx)},{_fmt(sy)}"


def _wrap(a: float) -> float:
    # into (-pi, pi]
    a = math.fmod(a + math.pi, 2 * math.pi)
    if a <= 0:
        a += 2 * math.pi
    return a - math.pi


def _arc_path(start: float, end: float, r: float, close_to_center: bool) -> str:
    """SVG path along the circle of radius ``r`` from angle ``start`` to ``end`` (counterclockwise)."""
    sweep = end - start
    large = 1 if sweep > math.pi else 0
    x0, y0 = _screen(r * math.cos(start), r * math.sin(start), 1.0)
    x1, y1 = _screen(r * math.cos(end), r * math.sin(end), 1.0)
    # y-up flips orientation: counterclockwise in the plane is sweep-flag 0 on screen
    arc = f"A {_fmt(r)} {_fmt(r)} 0 {large} 0 {_fmt(x1)} {_fmt(y1)}"
    if close_to_center:
        c = _fmt(SIZE / 2)
        return f"M {c} {c} L {_fmt(x0)} {_fmt(y0)} {arc} Z"
    return f"M {_fmt(x0)} {_fmt(y0)} {arc}"


def _intersect_halfcircles(centers: list, ref: float) -> Optional[tuple]:
    """Intersection of the open arcs ``(c - pi/2, c + pi/2)``, as offsets around ``ref``."""
    lo, hi = -math.pi, math.pi
    for c in centers:
        d = _wrap(c - ref)
        lo = max(lo, d - math.pi / 2)
        hi = min(hi, d + math.pi / 2)
    return (ref + lo, ref + hi) if hi > lo else None


def _angle(v) -> float:
    return math.atan2(float(v[1]), float(v[0]))


def _side_arc(side) -> Optional[tuple]:
    """Angular interval of a 2D side on the unit circle."""
    if isinstance(side, RaySet):
        cs = ClosedSphericalConvex.validate(side)
        ref = _angle(cs.u0)
        offs = [_wrap(_angle(g) - ref) for g in side.generators]
        return ref + min(offs), ref + max(offs)
    res = open_cone_nonempty(side)
    if not res.nonempty:
        raise EmptyConeError("open cone is empty")
    return _intersect_halfcircles([_angle(r) for r in side.rows], _angle(res.point))


def _e_arc(inst: Instance, sep: Separator) -> Optional[tuple]:
    s1, s2 = inst.sides
    ref = _angle(sep.u_hat)
    if isinstance(s1, RaySet):
        centers = [_angle(g) for g in s1.generators] + [_angle(h) + math.pi for h in s2.generators]
        return _intersect_halfcircles(centers, ref)
    return None


def _header(title: str) -> list:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{title}</title>",
        '<rect x="0" y="0" width="800" height="800" fill="white"/>',
    ]


def _render_2d(inst: Instance, cert) -> str:
    c = _fmt(SIZE / 2)
    out = _header("2D instance")
    out.append(f'<circle class="unit-circle" cx="{c}" cy="{c}" r="{_fmt(RADIUS)}" fill="none" stroke="#888"/>')
    for i, side in enumerate(inst.sides):
        color = SIDE_COLORS[i % 2]
        arc = _side_arc(side)
        if arc is not None and arc[1] - arc[0] > 1e-12:
            out.append(
                f'<path class="sector side{i + 1}" d="{_arc_path(arc[0], arc[1], RADIUS, True)}" '
                f'fill="{color}" fill-opacity="0.2" stroke="none"/>'
            )
        vecs = side.generators if isinstance(side, RaySet) else side.rows
        cls = "ray" if isinstance(side, RaySet) else "row"
        dash = "" if cls == "ray" else ' stroke-dasharray="6,4"'
        for v in vecs:
            x, y = normalize(v)
            out.append(
                f'<line class="{cls} side{i + 1}" x1="{c}" y1="{c}" x2="{_fmt(_screen(x, y)[0])}" '
                f'y2="{_fmt(_screen(x, y)[1])}" stroke="{color}" stroke-width="2"{dash}/>'
            )
    if isinstance(cert, Separator):
        ux, uy = cert.u_hat
        ext = 1.25
        out.append(
            f'<line class="separator" x1="{_fmt(_screen(uy * ext, -ux * ext)[0])}" y1="{_fmt(_screen(uy * ext, -ux * ext)[1])}" '
            f'x2="{_fmt(_screen(-uy * ext, ux * ext)[0])}" y2="{_fmt(_screen(-uy * ext, ux * ext)[1])}" '
            'stroke="black" stroke-width="2"/>'
        )
        out.append(
            f'<circle class="u-hat" cx="{_fmt(_screen(ux, uy)[0])}" cy="{_fmt(_screen(ux, uy)[1])}" r="5" fill="black"/>'
        )
        arc = _e_arc(inst, cert)
        if arc is not None:
            out.append(
                f'<path class="e-arc" d="{_arc_path(arc[0], arc[1], RADIUS * 1.08, False)}" '
                'fill="none" stroke="#2ca02c" stroke-width="4"/>'
            )
    elif isinstance(cert, (CommonRayWitness, OpenIntersectionWitness)):
        x, y = normalize(cert.x)
        out.append(
            f'<line class="witness" x1="{c}" y1="{c}" x2="{_fmt(_screen(x, y)[0])}" y2="{_fmt(_screen(x, y)[1])}" '
            'stroke="#9467bd" stroke-width="3" stroke-dasharray="2,3"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _camera() -> tuple:
    ca, sa = math.cos(_AZIMUTH), math.sin(_AZIMUTH)
    ce, se = math.cos(_ELEVATION), math.sin(_ELEVATION)
    view = (ce * ca, ce * sa, se)
    right = (-sa, ca, 0.0)
    up = (-se * ca, -se * sa, ce)
    return view, right, up


def _dot3(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _project(p) -> tuple:
    view, right, up = _camera()
    return _dot3(p, right), _dot3(p, up), _dot3(p, view) >= 0


def _render_3d(inst: Instance, cert) -> str:
    c = _fmt(SIZE / 2)
    out = _header("3D instance")
    out.append(f'<circle class="sphere" cx="{c}" cy="{c}" r="{_fmt(RADIUS)}" fill="#f4f4f4" stroke="#888"/>')
    for i, side in enumerate(inst.sides):
        color = SIDE_COLORS[i % 2]
        vecs = side.generators if isinstance(side, RaySet) else side.rows
        cls = "generator" if isinstance(side, RaySet) else "row"
        for v in vecs:
            x, y, front = _project(normalize(v))
            op = "1" if front else "0.35"
            out.append(
                f'<circle class="{cls} side{i + 1}" cx="{_fmt(_screen(x, y)[0])}" cy="{_fmt(_screen(x, y)[1])}" '
                f'r="6" fill="{color}" fill-opacity="{op}"/>'
            )
    if isinstance(cert, Separator):
        u = cert.u_hat
        # orthonormal basis of the plane u^perp
        k = min(range(3), key=lambda j: abs(u[j]))
        e = [0.0, 0.0, 0.0]
        e[k] = 1.0
        a = normalize([e[j] - _dot3(e, u) * u[j] for j in range(3)])
        b = (u[1] * a[2] - u[2] * a[1], u[2] * a[0] - u[0] * a[2], u[0] * a[1] - u[1] * a[0])
        pts = []
        for s in range(181):
            t = 2 * math.pi * s / 180
            p = [math.cos(t) * a[j] + math.sin(t) * b[j] for j in range(3)]
            x, y, _ = _project(p)
            pts.append(_pt(x, y))
        out.append(f'<polyline class="separator" points="{" ".join(pts)}" fill="none" stroke="black" stroke-width="2"/>')
        x, y, _ = _project(u)
        out.append(f'<circle class="u-hat" cx="{_fmt(_screen(x, y)[0])}" cy="{_fmt(_screen(x, y)[1])}" r="5" fill="black"/>')
    elif isinstance(cert, (CommonRayWitness, OpenIntersectionWitness)):
        x, y, _ = _project(normalize(cert.x))
        out.append(
            f'<circle class="witness" cx="{_fmt(_screen(x, y)[0])}" cy="{_fmt(_screen(x, y)[1])}" r="7" '
            'fill="none" stroke="#9467bd" stroke-width="3"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(inst: Instance, cert=None) -> str:
    """SVG text for a two-sided instance in dimension 2 or 3."""
    if inst.dimension >= 4:
        raise DimensionError("render supports n≤3")
    if len(inst.sides) != 2:
        raise ValueError("render needs an instance with two sides")
    if cert is not None and not isinstance(cert, (Separator, CommonRayWitness, OpenIntersectionWitness)):
        raise ValueError(f"cannot draw a {type(cert).__name__} certificate")
    if inst.dimension == 2:
        return _render_2d(inst, cert)
    return _render_3d(inst, cert)
