"""Strict separation of spherically convex sets through the origin.

For closed inputs (pointed generator cones ``cone(G1)``, ``cone(G2)``) the set
of separating directions is

    E = {u : <g, u> > 0 for g in G1, <h, u> < 0 for h in G2} ∩ S^{n-1},

and exactly one of "E is nonempty" and "the cones share a nonzero ray"
holds. For open inputs ``P_i = {x : A_i x > 0}``, the closure of the positive
hull of E is ``cone(rows A1) ∩ -cone(rows A2)``.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import lp as _lp
from .arith import EXACT, FLOAT, Vector, dot, normalize, to_scalar
from .cones import ClosedSphericalConvex, OpenConeH, RaySet, cone_combination, open_cone_nonempty
from .errors import (
    CertificateError,
    DimensionError,
    EmptyConeError,
    MixedInputError,
    NotSeparableError,
    NotSphericallyConvexError,
    ZeroVectorError,
)

CLOSED = "closed"
OPEN = "open"

MARGIN_ROUNDS = 20
MARGIN_TOL = 1e-12


@dataclass(frozen=True)
class Separator:
    """A direction ``u`` in E with its strictness certificate.

    Closed case: ``side1_dots[i] = <g_i, u> > 0`` and ``side2_dots[j] = <h_j, u> < 0``.
    Open case: ``u = A1^T lam = -A2^T mu`` with ``lam, mu >= 0`` and ``u != 0``.
    Margins are the float minima of ``<g/|g|, u_hat>`` and ``-<h/|h|, u_hat>``
    (closed case only).
    """

    case: str
    u: Vector
    u_hat: Vector
    side1_margin: Optional[float] = None
    side2_margin: Optional[float] = None
    side1_dots: Optional[tuple] = None
    side2_dots: Optional[tuple] = None
    lam: Optional[tuple] = None
    mu: Optional[tuple] = None

    @property
    def min_margin(self) -> float:
        return min(self.side1_margin, self.side2_margin)


@dataclass(frozen=True)
class CommonRayWitness:
    """``x = G1 lam = G2 mu != 0`` with ``lam, mu >= 0``."""

    lam: tuple
    mu: tuple
    x: Vector


@dataclass(frozen=True)
class OpenIntersectionWitness:
    """``x`` with ``A1 x >= 1`` and ``A2 x >= 1``."""

    x: Vector


def _unwrap(side) -> ClosedSphericalConvex:
    if isinstance(side, ClosedSphericalConvex):
        return side
    if isinstance(side, OpenConeH):
        raise MixedInputError("expected a closed (generator) side, got a halfspace cone")
    raise NotSphericallyConvexError("input has not been validated as spherically convex")


def _margins(gens1, gens2, u_hat: Vector) -> tuple:
    uf = [float(c) for c in u_hat]
    m1 = min(sum(a * b for a, b in zip(normalize(g), uf)) for g in gens1)
    m2 = min(-sum(a * b for a, b in zip(normalize(h), uf)) for h in gens2)
    return m1, m2


def closed_separator_from(gens1, gens2, u: Vector) -> Separator:
    u_hat = normalize(u)
    m1, m2 = _margins(gens1, gens2, u_hat)
    return Separator(
        CLOSED,
        u,
        u_hat,
        side1_margin=m1,
        side2_margin=m2,
        side1_dots=tuple(dot(g, u) for g in gens1),
        side2_dots=tuple(dot(h, u) for h in gens2),
    )


def separate_closed(b1, b2) -> Union[Separator, CommonRayWitness]:
    """Find ``u`` with ``G1^T u >= 1``, ``G2^T u <= -1`` or a common ray.

    Strict inequalities become ``>= 1`` by positive homogeneity. When the LP
    is infeasible its Farkas vector splits into ``lam, mu >= 0`` with
    ``G1 lam = G2 mu``; pointedness of both cones keeps that ray nonzero.
    """
    b1, b2 = _unwrap(b1), _unwrap(b2)
    if b1.dim != b2.dim:
        raise DimensionError(f"sides have dimensions {b1.dim} and {b2.dim}")
    return _separate_closed_cached(b1.generators, b2.generators)


@functools.lru_cache(maxsize=4096)
def _separate_closed_cached(gens1: tuple, gens2: tuple):
    n = gens1[0].dim
    mode = gens1[0].mode
    rows = list(gens1) + list(gens2)
    rels = [_lp.GE] * len(gens1) + [_lp.LE] * len(gens2)
    rhs = [1] * len(gens1) + [-1] * len(gens2)
    prob = _lp.LinearProgram.build([0] * n, rows, rels, rhs, [_lp.FREE] * n, mode=mode)
    out = _lp.solve(prob)
    if out.optimal:
        return closed_separator_from(gens1, gens2, Vector(out.x))
    k1 = len(gens1)
    lam = tuple(out.y[:k1])
    mu = tuple(-v for v in out.y[k1:])
    x = Vector([sum((l * g[i] for l, g in zip(lam, gens1)), lam[0] * 0) for i in range(n)])
    if x.is_zero():  # cannot happen for pointed inputs
        raise NotSphericallyConvexError("Farkas multipliers give the zero ray; inputs are not pointed")
    return CommonRayWitness(lam, mu, x)


def _exact(v: Sequence) -> list:
    return [Fraction(c) for c in v]


def e_member_closed(b1, b2, u: Sequence) -> bool:
    """Exact sign test ``<g, u> > 0`` on side 1 and ``<h, u> < 0`` on side 2.

    Float inputs are converted to the rationals they represent, so the
    decision is exact for the given point.
    """
    b1, b2 = _unwrap(b1), _unwrap(b2)
    if len(u) != b1.dim:
        raise DimensionError("query dimension does not match the sides")
    if all(c == 0 for c in u):
        raise ZeroVectorError("u must be nonzero")
    ue = _exact(u)
    for g in b1.generators:
        if sum((a * b for a, b in zip(_exact(g), ue)), Fraction(0)) <= 0:
            return False
    for h in b2.generators:
        if sum((a * b for a, b in zip(_exact(h), ue)), Fraction(0)) >= 0:
            return False
    return True


def _unwrap_open(p) -> OpenConeH:
    if isinstance(p, OpenConeH):
        return p
    if isinstance(p, (ClosedSphericalConvex, RaySet)):
        raise MixedInputError("expected an open (halfspace) side, got generators")
    raise TypeError(f"expected OpenConeH, got {type(p).__name__}")


def _open_scan_lp(A1, A2, k: int, s: int, mode: str) -> _lp.LinearProgram:
    n = A1[0].dim
    m1, m2 = len(A1), len(A2)
    nv = n + m1 + m2
    rows, rels, rhs = [], [], []
    for i in range(n):
        r = [0] * nv
        r[i] = 1
        for j, a in enumerate(A1):
            r[n + j] = -a[i]
        rows.append(r)
        r = [0] * nv
        r[i] = 1
        for j, a in enumerate(A2):
            r[n + m1 + j] = a[i]
        rows.append(r)
    rels = [_lp.EQ] * (2 * n) + [_lp.LE]
    rows.append([0] * n + [1] * (m1 + m2))
    rhs = [0] * (2 * n) + [1]
    c = [0] * nv
    c[k] = s
    bounds = [_lp.FREE] * n + [_lp.NONNEG] * (m1 + m2)
    return _lp.LinearProgram.build(c, rows, rels, rhs, bounds, mode=mode)


def separate_open(p1, p2) -> Union[Separator, OpenIntersectionWitness]:
    """Separate two nonempty open cones ``{A_i x > 0}`` or exhibit a common point.

    The separator search maximizes ``±u_k`` over
    ``u = A1^T lam = -A2^T mu``, ``lam, mu >= 0``, ``sum lam + sum mu <= 1``
    for ``k = 1..n``; the first strictly positive optimum gives ``u != 0``.
    Then ``<x, u> = lam^T A1 x > 0`` on ``P1`` and ``< 0`` on ``P2``.
    """
    p1, p2 = _unwrap_open(p1), _unwrap_open(p2)
    if p1.dim != p2.dim:
        raise DimensionError(f"sides have dimensions {p1.dim} and {p2.dim}")
    for i, p in enumerate((p1, p2), 1):
        if not open_cone_nonempty(p):
            raise EmptyConeError(f"open cone {i} is empty")
    n = p1.dim
    mode = p1.mode
    rows = list(p1.rows) + list(p2.rows)
    prob = _lp.LinearProgram.build([0] * n, rows, [_lp.GE] * len(rows), [1] * len(rows), [_lp.FREE] * n, mode=mode)
    out = _lp.solve(prob)
    if out.optimal:
        return OpenIntersectionWitness(Vector(out.x))
    m1 = len(p1.rows)
    for k in range(n):
        for s in (1, -1):
            res = _lp.solve(_open_scan_lp(p1.rows, p2.rows, k, s, mode))
            if res.optimal and res.value > (0 if mode == EXACT else _lp.PIVOT_EPS):
                u = Vector(res.x[:n])
                return Separator(
                    OPEN,
                    u,
                    normalize(u),
                    lam=tuple(res.x[n : n + m1]),
                    mu=tuple(res.x[n + m1 :]),
                )
    # unreachable for disjoint nonempty open cones
    raise RuntimeError("no separating direction found although the cones are disjoint")


def e_cone_member_open(p1, p2, u: Sequence) -> bool:
    """Membership of ``u`` in ``R_+ E = cone(rows A1) ∩ -cone(rows A2)``."""
    p1, p2 = _unwrap_open(p1), _unwrap_open(p2)
    if len(u) != p1.dim or p1.dim != p2.dim:
        raise DimensionError("dimension mismatch")
    if not cone_combination(p1.rows, u):
        return False
    neg = [-c for c in u]
    return bool(cone_combination(p2.rows, neg))


# margins -------------------------------------------------------------------

@dataclass(frozen=True)
class Margin:
    """``u_hat`` with achieved margin ``r_lo``; ``r_hi`` bounds the Euclidean optimum from above.

    ``t_box`` is the optimum of the first (box-constrained) LP.
    """

    u_hat: Vector
    r_lo: float
    r_hi: float
    t_box: float
    rounds: int


def _margin_lp(gh1, gh2, cuts, n: int) -> _lp.LinearProgram:
    rows, rels, rhs = [], [], []
    for g in gh1:
        rows.append(list(g) + [-1.0])
        rels.append(_lp.GE)
        rhs.append(0.0)
    for h in gh2:
        rows.append([-c for c in h] + [-1.0])
        rels.append(_lp.GE)
        rhs.append(0.0)
    for cut in cuts:
        rows.append(list(cut) + [0.0])
        rels.append(_lp.LE)
        rhs.append(1.0)
    c = [0.0] * n + [1.0]
    bounds = [(-1.0, 1.0)] * n + [_lp.FREE]
    return _lp.LinearProgram.build(c, rows, rels, rhs, bounds, mode=FLOAT)


def max_margin(b1, b2) -> Margin:
    """Approximate the Euclidean max-margin direction by cutting planes.

    Start from ``max t`` subject to ``<g_hat, u> >= t``, ``-<h_hat, u> >= t``
    and ``||u||_inf <= 1``; then repeatedly add the tangent cut
    ``<u_hat_prev, u> <= 1`` of the unit ball. Every LP relaxes the ball, so its
    value bounds the optimum from above, while each normalized iterate is a
    feasible unit direction whose margin bounds it from below.
    """
    b1, b2 = _unwrap(b1), _unwrap(b2)
    if isinstance(separate_closed(b1, b2), CommonRayWitness):
        raise NotSeparableError("the cones share a ray; no positive margin exists")
    return _max_margin_cached(b1.generators, b2.generators)


@functools.lru_cache(maxsize=4096)
def _max_margin_cached(gens1: tuple, gens2: tuple) -> Margin:
    n = gens1[0].dim
    gh1 = [tuple(normalize(g)) for g in gens1]
    gh2 = [tuple(normalize(h)) for h in gens2]
    cuts = []
    best = None
    r_hi = math.inf
    t_box = None
    rounds = 0
    for rounds in range(MARGIN_ROUNDS + 1):
        out = _lp.solve(_margin_lp(gh1, gh2, cuts, n))
        if not out.optimal:
            break
        u = out.x[:n]
        t = out.value
        if t_box is None:
            t_box = t
        r_hi = min(r_hi, t)
        if all(abs(c) < 1e-300 for c in u):
            break
        u_hat = normalize(Vector.floating(u))
        r = min(_margins(gens1, gens2, u_hat))
        if best is None or r > best[1]:
            best = (u_hat, r)
        if r_hi - best[1] <= MARGIN_TOL:
            break
        cuts.append(tuple(u_hat))
    if best is None:
        # float LP broke down; fall back to the exact separator direction
        sep = _separate_closed_cached(gens1, gens2)
        best = (sep.u_hat, sep.min_margin)
        t_box = best[1] if t_box is None else t_box
    return Margin(best[0], best[1], max(r_hi, best[1]), t_box, rounds)


def thickened_disjoint(b1, b2, r) -> bool:
    """Whether ``P(B1 + rU)`` and ``P(B2 + rU)`` are disjoint.

    Equivalent to the existence of a unit ``u`` with margin at least ``r``
    on both sides, i.e. ``r < r*``. At ``r = r*`` the thickened cones touch,
    so equality counts as not disjoint; ``r*`` is represented by the certified
    lower bound ``r_lo``.
    """
    if isinstance(r, str):
        r = to_scalar(r)
    if r <= 0:
        raise ValueError("thickening radius must be positive")
    b1, b2 = _unwrap(b1), _unwrap(b2)
    if isinstance(separate_closed(b1, b2), CommonRayWitness):
        return False
    m = _max_margin_cached(b1.generators, b2.generators)
    return m.r_lo > r


def thickening_radius(b1, b2) -> float:
    """Half the max margin: a radius at which the thickened cones stay disjoint."""
    return max_margin(b1, b2).r_lo / 2


# certificate checks ----------------------------------------------------------

def _cmp_factory(mode: str, tol: float):
    if mode == EXACT:
        return (lambda a: a > 0), (lambda a, b: a == b), Fraction(0)
    return (lambda a: a > tol), (lambda a, b: abs(a - b) <= tol * (1 + abs(a) + abs(b))), 0.0


def _gens(side) -> tuple:
    if isinstance(side, ClosedSphericalConvex):
        return side.generators
    if isinstance(side, RaySet):
        return side.generators
    return tuple(side)


def check_closed_separator(side1, side2, sep: Separator, tol: float = 1e-9) -> None:
    """Raise CertificateError unless ``sep`` strictly separates the generator sets."""
    g1, g2 = _gens(side1), _gens(side2)
    u = sep.u
    if sep.case != CLOSED:
        raise CertificateError("separator is not a closed-case certificate")
    if len(u) != g1[0].dim or g1[0].dim != g2[0].dim:
        raise CertificateError("dimension mismatch between certificate and instance")
    if u.is_zero():
        raise CertificateError("u is the zero vector")
    pos, eq, _ = _cmp_factory(u.mode, tol)
    if sep.side1_dots is not None and len(sep.side1_dots) != len(g1):
        raise CertificateError("side 1 dot list length does not match generators")
    if sep.side2_dots is not None and len(sep.side2_dots) != len(g2):
        raise CertificateError("side 2 dot list length does not match generators")
    for i, g in enumerate(g1):
        d = dot(g, u)
        if sep.side1_dots is not None and not eq(d, sep.side1_dots[i]):
            raise CertificateError(f"side 1 generator {i}: recorded <g,u> = {sep.side1_dots[i]} but computed {d}")
        if not pos(d):
            raise CertificateError(f"side 1 generator {i}: <g,u> = {d} is not > 0")
    for j, h in enumerate(g2):
        d = dot(h, u)
        if sep.side2_dots is not None and not eq(d, sep.side2_dots[j]):
            raise CertificateError(f"side 2 generator {j}: recorded <h,u> = {sep.side2_dots[j]} but computed {d}")
        if not pos(-d):
            raise CertificateError(f"side 2 generator {j}: <h,u> = {d} is not < 0")
    _check_float_summary(g1, g2, sep)


def _check_float_summary(g1, g2, sep: Separator) -> None:
    ref = normalize(sep.u)
    if any(abs(a - b) > 1e-9 for a, b in zip(ref, sep.u_hat)):
        raise CertificateError("u_hat is not the normalization of u")
    if sep.side1_margin is not None:
        m1, m2 = _margins(g1, g2, sep.u_hat)
        if abs(m1 - sep.side1_margin) > 1e-9 or abs(m2 - sep.side2_margin) > 1e-9:
            raise CertificateError("recorded margins do not match the generators")
        if not (sep.side1_margin > 0 and sep.side2_margin > 0):
            raise CertificateError("margins must be strictly positive")


def check_common_ray(side1, side2, w: CommonRayWitness, tol: float = 1e-9) -> None:
    g1, g2 = _gens(side1), _gens(side2)
    if len(w.lam) != len(g1) or len(w.mu) != len(g2):
        raise CertificateError("coefficient lengths do not match the generators")
    if len(w.x) != g1[0].dim:
        raise CertificateError("dimension mismatch between certificate and instance")
    pos, eq, zero = _cmp_factory(w.x.mode, tol)
    if any(pos(-v) for v in w.lam):
        raise CertificateError("lambda has a negative entry")
    if any(pos(-v) for v in w.mu):
        raise CertificateError("mu has a negative entry")
    n = len(w.x)
    for name, coef, gens in (("G1 lam", w.lam, g1), ("G2 mu", w.mu, g2)):
        for i in range(n):
            s = sum((c * g[i] for c, g in zip(coef, gens)), zero)
            if not eq(s, w.x[i]):
                raise CertificateError(f"{name} differs from x in coordinate {i}: {s} != {w.x[i]}")
    if all(not pos(abs(c)) for c in w.x):
        raise CertificateError("common ray x is zero")


def check_open_separator(p1: OpenConeH, p2: OpenConeH, sep: Separator, tol: float = 1e-9) -> None:
    if sep.case != OPEN:
        raise CertificateError("separator is not an open-case certificate")
    if sep.lam is None or sep.mu is None:
        raise CertificateError("open-case separator needs lam and mu")
    if len(sep.lam) != len(p1.rows) or len(sep.mu) != len(p2.rows):
        raise CertificateError("coefficient lengths do not match the halfspace rows")
    u = sep.u
    if len(u) != p1.dim or p1.dim != p2.dim:
        raise CertificateError("dimension mismatch between certificate and instance")
    pos, eq, zero = _cmp_factory(u.mode, tol)
    if any(pos(-v) for v in sep.lam):
        raise CertificateError("lambda has a negative entry")
    if any(pos(-v) for v in sep.mu):
        raise CertificateError("mu has a negative entry")
    for i in range(len(u)):
        s1 = sum((c * a[i] for c, a in zip(sep.lam, p1.rows)), zero)
        if not eq(s1, u[i]):
            raise CertificateError(f"A1^T lam differs from u in coordinate {i}")
        s2 = -sum((c * a[i] for c, a in zip(sep.mu, p2.rows)), zero)
        if not eq(s2, u[i]):
            raise CertificateError(f"-A2^T mu differs from u in coordinate {i}")
    if u.is_zero() or all(not pos(abs(c)) for c in u):
        raise CertificateError("u is the zero vector")
    _check_float_summary(None, None, sep)


def check_open_intersection(p1: OpenConeH, p2: OpenConeH, w: OpenIntersectionWitness, tol: float = 1e-9) -> None:
    if len(w.x) != p1.dim or p1.dim != p2.dim:
        raise CertificateError("dimension mismatch between certificate and instance")
    for side, p in ((1, p1), (2, p2)):
        for j, a in enumerate(p.rows):
            d = dot(a, w.x)
            if (d < 1) if w.x.mode == EXACT else (d < 1 - tol):
                raise CertificateError(f"side {side} row {j}: <a,x> = {d} is not >= 1")
