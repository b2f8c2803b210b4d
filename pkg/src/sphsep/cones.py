"""Spherically convex sets as polyhedral cones.

A closed spherically convex set is ``B = cone(G) ∩ S^{n-1}`` for a finite
generator list ``G`` spanning a pointed cone. An open one is given in
halfspace form ``P = {x : Ax > 0}``. Everything here reduces to LP
feasibility through :mod:`sphsep.lp`.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import lp as _lp
from .arith import EXACT, Vector, dot, normalize
from .errors import DimensionError, NotSphericallyConvexError, ZeroVectorError

log = logging.getLogger(__name__)


def _as_vectors(vs) -> tuple:
    return tuple(v if isinstance(v, Vector) else Vector(v) for v in vs)


@dataclass(frozen=True)
class RaySet:
    """Generators of a cone. Zero generators are rejected, duplicates warned about."""

    generators: tuple

    def __post_init__(self):
        gens = _as_vectors(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("a RaySet needs at least one generator")
        n = gens[0].dim
        modes = {g.mode for g in gens}
        if len(modes) > 1:
            raise ValueError("generators mix exact and float coordinates")
        for i, g in enumerate(gens):
            if g.dim != n:
                raise DimensionError(f"generator {i} has dimension {g.dim}, expected {n}")
            if g.is_zero():
                raise ZeroVectorError(f"generator {i} is the zero vector")
        if len(set(gens)) != len(gens):
            warnings.warn("duplicate generators in RaySet", stacklevel=3)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @property
    def mode(self) -> str:
        return self.generators[0].mode

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.generators)) != len(self.generators)


@dataclass(frozen=True)
class PointednessResult:
    """Gordan alternative: either ``G^T u0 >= 1`` or ``G lam = 0`` with ``lam`` a convex weight."""

    pointed: bool
    u0: Optional[Vector] = None
    weights: Optional[tuple] = None

    def __bool__(self):
        return self.pointed


def is_pointed(rs: RaySet) -> PointednessResult:
    n = rs.dim
    gens = rs.generators
    prob = _lp.LinearProgram.build(
        [0] * n, gens, [_lp.GE] * len(gens), [1] * len(gens), [_lp.FREE] * n, mode=rs.mode
    )
    out = _lp.solve(prob)
    if out.optimal:
        return PointednessResult(True, u0=Vector(out.x))
    # Farkas: y >= 0, G y = 0, sum(y) > 0
    total = sum(out.y)
    return PointednessResult(False, weights=tuple(v / total for v in out.y))


def check_pointedness(rs: RaySet, res: PointednessResult) -> bool:
    """Recheck a pointedness certificate from the generators alone."""
    if res.pointed:
        if res.u0 is None or res.u0.dim != rs.dim:
            return False
        return all(dot(g, res.u0) >= 1 for g in rs)
    w = res.weights
    if w is None or len(w) != len(rs) or any(v < 0 for v in w) or sum(w) != 1:
        return False
    comb = [sum((wi * g[k] for wi, g in zip(w, rs)), Fraction(0)) for k in range(rs.dim)]
    return all(c == 0 for c in comb)


@dataclass(frozen=True)
class ClosedSphericalConvex:
    """A RaySet whose cone is pointed, with the certificate that says so."""

    rays: RaySet
    u0: Vector

    @classmethod
    def validate(cls, rays) -> "ClosedSphericalConvex":
        if not isinstance(rays, RaySet):
            rays = RaySet(tuple(rays))
        res = is_pointed(rays)
        if not res.pointed:
            raise NotSphericallyConvexError(
                "not spherically convex: generators contain 0 in their convex hull",
                weights=res.weights,
            )
        if rays.has_duplicates:
            log.warning("duplicate generators tolerated")
        return cls(rays, res.u0)

    @property
    def dim(self) -> int:
        return self.rays.dim

    @property
    def generators(self) -> tuple:
        return self.rays.generators


@dataclass(frozen=True)
class ConeMembership:
    member: bool
    weights: Optional[tuple] = None  # G lam = x, lam >= 0
    separator: Optional[Vector] = None  # <g, y> <= 0 for all g, <x, y> > 0

    def __bool__(self):
        return self.member


def cone_combination(vectors: Sequence[Sequence], x: Sequence) -> ConeMembership:
    """Decide ``x ∈ cone(vectors)``; the generator list may contain zeros."""
    n = len(x)
    k = len(vectors)
    for v in vectors:
        if len(v) != n:
            raise DimensionError("dimension mismatch between generators and query")
    if k == 0:
        if all(c == 0 for c in x):
            return ConeMembership(True, weights=())
        return ConeMembership(False, separator=Vector(x))
    mode = EXACT if not isinstance(x[0], float) else "float"
    rows = [[v[i] for v in vectors] for i in range(n)]
    prob = _lp.LinearProgram.build([0] * k, rows, [_lp.EQ] * n, list(x), mode=mode)
    out = _lp.solve(prob)
    if out.optimal:
        return ConeMembership(True, weights=out.x)
    return ConeMembership(False, separator=Vector(out.y))


def cone_member(rs: RaySet, x: Sequence) -> ConeMembership:
    if len(x) != rs.dim:
        raise DimensionError(f"query has dimension {len(x)}, cone has {rs.dim}")
    return cone_combination(rs.generators, x)


@dataclass(frozen=True)
class OpenConeH:
    """``P = {x : A x > 0}`` given by the rows of ``A``."""

    rows: tuple

    def __post_init__(self):
        rows = _as_vectors(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("an OpenConeH needs at least one row")
        n = rows[0].dim
        for i, r in enumerate(rows):
            if r.dim != n:
                raise DimensionError(f"row {i} has dimension {r.dim}, expected {n}")

    @property
    def dim(self) -> int:
        return self.rows[0].dim

    @property
    def mode(self) -> str:
        return self.rows[0].mode

    def contains(self, x: Sequence) -> bool:
        return all(dot(r, x) > 0 for r in self.rows)


@dataclass(frozen=True)
class NonemptyResult:
    nonempty: bool
    point: Optional[Vector] = None  # A x0 >= 1
    farkas: Optional[tuple] = None  # y >= 0, A^T y = 0, sum y > 0

    def __bool__(self):
        return self.nonempty


def open_cone_nonempty(oc: OpenConeH) -> NonemptyResult:
    n = oc.dim
    prob = _lp.LinearProgram.build(
        [0] * n, oc.rows, [_lp.GE] * len(oc.rows), [1] * len(oc.rows), [_lp.FREE] * n, mode=oc.mode
    )
    out = _lp.solve(prob)
    if out.optimal:
        return NonemptyResult(True, point=Vector(out.x))
    return NonemptyResult(False, farkas=out.y)


def _rational_weights(rng: np.random.Generator, k: int) -> list:
    # strictly positive lattice weights in {1..100}/100
    return [Fraction(int(w), 100) for w in rng.integers(1, 101, size=k)]


def sphere_sample(
    cs: ClosedSphericalConvex, count: int, seed: int, with_preimage: bool = False
):
    """Points of ``B = cone(G) ∩ S^{n-1}`` as normalized positive combinations.

    With ``with_preimage=True`` each sample is paired with the exact
    (unnormalized) combination it came from.
    """
    rng = np.random.default_rng(seed)
    gens = cs.generators
    n = cs.dim
    pts, pre = [], []
    for _ in range(count):
        w = _rational_weights(rng, len(gens))
        x = Vector([sum((wi * g[i] for wi, g in zip(w, gens)), Fraction(0)) for i in range(n)])
        pre.append(x)
        pts.append(normalize(x))
    if with_preimage:
        return list(zip(pts, pre))
    return pts
