"""Support functions of polytopes and the strict sublevel sets ``D_alpha``.

``A`` is either the compact polytope ``conv V`` or its interior. For both
kinds the support function is the vertex maximum. Membership in
``D_alpha = {x* : <x, x*> < alpha for all x in A}`` differs between them:

* compact: the supremum is attained, so ``x* ∈ D_alpha`` iff ``sigma(x*) < alpha``;
* open interior: the supremum is not attained for ``x* != 0``, so
  ``[sigma <= alpha] \\ {0}`` lies in ``D_alpha`` and ``0 ∈ D_alpha`` iff ``alpha > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import lp as _lp
from .arith import Vector, dot, norm, rank, to_scalar
from .errors import DegeneratePolytopeError, DimensionError, NotInDAlphaError

COMPACT = "compact"
OPEN_INTERIOR = "open-interior"
KINDS = (COMPACT, OPEN_INTERIOR)


@dataclass(frozen=True)
class Polytope:
    vertices: tuple
    kind: str = COMPACT

    def __post_init__(self):
        vs = tuple(v if isinstance(v, Vector) else Vector.exact(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise ValueError("a polytope needs at least one vertex")
        if self.kind not in KINDS:
            raise ValueError(f"unknown polytope kind {self.kind!r}")
        n = vs[0].dim
        for i, v in enumerate(vs):
            if v.dim != n:
                raise DimensionError(f"vertex {i} has dimension {v.dim}, expected {n}")
        if self.kind == OPEN_INTERIOR and not self.full_dimensional():
            raise DegeneratePolytopeError("open-interior polytope needs affinely spanning vertices")

    @property
    def dim(self) -> int:
        return self.vertices[0].dim

    def full_dimensional(self) -> bool:
        v0 = self.vertices[0]
        diffs = [v - v0 for v in self.vertices[1:]]
        return rank(diffs) == self.dim


@dataclass(frozen=True)
class DAlphaQuery:
    xstar: Vector
    alpha: Fraction

    def __post_init__(self):
        if not isinstance(self.xstar, Vector):
            object.__setattr__(self, "xstar", Vector.exact(self.xstar))
        object.__setattr__(self, "alpha", to_scalar(self.alpha))


def _check(p: Polytope, v: Sequence) -> None:
    if len(v) != p.dim:
        raise DimensionError(f"query has dimension {len(v)}, polytope has {p.dim}")


def sigma(p: Polytope, xstar: Sequence) -> Fraction:
    """Support function value ``max_i <v_i, x*>``."""
    _check(p, xstar)
    return max(dot(v, xstar) for v in p.vertices)


def d_alpha_member(p: Polytope, q: DAlphaQuery) -> bool:
    _check(p, q.xstar)
    if p.kind == COMPACT:
        return sigma(p, q.xstar) < q.alpha
    if not p.full_dimensional():
        raise DegeneratePolytopeError("open-interior polytope is not full-dimensional")
    if q.xstar.is_zero():
        return q.alpha > 0
    return sigma(p, q.xstar) <= q.alpha


@dataclass(frozen=True)
class OpennessRadius:
    gamma: Fraction
    rho: float

    @property
    def gamma_float(self) -> float:
        return float(self.gamma)


def openness_radius(p: Polytope, q: DAlphaQuery) -> OpennessRadius:
    """Ball radius around ``x*`` that stays inside ``D_alpha`` (compact kind).

    ``gamma = (alpha - sigma(x*)) / 2`` and ``rho = gamma / max_i ||v_i||``:
    moving ``x*`` by ``delta`` changes ``sigma`` by at most
    ``max_i ||v_i|| * ||delta||``. With every vertex at the origin ``sigma`` is
    identically zero and ``rho`` is infinite.
    """
    if p.kind != COMPACT:
        raise ValueError("openness_radius is defined for compact polytopes")
    if not d_alpha_member(p, q):
        raise NotInDAlphaError("query is not in D_alpha")
    gamma = (q.alpha - sigma(p, q.xstar)) / 2
    vmax = max(norm(v) for v in p.vertices)
    rho = math.inf if vmax == 0 else float(gamma) / vmax
    return OpennessRadius(gamma, rho)


@dataclass(frozen=True)
class DualTest:
    member: bool
    functional: Optional[Vector]  # x* with <x, x*> > sigma(x*) when not a member
    gap: Fraction  # min over the box of sigma(x*) - <x, x*>


def conv_member_primal(p: Polytope, x: Sequence) -> bool:
    """``x ∈ conv V`` via feasibility of ``V lam = x, lam >= 0, sum lam = 1``."""
    _check(p, x)
    k = len(p.vertices)
    rows = [[v[i] for v in p.vertices] for i in range(p.dim)] + [[1] * k]
    prob = _lp.LinearProgram.build([0] * k, rows, [_lp.EQ] * (p.dim + 1), list(x) + [1])
    return _lp.solve(prob).optimal


def conv_member_support(p: Polytope, x: Sequence) -> DualTest:
    """``x ∈ conv V`` via the support function: ``<x, x*> <= sigma(x*)`` for all ``x*``.

    Positive homogeneity lets the test range over the box ``||x*||_inf <= 1``.
    Variables are ``(x*, s)`` with ``s >= <v_i, x*>``; minimize ``s - <x, x*>``.
    """
    _check(p, x)
    n = p.dim
    c = [-xi for xi in x] + [1]
    rows = [list(-vi for vi in v) + [1] for v in p.vertices]
    bounds = [(-1, 1)] * n + [_lp.FREE]
    prob = _lp.LinearProgram.build(c, rows, [_lp.GE] * len(rows), [0] * len(rows), bounds, sense=_lp.MIN)
    out = _lp.solve(prob)
    gap = out.value
    functional = None if gap >= 0 else Vector(out.x[:n])
    return DualTest(gap >= 0, functional, gap)


def conv_member_dual(p: Polytope, x: Sequence) -> bool:
    """Membership in ``conv V`` decided by the primal LP and the support-function LP.

    Raises AssertionError if the two disagree, which would indicate a solver bug.
    """
    a = conv_member_primal(p, x)
    b = conv_member_support(p, x)
    if a != b.member:
        raise AssertionError(f"primal ({a}) and dual ({b.member}) membership tests disagree")
    return a
