"""Seeded instance generators and the batch property checker.

Per-trial seeds come from a splittable counter scheme: trial ``t`` of the
property named ``name`` under master seed ``s`` uses

    numpy.random.SeedSequence(s, spawn_key=(crc32(name), t)).generate_state(1)[0]

so any trial can be replayed on its own with :func:`replay`.
"""

from __future__ import annotations

import json
import math
import time
import zlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from . import lp as _lp
from .arith import EXACT, Vector, dot, normalize, solve_exact
from .cones import (
    ClosedSphericalConvex,
    OpenConeH,
    RaySet,
    check_pointedness,
    cone_member,
    is_pointed,
    open_cone_nonempty,
    sphere_sample,
)
from .formats import certificate_from_json, certificate_to_json, check_certificate, Instance
from .separation import (
    CommonRayWitness,
    OpenIntersectionWitness,
    Separator,
    e_cone_member_open,
    e_member_closed,
    max_margin,
    separate_closed,
    separate_open,
    thickened_disjoint,
    thickening_radius,
)
from .support import (
    COMPACT,
    OPEN_INTERIOR,
    DAlphaQuery,
    Polytope,
    conv_member_primal,
    conv_member_support,
    d_alpha_member,
    openness_radius,
    sigma,
)

LATTICE = 100


@dataclass
class SuiteConfig:
    dims: tuple = (2, 3, 4, 5)
    k_range: tuple = (3, 8)
    trials: int = 200
    seed: int = 42
    mode: str = EXACT
    delta: Fraction = Fraction(1, 10)
    interior_samples: int = 1000
    perturbations: int = 100
    open_members: int = 100

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        self.delta = Fraction(self.delta)
        if self.delta <= 0:
            raise ValueError("planting margin delta must be positive")
        if not self.dims or min(self.dims) < 2:
            raise ValueError("dimensions must be >= 2")
        lo, hi = self.k_range
        if lo < 1 or hi < lo:
            raise ValueError("bad generator-count range")


@dataclass
class PropertyResult:
    passed: int = 0
    failed: int = 0
    failing_seeds: list = field(default_factory=list)
    messages: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed


@dataclass
class SuiteReport:
    seed: int
    trials: int
    results: Dict[str, PropertyResult]
    wall_clock: float

    @property
    def ok(self) -> bool:
        return all(r.failed == 0 for r in self.results.values())

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "wall_clock": self.wall_clock,
            "ok": self.ok,
            "properties": {k: asdict(v) for k, v in self.results.items()},
        }

    def to_text(self) -> str:
        lines = [f"suite seed={self.seed} trials={self.trials} time={self.wall_clock:.2f}s"]
        width = max(len(k) for k in self.results) if self.results else 0
        for name, r in self.results.items():
            status = "PASS" if r.failed == 0 else "FAIL"
            line = f"  {status} {name:<{width}} {r.passed}/{r.total}"
            if r.failed:
                line += f"  failing seeds: {r.failing_seeds[:5]}"
            lines.append(line)
            for msg in r.messages[:3]:
                lines.append(f"       {msg}")
        lines.append("ALL PROPERTIES PASS" if self.ok else "PROPERTY FAILURES")
        return "\n".join(lines)


def trial_seed(master: int, name: str, trial: int) -> int:
    ss = np.random.SeedSequence(master, spawn_key=(zlib.crc32(name.encode()), trial))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


# random lattice data -----------------------------------------------------------

def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def lattice_vector(rng: np.random.Generator, n: int) -> Vector:
    """Nonzero vector with coordinates in {-100..100}/100."""
    while True:
        nums = rng.integers(-LATTICE, LATTICE + 1, size=n)
        if any(nums):
            return Vector([Fraction(int(a), LATTICE) for a in nums])


def _unit_inf(v: Vector) -> Vector:
    return v * (1 / max(abs(c) for c in v))


def _l1(v) -> Fraction:
    return sum((abs(c) for c in v), Fraction(0))


def _halfspace_vectors(rng, n: int, count: int, direction: Vector) -> list:
    """Distinct lattice vectors with <w, direction> > 0."""
    out: list = []
    while len(out) < count:
        w = lattice_vector(rng, n)
        d = dot(w, direction)
        if d == 0:
            continue
        if d < 0:
            w = -w
        if w not in out:
            out.append(w)
    return out


def _cone_through(rng, n: int, k: int, direction: Vector) -> list:
    """``k`` generators in the open halfspace of ``direction`` whose cone contains it."""
    ws = _halfspace_vectors(rng, n, k - 1, direction)
    total = sum((dot(w, direction) for w in ws), Fraction(0))
    mult = math.floor(total / dot(direction, direction)) + 1
    last = direction * mult
    for w in ws:
        last = last - w
    gens = ws + [last]
    order = rng.permutation(len(gens))
    return [gens[i] for i in order]


def gen_disjoint_closed(n: int, k: int, delta=Fraction(1, 10), seed=0, return_planted: bool = False):
    """Two pointed generator sets strictly separated by a planted direction ``u0``.

    Side-1 generators satisfy ``<g, u0> >= delta ||g||_1``, side-2 generators
    ``<h, u0> <= -delta ||h||_1``.
    """
    if n < 2 or k < 1 or delta <= 0:
        raise ValueError("need n >= 2, k >= 1, delta > 0")
    delta = Fraction(delta)
    rng = _rng(seed)
    u0 = _unit_inf(lattice_vector(rng, n))
    sides = []
    for sign in (1, -1):
        gens: list = []
        tries = 0
        while len(gens) < k:
            tries += 1
            if tries > 100000:
                raise RuntimeError("could not plant generators; delta too large for this direction")
            g = lattice_vector(rng, n)
            d = dot(g, u0) * sign
            if d < 0:
                g, d = -g, -d
            if d >= delta * _l1(g) and g not in gens:
                gens.append(g)
        sides.append(ClosedSphericalConvex.validate(RaySet(tuple(gens))))
    if return_planted:
        return sides[0], sides[1], u0
    return sides[0], sides[1]


def gen_intersecting_closed(n: int, k: int, seed=0, return_planted: bool = False):
    """Two pointed generator sets whose cones both contain a planted ray ``x``."""
    if n < 2 or k < 2:
        raise ValueError("need n >= 2, k >= 2")
    rng = _rng(seed)
    x = lattice_vector(rng, n)
    sides = [ClosedSphericalConvex.validate(RaySet(tuple(_cone_through(rng, n, k, x)))) for _ in range(2)]
    if return_planted:
        return sides[0], sides[1], x
    return sides[0], sides[1]


def gen_open_pair(n: int, m: int, seed=0, disjoint: bool = True, return_planted: bool = False):
    """Two nonempty open cones ``{A_i x > 0}``.

    ``disjoint=True`` plants ``u0 ∈ cone(rows A1) ∩ -cone(rows A2)``;
    otherwise both sides are built around a shared interior point.
    """
    if n < 2 or m < 1:
        raise ValueError("need n >= 2, m >= 1")
    rng = _rng(seed)
    planted = lattice_vector(rng, n)
    if disjoint:
        a1 = _cone_through(rng, n, m, planted)
        a2 = _cone_through(rng, n, m, -planted)
    else:
        a1 = _halfspace_vectors(rng, n, m, planted)
        a2 = _halfspace_vectors(rng, n, m, planted)
    p1, p2 = OpenConeH(tuple(a1)), OpenConeH(tuple(a2))
    if return_planted:
        return p1, p2, planted
    return p1, p2


def gen_polytope(rng, n: int, kind: str = COMPACT, extra: Optional[int] = None) -> Polytope:
    """Random lattice polytope with ``n+1..n+4`` vertices; full-dimensional when open."""
    while True:
        m = n + 1 + (int(rng.integers(0, 4)) if extra is None else extra)
        verts = [Vector([Fraction(int(a), LATTICE) for a in rng.integers(-LATTICE, LATTICE + 1, size=n)]) for _ in range(m)]
        p = Polytope(tuple(verts), COMPACT)
        if kind == COMPACT or p.full_dimensional():
            return Polytope(tuple(verts), kind)


def random_lp(rng) -> _lp.LinearProgram:
    n = int(rng.integers(1, 6))
    m = int(rng.integers(0, 7))
    c = rng.integers(-5, 6, n)
    rows = rng.integers(-5, 6, (m, n))
    rhs = rng.integers(-5, 6, m)
    rels = [(_lp.LE, _lp.EQ, _lp.GE)[int(k)] for k in rng.integers(0, 3, m)]
    bounds = []
    for _ in range(n):
        lo = int(rng.integers(-3, 2))
        hi = lo + int(rng.integers(0, 4))
        bounds.append([_lp.NONNEG, _lp.FREE, (lo, hi), (None, hi)][int(rng.integers(0, 4))])
    sense = (_lp.MAX, _lp.MIN)[int(rng.integers(0, 2))]
    return _lp.LinearProgram.build(c, rows, rels, rhs, bounds, sense)


# independent oracles -------------------------------------------------------------

def zero_in_hull_bruteforce(gens: Sequence[Vector]) -> bool:
    """0 ∈ conv(gens) by enumerating affinely independent subsets (Carathéodory)."""
    from itertools import combinations

    n = gens[0].dim
    for size in range(1, min(len(gens), n + 1) + 1):
        for sub in combinations(gens, size):
            mat = [[g[i] for g in sub] for i in range(n)] + [[1] * size]
            sol = solve_exact(mat, [0] * n + [1])
            if sol is not None and all(v >= 0 for v in sol):
                return True
    return False


def _interior_points_strict(p: Polytope, xstar: Vector, alpha: Fraction, rng, count: int) -> bool:
    """Whether ``<x, x*> < alpha`` holds at ``count`` random strictly interior points.

    Points are ``sum w_i v_i / sum w_i`` with integer weights ``w_i >= 1``; the
    comparison is done in integers.
    """
    vals = [dot(v, xstar) for v in p.vertices]
    den = math.lcm(*(v.denominator for v in vals), alpha.denominator)
    ivals = [int(v * den) for v in vals]
    ialpha = int(alpha * den)
    weights = rng.integers(1, 1001, size=(count, len(vals)))
    for w in weights.tolist():
        if sum(a * b for a, b in zip(w, ivals)) >= ialpha * sum(w):
            return False
    return True


def _interior_violator(p: Polytope, xstar: Vector, alpha: Fraction) -> Optional[Vector]:
    """A strictly interior point with ``<x, x*> >= alpha``, if one is forced to exist."""
    m = len(p.vertices)
    n = p.dim
    centroid = Vector([sum((v[i] for v in p.vertices), Fraction(0)) / m for i in range(n)])
    if xstar.is_zero():
        return centroid if alpha <= 0 else None
    vals = [dot(v, xstar) for v in p.vertices]
    top = max(vals)
    if top <= alpha:
        return None
    vbest = p.vertices[vals.index(top)]
    cval = dot(centroid, xstar)
    eps = Fraction(1, 2)
    if top > cval:
        eps = min(eps, (top - alpha) / (top - cval))
    return vbest * (1 - eps) + centroid * eps


def _random_direction(rng, n: int) -> np.ndarray:
    d = rng.normal(size=n)
    return d / np.linalg.norm(d)


# properties -------------------------------------------------------------------

def _pick(rng, cfg: SuiteConfig):
    n = int(rng.choice(cfg.dims))
    k = int(rng.integers(cfg.k_range[0], cfg.k_range[1] + 1))
    return n, k


def _roundtrip_check(cert, side1, side2) -> None:
    back = certificate_from_json(json.loads(json.dumps(certificate_to_json(cert))))
    assert back == cert, "certificate does not survive serialization"
    inst = Instance(side1.dim, sides=(side1, side2))
    check_certificate(back, inst)


def prop_lp_certificates(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    prob = random_lp(rng)
    out = _lp.solve(prob)
    assert out.status in _lp.STATUSES
    msg = _lp.lp_certificate_failure(prob, out)
    assert msg is None, msg
    again = _lp.solve(prob)
    assert again == out, "solver is not deterministic"


def prop_pointedness_dichotomy(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n = int(rng.choice(cfg.dims))
    k = int(rng.integers(1, 7))
    gens = [lattice_vector(rng, n) for _ in range(k)]
    if rng.random() < 0.3:
        gens[-1] = -gens[0] * Fraction(int(rng.integers(1, 4)))
    rs = RaySet(tuple(gens))
    res = is_pointed(rs)
    assert check_pointedness(rs, res), "pointedness certificate does not verify"
    assert res.pointed == (not zero_in_hull_bruteforce(gens)), "Gordan alternative disagrees with enumeration"
    if res.pointed:
        for g in gens:
            assert not cone_member(rs, -g), "pointed cone contains an antipodal pair"


def prop_predicate_reduction(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n, k = _pick(rng, cfg)
    b1, _ = gen_disjoint_closed(n, k, cfg.delta, int(rng.integers(2**32)))
    samples = sphere_sample(b1, cfg.interior_samples, int(rng.integers(2**32)), with_preimage=True)
    preimages = [pre for _, pre in samples] + list(b1.generators)
    for _ in range(5):
        u = lattice_vector(rng, n)
        by_gens = all(dot(g, u) > 0 for g in b1.generators)
        by_samples = all(dot(x, u) > 0 for x in preimages)
        assert by_gens == by_samples, "generator predicate differs from sampled-cap predicate"
    for (pt, pre) in samples[:20]:
        assert cone_member(b1.rays, pre), "sample preimage is not in the cone"
        assert abs(math.fsum(c * c for c in pt) - 1) < 1e-12


def prop_sandwich(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n = int(rng.choice(cfg.dims))
    p = gen_polytope(rng, n, OPEN_INTERIOR)
    xstar = Vector.zero(n) if rng.random() < 0.1 else lattice_vector(rng, n)
    s = sigma(p, xstar)
    mode = int(rng.integers(0, 3))
    if mode == 0:
        alpha = s
    elif mode == 1:
        alpha = s + Fraction(int(rng.integers(-20, 21)), LATTICE * 10)
    else:
        alpha = Fraction(int(rng.integers(-300, 301)), LATTICE)
    q = DAlphaQuery(xstar, alpha)
    member = d_alpha_member(p, q)
    # the two inclusions
    if member:
        assert s <= alpha, "D_alpha member outside [sigma <= alpha]"
    if not xstar.is_zero() and s <= alpha:
        assert member, "[sigma <= alpha] minus origin not inside D_alpha"
    assert member == ((xstar.is_zero() and alpha > 0) or (not xstar.is_zero() and s <= alpha))
    # interior points decide membership exactly
    if member:
        assert _interior_points_strict(p, xstar, alpha, rng, cfg.interior_samples), "interior point violates <x,x*> < alpha"
    else:
        x = _interior_violator(p, xstar, alpha)
        assert x is not None and dot(x, xstar) >= alpha, "no interior point refutes membership"
    compact = Polytope(p.vertices, COMPACT)
    if d_alpha_member(compact, q):
        assert member, "compact D_alpha not inside open D_alpha"


def prop_openness(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n = int(rng.choice(cfg.dims))
    p = gen_polytope(rng, n, COMPACT)
    xstar = lattice_vector(rng, n)
    top = max(sum((a * b for a, b in zip(v, xstar)), Fraction(0)) for v in p.vertices)
    alpha = top + Fraction(int(rng.integers(1, 101)), LATTICE)
    q = DAlphaQuery(xstar, alpha)
    rad = openness_radius(p, q)
    assert rad.gamma == (alpha - top) / 2, "gamma differs from (alpha - sigma)/2"
    assert rad.rho > 0
    base = np.array([float(c) for c in xstar])
    for i in range(cfg.perturbations):
        d = _random_direction(rng, n)
        scale = 0.999 * rad.rho * (1.0 if i % 2 == 0 else rng.random() ** (1 / n))
        moved = Vector.exact((base + scale * d).tolist())
        assert d_alpha_member(p, DAlphaQuery(moved, alpha)), "perturbation within 0.999 rho left D_alpha"


def prop_duality(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n = int(rng.choice(cfg.dims))
    p = gen_polytope(rng, n, COMPACT)
    m = len(p.vertices)
    choice = int(rng.integers(0, 5))
    known = None
    if choice == 0:
        x = p.vertices[int(rng.integers(0, m))]
        known = True
    elif choice == 1:
        w = [Fraction(int(a)) for a in rng.integers(1, 50, size=m)]
        tot = sum(w)
        x = Vector([sum((wi * v[i] for wi, v in zip(w, p.vertices)), Fraction(0)) / tot for i in range(n)])
        known = True
    elif choice == 2:
        a, b = rng.choice(m, size=2, replace=False)
        x = (p.vertices[a] + p.vertices[b]) * Fraction(1, 2)
        known = True
    elif choice == 3:
        cen = Vector([sum((v[i] for v in p.vertices), Fraction(0)) / m for i in range(n)])
        v = p.vertices[int(rng.integers(0, m))]
        x = cen + (v - cen) * Fraction(101, 100)
    else:
        x = lattice_vector(rng, n)
    a = conv_member_primal(p, x)
    b = conv_member_support(p, x)
    assert a == b.member, "primal and support-function membership disagree"
    if known is not None:
        assert a == known
    if not b.member:
        fs = b.functional
        assert dot(x, fs) > sigma(p, fs), "dual functional does not exhibit <x,x*> > sigma(x*)"


def _closed_instance(rng, cfg: SuiteConfig, disjoint: Optional[bool] = None):
    n, k = _pick(rng, cfg)
    if disjoint is None:
        disjoint = bool(rng.random() < 0.5)
    s = int(rng.integers(2**32))
    if disjoint:
        b1, b2 = gen_disjoint_closed(n, k, cfg.delta, s)
    else:
        b1, b2 = gen_intersecting_closed(n, max(k, 2), s)
    return b1, b2, disjoint


def prop_dichotomy(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, disjoint = _closed_instance(rng, cfg)
    res = separate_closed(b1, b2)
    if disjoint:
        assert isinstance(res, Separator), "planted-disjoint instance did not separate"
    else:
        assert isinstance(res, CommonRayWitness), "planted-intersecting instance separated"
        assert cone_member(b1.rays, res.x) and cone_member(b2.rays, res.x)
    _roundtrip_check(res, b1.rays, b2.rays)


def prop_no_ray_when_separated(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, _ = _closed_instance(rng, cfg)
    res = separate_closed(b1, b2)
    hits = []
    for _ in range(20):
        u = lattice_vector(rng, b1.dim)
        if e_member_closed(b1, b2, u):
            hits.append(u)
    if isinstance(res, Separator):
        assert e_member_closed(b1, b2, res.u) and e_member_closed(b1, b2, res.u_hat)
        hits.append(res.u)
    if hits:
        assert not isinstance(res, CommonRayWitness), "E nonempty but a common ray was returned"


def prop_e_openness(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, _ = _closed_instance(rng, cfg, disjoint=True)
    sep = separate_closed(b1, b2)
    radius = 0.5 * sep.min_margin
    base = np.array(sep.u_hat, dtype=float)
    for _ in range(cfg.perturbations):
        d = _random_direction(rng, b1.dim) * radius * rng.random() ** (1 / b1.dim)
        assert e_member_closed(b1, b2, (base + d).tolist()), "perturbed u_hat left E"


def prop_pe_convexity(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, u0 = gen_disjoint_closed(*_pick(rng, cfg), cfg.delta, int(rng.integers(2**32)), return_planted=True)
    sep = separate_closed(b1, b2)
    members = [sep.u, u0]
    for _ in range(20):
        v = sep.u + lattice_vector(rng, b1.dim) * Fraction(1, 10)
        if not v.is_zero() and e_member_closed(b1, b2, v):
            members.append(v)
    for a in members:
        for b in members[:5]:
            assert e_member_closed(b1, b2, a + b), "separating directions not closed under addition"
        assert e_member_closed(b1, b2, a * Fraction(int(rng.integers(1, 100)), 7))


def prop_margin_consistency(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, _ = _closed_instance(rng, cfg, disjoint=True)
    sep = separate_closed(b1, b2)
    assert sep.side1_margin > 0 and sep.side2_margin > 0
    assert all(d > 0 for d in sep.side1_dots) and all(d < 0 for d in sep.side2_dots)
    for d, g in zip(sep.side1_dots, b1.generators):
        assert d == dot(g, sep.u)
    m1 = min(sum(a * b for a, b in zip(normalize(g), sep.u_hat)) for g in b1.generators)
    assert abs(m1 - sep.side1_margin) <= 1e-12


def prop_max_margin(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, _ = _closed_instance(rng, cfg, disjoint=True)
    n = b1.dim
    mm = max_margin(b1, b2)
    uh = list(mm.u_hat)
    m1 = min(sum(a * b for a, b in zip(normalize(g), uh)) for g in b1.generators)
    m2 = min(-sum(a * b for a, b in zip(normalize(h), uh)) for h in b2.generators)
    assert min(m1, m2) >= mm.r_lo - 1e-9
    assert mm.r_lo >= mm.t_box / math.sqrt(n) - 1e-12
    assert mm.r_lo <= mm.r_hi + 1e-12
    assert mm.r_lo >= separate_closed(b1, b2).min_margin - 1e-9
    # cap margin equals generator margin
    s = int(rng.integers(2**32))
    for b in sphere_sample(b1, 200, s):
        assert sum(a * c for a, c in zip(b, uh)) >= mm.r_lo - 1e-12
    for b in sphere_sample(b2, 200, s + 1):
        assert -sum(a * c for a, c in zip(b, uh)) >= mm.r_lo - 1e-12


def prop_thickening(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    b1, b2, _ = _closed_instance(rng, cfg, disjoint=True)
    r_star = max_margin(b1, b2).r_lo
    assert thickened_disjoint(b1, b2, r_star / 2)
    assert not thickened_disjoint(b1, b2, 2 * r_star)
    assert not thickened_disjoint(b1, b2, r_star)
    grid = [2 * r_star * (i + 1) / 10 for i in range(10)]
    vals = [thickened_disjoint(b1, b2, r) for r in grid]
    for small, big in zip(vals, vals[1:]):
        assert small or not big, "thickened disjointness is not monotone in r"
    assert thickened_disjoint(b1, b2, thickening_radius(b1, b2))


def open_members(p1: OpenConeH, p2: OpenConeH, rng, count: int) -> list:
    """Random nonzero members of ``cone(rows A1) ∩ -cone(rows A2)``."""
    from .separation import _open_scan_lp

    n = p1.dim
    extremes = []
    for k in range(n):
        for s in (1, -1):
            res = _lp.solve(_open_scan_lp(p1.rows, p2.rows, k, s, EXACT))
            if res.optimal and res.value > 0:
                u = Vector(res.x[:n])
                if u not in extremes:
                    extremes.append(u)
    if not extremes:
        return []
    out = []
    for _ in range(count):
        w = [Fraction(int(a), 10) for a in rng.integers(0, 11, size=len(extremes))]
        if not any(w):
            w[int(rng.integers(0, len(w)))] = Fraction(1)
        u = Vector.zero(n)
        for wi, e in zip(w, extremes):
            u = u + e * wi
        out.append(u)
    return out


def prop_open(cfg: SuiteConfig, seed: int) -> None:
    rng = _rng(seed)
    n = int(rng.choice(cfg.dims))
    m = int(rng.integers(1, cfg.k_range[1] + 1))
    disjoint = bool(rng.random() < 0.5)
    p1, p2 = gen_open_pair(n, m, int(rng.integers(2**32)), disjoint)
    assert open_cone_nonempty(p1) and open_cone_nonempty(p2)
    res = separate_open(p1, p2)
    inst = Instance(n, sides=(p1, p2))
    check_certificate(certificate_from_json(certificate_to_json(res)), inst)
    if not disjoint:
        assert isinstance(res, OpenIntersectionWitness), "planted-intersecting open pair separated"
        return
    assert isinstance(res, Separator), "planted-disjoint open pair did not separate"
    zero = Vector.zero(n)
    assert e_cone_member_open(p1, p2, zero)
    assert e_cone_member_open(p1, p2, res.u)
    members = open_members(p1, p2, rng, cfg.open_members)
    for u in members:
        assert not u.is_zero()
        assert not e_cone_member_open(p1, p2, -u), "separating cone contains a line"
    for a, b in zip(members[::2], members[1::2]):
        assert e_cone_member_open(p1, p2, a + b), "separating cone not closed under addition"
        assert e_cone_member_open(p1, p2, a * Fraction(int(rng.integers(1, 50)), 3))


PROPERTIES: Dict[str, Callable[[SuiteConfig, int], None]] = {
    "lp.certificates": prop_lp_certificates,
    "cones.pointedness_dichotomy": prop_pointedness_dichotomy,
    "cones.predicate_reduction": prop_predicate_reduction,
    "support.sandwich": prop_sandwich,
    "support.openness_radius": prop_openness,
    "support.duality": prop_duality,
    "separation.dichotomy": prop_dichotomy,
    "separation.no_ray_when_separated": prop_no_ray_when_separated,
    "separation.e_openness": prop_e_openness,
    "separation.pe_convexity": prop_pe_convexity,
    "separation.margin_consistency": prop_margin_consistency,
    "separation.max_margin": prop_max_margin,
    "separation.thickening": prop_thickening,
    "separation.open_cones": prop_open,
}


def replay(name: str, seed: int, cfg: Optional[SuiteConfig] = None, properties=None) -> None:
    """Re-run a single trial; raises whatever the property raised."""
    props = PROPERTIES if properties is None else properties
    props[name](cfg or SuiteConfig(), seed)


def run_suite(cfg: SuiteConfig, properties: Optional[Dict[str, Callable]] = None, only: Optional[Sequence[str]] = None) -> SuiteReport:
    props = PROPERTIES if properties is None else properties
    names = [k for k in props if only is None or k in only]
    start = time.perf_counter()
    results: Dict[str, PropertyResult] = {}
    for name in names:
        r = PropertyResult()
        for t in range(cfg.trials):
            s = trial_seed(cfg.seed, name, t)
            try:
                props[name](cfg, s)
            except Exception as e:  # failures are data
                r.failed += 1
                r.failing_seeds.append(s)
                r.messages.append(f"seed {s}: {type(e).__name__}: {e}")
            else:
                r.passed += 1
        results[name] = r
    return SuiteReport(cfg.seed, cfg.trials, results, time.perf_counter() - start)
