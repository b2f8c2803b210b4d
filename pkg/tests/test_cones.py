import math
import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphsep.arith import Vector, dot
from sphsep.cones import (
    ClosedSphericalConvex,
    OpenConeH,
    RaySet,
    check_pointedness,
    cone_member,
    is_pointed,
    open_cone_nonempty,
    sphere_sample,
)
from sphsep.errors import NotSphericallyConvexError, ZeroVectorError
from sphsep.harness import lattice_vector, zero_in_hull_bruteforce

from conftest import closed


def test_pointed_example():
    rs = RaySet(((1, 0), (1, 1)))
    res = is_pointed(rs)
    assert res.pointed
    assert all(dot(g, res.u0) >= 1 for g in rs)
    assert check_pointedness(rs, res)


def test_not_pointed_three_vectors():
    rs = RaySet(((1, 0), (-1, 1), (0, -1)))
    res = is_pointed(rs)
    assert not res.pointed
    assert res.weights == (Fraction(1, 3),) * 3
    assert check_pointedness(rs, res)


def test_not_pointed_antipodal():
    res = is_pointed(RaySet(((1, 0), (-1, 0))))
    assert not res.pointed and res.weights == (Fraction(1, 2), Fraction(1, 2))


def test_validate_rejects_non_pointed():
    with pytest.raises(NotSphericallyConvexError) as e:
        ClosedSphericalConvex.validate(RaySet(((1, 0), (-1, 0))))
    assert "not spherically convex" in str(e.value)
    assert e.value.weights == (Fraction(1, 2), Fraction(1, 2))


def test_zero_generator_rejected():
    with pytest.raises(ZeroVectorError):
        RaySet(((1, 0), (0, 0)))


def test_duplicate_generator_warns():
    with pytest.warns(UserWarning):
        rs = RaySet(((1, 0), (1, 0)))
    assert rs.has_duplicates


def test_cone_member_examples():
    rs = RaySet(((1, 0), (0, 1)))
    m = cone_member(rs, Vector([2, 3]))
    assert m.member and m.weights == (2, 3)
    m = cone_member(rs, Vector([-1, 0]))
    assert not m.member
    y = m.separator
    assert all(dot(g, y) <= 0 for g in rs) and dot(Vector([-1, 0]), y) > 0
    m = cone_member(RaySet(((1, 1),)), Vector([2, 2]))
    assert m.member and m.weights == (2,)


def test_open_cone_examples():
    r = open_cone_nonempty(OpenConeH(((1, 0), (0, 1))))
    assert r.nonempty and all(c >= 1 for c in r.point)
    assert not open_cone_nonempty(OpenConeH(((1, 0), (-1, 0)))).nonempty
    r = open_cone_nonempty(OpenConeH(((1, 1),)))
    assert r.nonempty and dot(Vector([1, 1]), r.point) > 0


def test_sphere_sample_single_ray():
    assert sphere_sample(closed((1, 0)), 3, seed=5) == [Vector([1.0, 0.0])] * 3


def test_sphere_sample_quadrant_and_determinism():
    cs = closed((1, 0), (0, 1))
    pts = sphere_sample(cs, 50, seed=9, with_preimage=True)
    for s, pre in pts:
        assert s[0] >= -1e-12 and s[1] >= -1e-12
        assert abs(math.hypot(*s) - 1) < 1e-12
        assert cone_member(cs.rays, pre).member
    assert sphere_sample(cs, 50, seed=9) == [s for s, _ in pts]


def gen_list(rng, n, k):
    return [lattice_vector(rng, n) for _ in range(k)]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 6))
def test_pointedness_dichotomy(seed, n, k):
    rng = np.random.default_rng(seed)
    gens = gen_list(rng, n, k)
    if k > 1 and seed % 3 == 0:
        gens[-1] = -gens[0]
    rs = RaySet(tuple(gens))
    res = is_pointed(rs)
    assert check_pointedness(rs, res)
    assert res.pointed == (not zero_in_hull_bruteforce(gens))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_no_antipodal_pair_in_validated(seed, n):
    rng = np.random.default_rng(seed)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rs = RaySet(tuple(gen_list(rng, n, 4)))
    try:
        cs = ClosedSphericalConvex.validate(rs)
    except NotSphericallyConvexError:
        return
    for g in cs.generators:
        assert not cone_member(cs.rays, -g).member


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_predicate_reduction(seed):
    from sphsep.harness import gen_disjoint_closed

    rng = np.random.default_rng(seed)
    b1, _ = gen_disjoint_closed(3, 4, Fraction(1, 10), seed)
    samples = [pre for _, pre in sphere_sample(b1, 1000, seed, with_preimage=True)] + list(b1.generators)
    for _ in range(5):
        u = lattice_vector(rng, 3)
        assert all(dot(g, u) > 0 for g in b1.generators) == all(dot(x, u) > 0 for x in samples)
