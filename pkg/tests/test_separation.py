import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sphsep.arith import Vector, dot
from sphsep.cones import RaySet, cone_member
from sphsep.errors import (
    CertificateError,
    EmptyConeError,
    MixedInputError,
    NotSeparableError,
    NotSphericallyConvexError,
    ZeroVectorError,
)
from sphsep.harness import gen_disjoint_closed, gen_intersecting_closed, gen_open_pair, lattice_vector
from sphsep.separation import (
    CommonRayWitness,
    OpenIntersectionWitness,
    Separator,
    check_closed_separator,
    check_common_ray,
    check_open_intersection,
    check_open_separator,
    e_cone_member_open,
    e_member_closed,
    max_margin,
    separate_closed,
    separate_open,
    thickened_disjoint,
    thickening_radius,
)

from conftest import closed, grid_margin_2d, hcone

R2 = math.sqrt(2) / 2


def test_antipodal_separator(antipodal):
    sep = separate_closed(*antipodal)
    assert isinstance(sep, Separator)
    assert sep.u == Vector([1, 0])
    assert (sep.side1_margin, sep.side2_margin) == (1.0, 1.0)
    check_closed_separator(antipodal[0].rays, antipodal[1].rays, sep)


def test_angled_separator(angled):
    sep = separate_closed(*angled)
    assert isinstance(sep, Separator)
    u = Vector([1, 0])
    assert all(dot(g, u) > 0 for g in angled[0].generators)
    assert all(dot(h, u) < 0 for h in angled[1].generators)
    check_closed_separator(angled[0].rays, angled[1].rays, sep)


def test_nested_common_ray(nested):
    w = separate_closed(*nested)
    assert isinstance(w, CommonRayWitness)
    assert w.x[0] == w.x[1] > 0
    g1, g2 = nested[0].generators, nested[1].generators
    assert all(c >= 0 for c in w.lam + w.mu)
    for i in range(2):
        assert sum(l * g[i] for l, g in zip(w.lam, g1)) == w.x[i]
        assert sum(m * h[i] for m, h in zip(w.mu, g2)) == w.x[i]
    check_common_ray(nested[0].rays, nested[1].rays, w)


def test_unvalidated_input_rejected():
    with pytest.raises(NotSphericallyConvexError):
        separate_closed(RaySet(((1, 0),)), RaySet(((-1, 0),)))


def test_mixed_input_rejected():
    with pytest.raises(MixedInputError):
        separate_closed(closed((1, 0)), hcone((1, 0)))


def test_open_opposite_quadrants():
    p1, p2 = hcone((1, 0), (0, 1)), hcone((-1, 0), (0, -1))
    sep = separate_open(p1, p2)
    assert isinstance(sep, Separator)
    assert e_cone_member_open(p1, p2, sep.u)
    check_open_separator(p1, p2, sep)


def test_open_quadrant_halfplane():
    p1, p2 = hcone((1, 0), (0, 1)), hcone((1, 0), (0, -1))
    sep = separate_open(p1, p2)
    assert isinstance(sep, Separator)
    assert sep.u[0] == 0 and sep.u[1] > 0
    check_open_separator(p1, p2, sep)


def test_open_overlap_witness():
    p1, p2 = hcone((1, 0), (0, 1)), hcone((1, 1))
    w = separate_open(p1, p2)
    assert isinstance(w, OpenIntersectionWitness)
    assert p1.contains(w.x) and p2.contains(w.x)
    check_open_intersection(p1, p2, w)


def test_open_empty_rejected():
    with pytest.raises(EmptyConeError):
        separate_open(hcone((1, 0), (-1, 0)), hcone((0, 1)))


def test_e_member_closed_examples(antipodal):
    assert e_member_closed(*antipodal, Vector([1, 0]))
    assert not e_member_closed(*antipodal, Vector([0, 1]))
    with pytest.raises(ZeroVectorError):
        e_member_closed(*antipodal, Vector([0, 0]))


def test_e_cone_member_open_examples():
    p1, p2 = hcone((1, 0), (0, 1)), hcone((1, 0), (0, -1))
    assert e_cone_member_open(p1, p2, Vector([0, 1]))
    assert not e_cone_member_open(p1, p2, Vector([1, 1]))
    assert e_cone_member_open(p1, p2, Vector([0, 0]))


@pytest.mark.parametrize(
    "name,expected",
    [("antipodal", 1.0), ("quadrants", R2), ("angled", R2)],
)
def test_max_margin_against_grid(name, expected, request):
    b1, b2 = request.getfixturevalue(name)
    mm = max_margin(b1, b2)
    oracle, _ = grid_margin_2d(b1.generators, b2.generators)
    assert abs(oracle - expected) < 1e-6
    assert abs(mm.r_lo - oracle) < 1e-6
    assert mm.r_lo <= mm.r_hi + 1e-12


def test_max_margin_directions(quadrants, angled):
    assert max_margin(*quadrants).u_hat == pytest.approx((R2, R2), abs=1e-6)
    assert max_margin(*angled).u_hat == pytest.approx((1, 0), abs=1e-6)


def test_max_margin_not_separable(nested):
    with pytest.raises(NotSeparableError):
        max_margin(*nested)


def test_thickening_examples(antipodal, quadrants):
    assert thickened_disjoint(*antipodal, Fraction(1, 2))
    assert not thickened_disjoint(*antipodal, Fraction(3, 2))
    assert thickened_disjoint(*quadrants, 0.5)
    assert not thickened_disjoint(*quadrants, 0.75)
    assert thickened_disjoint(*quadrants, 1e-9)
    assert thickening_radius(*antipodal) == pytest.approx(0.5, abs=1e-6)
    assert thickening_radius(*quadrants) == pytest.approx(math.sqrt(2) / 4, abs=1e-6)


def test_thickening_rejects_nonpositive(antipodal):
    with pytest.raises(ValueError):
        thickened_disjoint(*antipodal, 0)


def test_corrupted_separator_detected(antipodal):
    sep = separate_closed(*antipodal)
    bad = Separator(sep.case, -sep.u, sep.u_hat, sep.side1_margin, sep.side2_margin, sep.side1_dots, sep.side2_dots)
    with pytest.raises(CertificateError):
        check_closed_separator(antipodal[0].rays, antipodal[1].rays, bad)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.integers(1, 6))
def test_closed_dichotomy(seed, n, k):
    b1, b2 = gen_disjoint_closed(n, k, Fraction(1, 10), seed)
    sep = separate_closed(b1, b2)
    assert isinstance(sep, Separator)
    check_closed_separator(b1.rays, b2.rays, sep)
    assert e_member_closed(b1, b2, sep.u_hat)
    c1, c2 = gen_intersecting_closed(n, max(k, 2), seed)
    w = separate_closed(c1, c2)
    assert isinstance(w, CommonRayWitness)
    check_common_ray(c1.rays, c2.rays, w)
    assert cone_member(c1.rays, w.x).member and cone_member(c2.rays, w.x).member


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_e_open_and_pe_convex(seed, n):
    rng = np.random.default_rng(seed)
    b1, b2 = gen_disjoint_closed(n, 4, Fraction(1, 10), seed)
    sep = separate_closed(b1, b2)
    base = np.array(sep.u_hat)
    for _ in range(30):
        d = rng.normal(size=n)
        d *= 0.5 * sep.min_margin * rng.random() / np.linalg.norm(d)
        assert e_member_closed(b1, b2, (base + d).tolist())
    v = sep.u + lattice_vector(rng, n) * Fraction(1, 100)
    if e_member_closed(b1, b2, v):
        assert e_member_closed(b1, b2, sep.u + v)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.integers(1, 5), st.booleans())
def test_open_dichotomy(seed, n, m, disjoint):
    p1, p2 = gen_open_pair(n, m, seed, disjoint)
    res = separate_open(p1, p2)
    if disjoint:
        assert isinstance(res, Separator)
        check_open_separator(p1, p2, res)
        assert not e_cone_member_open(p1, p2, -res.u)
        assert e_cone_member_open(p1, p2, res.u * 3 + res.u)
    else:
        assert isinstance(res, OpenIntersectionWitness)
        check_open_intersection(p1, p2, res)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 6))
def test_max_margin_grid_random_2d(seed, k):
    b1, b2 = gen_disjoint_closed(2, k, Fraction(1, 10), seed)
    oracle, _ = grid_margin_2d(b1.generators, b2.generators)
    assert abs(max_margin(b1, b2).r_lo - oracle) < 1e-6


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_thickening_radius_round_trip(seed, n):
    b1, b2 = gen_disjoint_closed(n, 4, Fraction(1, 10), seed)
    r = thickening_radius(b1, b2)
    assert r > 0 and thickened_disjoint(b1, b2, r)
    mm = max_margin(b1, b2)
    assert mm.r_lo >= mm.t_box / math.sqrt(n) - 1e-12
