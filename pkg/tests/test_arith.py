import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sphsep.arith import (
    Vector,
    dot,
    format_rational,
    norm,
    normalize,
    parse_rational,
    rank,
    solve_exact,
    to_scalar,
)
from sphsep.errors import DimensionError, ModeError, ZeroVectorError

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
ints = st.integers(-100, 100)


def vecs(n, elems=rationals):
    return st.lists(elems, min_size=n, max_size=n).map(Vector)


def test_dot_examples():
    assert dot(Vector([1, 0]), Vector([0, 1])) == 0
    assert dot(Vector([1, 2]), Vector([3, 4])) == 11
    third = Fraction(1, 3)
    r = dot(Vector([third, third]), Vector([3, 3]))
    assert r == 2 and isinstance(r, Fraction)


def test_normalize_examples():
    assert normalize(Vector([3, 4])) == pytest.approx((0.6, 0.8), abs=1e-15)
    assert tuple(normalize(Vector([1, 0, 0]))) == (1.0, 0.0, 0.0)
    s = math.sqrt(2) / 2
    assert all(abs(a - s) <= 1e-12 for a in normalize(Vector([2, 2])))


def test_normalize_zero_rejected():
    with pytest.raises(ZeroVectorError):
        normalize(Vector([0, 0]))


def test_rank_examples():
    assert rank([Vector([1, 0]), Vector([0, 1])]) == 2
    assert rank([Vector([1, 1]), Vector([2, 2])]) == 1
    assert rank([]) == 0


def test_vector_needs_two_coordinates():
    with pytest.raises(DimensionError):
        Vector([1])


def test_mixed_modes_rejected():
    with pytest.raises(ModeError):
        Vector([Fraction(1), 0.5])
    with pytest.raises(ModeError):
        dot(Vector([1, 2]), Vector([1.0, 2.0]))


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionError):
        dot(Vector([1, 2]), Vector([1, 2, 3]))


@pytest.mark.parametrize("text,val", [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), (" 7/3 ", Fraction(7, 3))])
def test_parse_rational(text, val):
    assert parse_rational(text) == val


@pytest.mark.parametrize("bad", ["1.5", "1/0", "a", "", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


@given(rationals)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_to_scalar_float_is_exact():
    assert to_scalar(0.1) == Fraction(0.1)
    assert to_scalar("1/3") == Fraction(1, 3)


@given(vecs(3), vecs(3), vecs(3))
def test_exact_dot_bilinear(a, b, c):
    assert dot(a + b, c) == dot(a, c) + dot(b, c)
    assert dot(a, b) == dot(b, a)


@given(vecs(4), vecs(4))
def test_exact_reproducible(a, b):
    assert dot(a, b) == dot(Vector(list(a)), Vector(list(b)))


@given(vecs(3, ints).filter(lambda v: not v.is_zero()), st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_normalize_cross_mode(v, w):
    wn = math.sqrt(sum(c * c for c in w))
    if wn > 1:
        w = [c / wn for c in w]
    u = normalize(v)
    assert abs(math.fsum(c * c for c in u) - 1) <= 1e-12
    lhs = math.fsum(a * b for a, b in zip(u, w))
    rhs = math.fsum(float(a) * b for a, b in zip(v, w)) / norm(v)
    assert abs(lhs - rhs) <= 1e-9


@given(st.lists(vecs(3, ints), min_size=1, max_size=5))
def test_rank_matches_numpy(vs):
    import numpy as np

    assert rank(vs) == np.linalg.matrix_rank(np.array([[float(c) for c in v] for v in vs]))


@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3), st.lists(ints, min_size=3, max_size=3))
def test_solve_exact(mat, rhs):
    sol = solve_exact(mat, rhs)
    if sol is None:
        assert rank([Vector(r) for r in mat]) < 3
    else:
        assert all(sum(Fraction(a) * x for a, x in zip(row, sol)) == b for row, b in zip(mat, rhs))
