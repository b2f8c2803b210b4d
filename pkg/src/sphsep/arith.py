"""Exact rational scalars and dense vectors.

Scalars are either :class:`fractions.Fraction` (exact mode) or ``float``
(float mode). The Python type of a value is its mode tag. Every accept/reject
decision in the package goes through the exact path; floats are used for
margins, unit vectors and rendering only.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Integral, Rational
from typing import Iterable, Sequence, Union

from .errors import DimensionError, ModeError, ZeroVectorError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a Fraction.

    Decimal points and exponents are rejected on purpose: a literal that
    looks like a float is almost always a sign of lost precision upstream.
    """
    if not isinstance(text, str):
        raise ValueError(f"rational literal must be a string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"invalid rational literal {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def to_scalar(x, mode: str = EXACT) -> Scalar:
    """Coerce ``x`` to a scalar of the given mode.

    Floats are converted to Fractions exactly (no rounding), strings go
    through :func:`parse_rational` in exact mode.
    """
    if mode == EXACT:
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, Integral):
            return Fraction(int(x))
        if isinstance(x, Rational):
            return Fraction(int(x.numerator), int(x.denominator))
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ValueError(f"non-finite value {x!r}")
            return Fraction(x)
        if isinstance(x, str):
            return parse_rational(x)
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return Fraction(int(x.numerator), int(x.denominator))
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")
    if mode == FLOAT:
        if isinstance(x, str):
            return float(parse_rational(x)) if "/" in x else float(x)
        return float(x)
    raise ValueError(f"unknown mode {mode!r}")


def scalar_mode(x) -> str:
    return FLOAT if isinstance(x, float) else EXACT


class Vector(tuple):
    """Immutable vector of dimension >= 2 whose coordinates share one mode.

    Construction infers the mode: ints, Fractions and rational strings give an
    exact vector; floats give a float vector. Mixing the two raises
    :class:`ModeError`; use :meth:`exact` or :meth:`floating` to convert.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable, mode: str | None = None):
        coords = tuple(coords)
        if len(coords) < 2:
            raise DimensionError(f"vectors need dimension n >= 2, got {len(coords)}")
        if mode is None:
            has_float = any(isinstance(c, float) for c in coords)
            has_exact = any(not isinstance(c, float) for c in coords)
            if has_float and has_exact:
                raise ModeError("vector mixes float and exact coordinates")
            mode = FLOAT if has_float else EXACT
        return super().__new__(cls, (to_scalar(c, mode) for c in coords))

    @classmethod
    def exact(cls, coords: Iterable) -> "Vector":
        return cls(coords, EXACT)

    @classmethod
    def floating(cls, coords: Iterable) -> "Vector":
        return cls(coords, FLOAT)

    @classmethod
    def zero(cls, n: int, mode: str = EXACT) -> "Vector":
        return cls([0] * n, mode)

    @classmethod
    def basis(cls, n: int, i: int, mode: str = EXACT) -> "Vector":
        return cls([1 if j == i else 0 for j in range(n)], mode)

    @property
    def dim(self) -> int:
        return len(self)

    @property
    def mode(self) -> str:
        return FLOAT if isinstance(self[0], float) else EXACT

    def is_zero(self) -> bool:
        return all(c == 0 for c in self)

    def to_exact(self) -> "Vector":
        return self if self.mode == EXACT else Vector(self, EXACT)

    def to_float(self) -> "Vector":
        return self if self.mode == FLOAT else Vector(self, FLOAT)

    def __add__(self, other):
        _check_pair(self, other)
        return Vector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_pair(self, other)
        return Vector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vector(-a for a in self)

    def __mul__(self, k):
        if isinstance(k, tuple):
            return NotImplemented
        k = to_scalar(k, self.mode)
        return Vector(a * k for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        if self.mode == EXACT:
            return "Vector(" + ", ".join(format_rational(c) for c in self) + ")"
        return "Vector(" + ", ".join(repr(c) for c in self) + ")"


def _check_pair(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionError(f"dimension mismatch: {len(a)} vs {len(b)}")
    if scalar_mode(a[0]) != scalar_mode(b[0]):
        raise ModeError("cannot combine exact and float vectors")


def dot(a: Sequence, b: Sequence) -> Scalar:
    """Inner product; exact when both arguments are exact."""
    _check_pair(a, b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0) if scalar_mode(a[0]) == EXACT else 0.0)


def norm(v: Sequence) -> float:
    return math.hypot(*(float(c) for c in v))


def normalize(v: Sequence) -> Vector:
    """Unit vector in the direction of ``v`` (float mode)."""
    if all(c == 0 for c in v):
        raise ZeroVectorError("cannot normalize the zero vector")
    fv = [float(c) for c in v]
    # rescale first so hypot never overflows/underflows on huge rationals
    big = max(abs(c) for c in fv)
    if big == 0.0 or not math.isfinite(big):
        fv = _float_direction(v)
        big = max(abs(c) for c in fv)
    fv = [c / big for c in fv]
    r = math.hypot(*fv)
    return Vector.floating(c / r for c in fv)


def _float_direction(v: Sequence) -> list:
    # exact rescaling for rationals too small or too large for binary64
    ev = [Fraction(c) for c in v]
    big = max(abs(c) for c in ev)
    return [float(c / big) for c in ev]


def rank(vs: Sequence[Sequence]) -> int:
    """Rank of a list of vectors.

    Exact vectors use fraction-free (Bareiss) elimination on an integer
    scaling of the rows. Float vectors fall back to numpy's SVD rank.
    """
    if len(vs) == 0:
        return 0
    n = len(vs[0])
    for v in vs:
        if len(v) != n:
            raise DimensionError("rank: vectors of different dimensions")
    if any(isinstance(c, float) for v in vs for c in v):
        import numpy as np

        return int(np.linalg.matrix_rank(np.array(vs, dtype=float)))
    rows = []
    for v in vs:
        fr = [Fraction(c) for c in v]
        den = math.lcm(*(c.denominator for c in fr))
        rows.append([int(c * den) for c in fr])
    return _bareiss_rank(rows)


def _bareiss_rank(rows: list) -> int:
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[r][j] * m[i][c]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == nrows:
            break
    return r


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list | None:
    """Unique solution of a square-or-tall exact linear system, else None.

    Plain Gauss-Jordan over Fractions. Returns None when the system is
    inconsistent or its solution is not unique.
    """
    m = [[Fraction(c) for c in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    if not m:
        return None
    ncols = len(m[0]) - 1
    r = 0
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in m):
        return None
    if len(pivots) < ncols:
        return None
    return [m[i][-1] for i in range(ncols)]

