"""Dense two-phase simplex with exact certificates.

Every LP in the package goes through :func:`solve`. The solver returns an
:class:`LpOutcome` carrying a certificate that :func:`verify_lp_certificate`
re-checks from the problem data alone:

* optimal: primal point ``x``, dual multipliers ``y`` (one per row) and the
  objective value. With ``s = +1`` for max and ``-1`` for min, ``s*y_i >= 0``
  on ``<=`` rows and ``s*y_i <= 0`` on ``>=`` rows; the reduced costs
  ``w = c - M^T y`` are paid for by the variable bounds, and the resulting dual
  objective equals ``c^T x`` exactly.
* infeasible: Farkas multipliers ``y`` with ``y_i >= 0`` on ``>=`` rows and
  ``y_i <= 0`` on ``<=`` rows, so every row-feasible ``x`` obeys
  ``(M^T y)^T x >= y^T b``; the certificate holds when the largest value of
  ``(M^T y)^T x`` over the variable bounds is still below ``y^T b``.
* unbounded: a feasible point ``x`` and a ray ``d`` that keeps every row and
  bound satisfied and strictly improves the objective.

Pivoting uses Bland's rule (smallest improving index enters, ties on the
ratio test leave by smallest basic index), so results are deterministic.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Optional

from .arith import EXACT, format_rational, scalar_mode, to_scalar
from .errors import MalformedProblemError, ModeError

try:  # mpq is several times faster than Fraction inside the tableau
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = Fraction

LE, EQ, GE = "<=", "=", ">="
RELATIONS = (LE, EQ, GE)
MAX, MIN = "max", "min"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
STATUSES = (OPTIMAL, INFEASIBLE, UNBOUNDED)

FREE = (None, None)
NONNEG = (0, None)

PIVOT_EPS = 1e-9

_audit: contextvars.ContextVar = contextvars.ContextVar("sphsep_lp_audit", default=None)
_trace: contextvars.ContextVar = contextvars.ContextVar("sphsep_lp_trace", default=None)


@dataclass(frozen=True)
class LinearProgram:
    """``sense c^T x`` subject to ``M x (rel) b`` and per-variable bounds.

    A bound is a pair ``(lo, hi)`` with ``None`` for an infinite side.
    """

    c: tuple
    rows: tuple
    relations: tuple
    rhs: tuple
    bounds: tuple
    sense: str = MAX

    def __post_init__(self):
        nv = len(self.c)
        if nv == 0:
            raise MalformedProblemError("LP needs at least one variable")
        if not (len(self.rows) == len(self.relations) == len(self.rhs)):
            raise MalformedProblemError("rows, relations and rhs must have equal length")
        if len(self.bounds) != nv:
            raise MalformedProblemError("one bound pair per variable required")
        for i, row in enumerate(self.rows):
            if len(row) != nv:
                raise MalformedProblemError(f"row {i} has {len(row)} entries, expected {nv}")
        for rel in self.relations:
            if rel not in RELATIONS:
                raise MalformedProblemError(f"unknown relation {rel!r}")
        if self.sense not in (MAX, MIN):
            raise MalformedProblemError(f"unknown sense {self.sense!r}")
        modes = {scalar_mode(v) for v in self._scalars()}
        if len(modes) > 1:
            raise ModeError("LP data mixes exact and float scalars")
        for j, (lo, hi) in enumerate(self.bounds):
            if lo is not None and hi is not None and lo > hi:
                raise MalformedProblemError(f"variable {j} has empty bounds [{lo}, {hi}]")

    def _scalars(self):
        yield from self.c
        for row in self.rows:
            yield from row
        yield from self.rhs
        for lo, hi in self.bounds:
            if lo is not None:
                yield lo
            if hi is not None:
                yield hi

    @classmethod
    def build(cls, c, rows=(), relations=(), rhs=(), bounds=None, sense=MAX, mode=EXACT):
        """Coerce raw data (ints, strings, Fractions, floats) into an LP of ``mode``."""
        conv = lambda v: to_scalar(v, mode)  # noqa: E731
        c = tuple(conv(v) for v in c)
        rows = tuple(tuple(conv(v) for v in row) for row in rows)
        if bounds is None:
            bounds = [NONNEG] * len(c)
        bounds = tuple(
            (None if lo is None else conv(lo), None if hi is None else conv(hi)) for lo, hi in bounds
        )
        return cls(c, rows, tuple(relations), tuple(conv(v) for v in rhs), bounds, sense)

    @property
    def mode(self) -> str:
        return scalar_mode(self.c[0])

    @property
    def nvars(self) -> int:
        return len(self.c)

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LpOutcome:
    status: str
    x: Optional[tuple] = None
    y: Optional[tuple] = None
    value: object = None
    ray: Optional[tuple] = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown LP status {self.status!r}")

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def infeasible(self) -> bool:
        return self.status == INFEASIBLE

    @property
    def unbounded(self) -> bool:
        return self.status == UNBOUNDED


@contextlib.contextmanager
def audit():
    """Record every ``(lp, outcome)`` pair solved inside the block."""
    log: list = []
    token = _audit.set(log)
    try:
        yield log
    finally:
        _audit.reset(token)


class Simplex:
    """One-shot solver; construct, call :meth:`solve` once."""

    def __init__(self, lp: LinearProgram, trace: IO[str] | None = None, eps: float = PIVOT_EPS):
        self.lp = lp
        self.trace = trace
        self.exact = lp.mode == EXACT
        self.eps = eps
        self._used = False

    # numeric helpers -----------------------------------------------------
    def _num(self, v):
        if self.exact:
            return _mpq(v.numerator, v.denominator)
        return float(v)

    def _out(self, v):
        if self.exact:
            return Fraction(int(v.numerator), int(v.denominator))
        return float(v)

    def _pos(self, v) -> bool:
        return v > 0 if self.exact else v > self.eps

    def _nonzero(self, v) -> bool:
        return v != 0 if self.exact else abs(v) > self.eps

    def _log(self, msg: str) -> None:
        if self.trace is not None:
            self.trace.write(msg + "\n")

    # standard form -------------------------------------------------------
    def _standardize(self):
        lp = self.lp
        zero = self._num(Fraction(0))
        one = self._num(Fraction(1))
        cols = []  # (original variable, +1/-1)
        x0 = [zero] * lp.nvars
        box = []  # (std column, width)
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None:
                x0[j] = self._num(lo)
                cols.append((j, 1))
                if hi is not None:
                    box.append((len(cols) - 1, self._num(hi) - self._num(lo)))
            elif hi is not None:
                x0[j] = self._num(hi)
                cols.append((j, -1))
            else:
                cols.append((j, 1))
                cols.append((j, -1))
        ns = len(cols)

        a_rows, rels, b = [], [], []
        for row, rel, rhs in zip(lp.rows, lp.relations, lp.rhs):
            row = [self._num(v) for v in row]
            a_rows.append([row[j] if s == 1 else -row[j] for j, s in cols])
            b.append(self._num(rhs) - sum((r * x for r, x in zip(row, x0)), zero))
            rels.append(rel)
        for col, width in box:
            r = [zero] * ns
            r[col] = one
            a_rows.append(r)
            b.append(width)
            rels.append(LE)
        m = len(a_rows)

        nslack = sum(1 for rel in rels if rel != EQ)
        slack_of = [None] * m
        k = ns
        for i, rel in enumerate(rels):
            if rel != EQ:
                slack_of[i] = k
                k += 1
        sigma = [1] * m
        for i in range(m):
            if b[i] < 0:
                sigma[i] = -1
                b[i] = -b[i]
        # an identity column is available when the slack coefficient is +1 after the flip
        init_cols = [None] * m
        nart = 0
        for i, rel in enumerate(rels):
            sc = {LE: 1, GE: -1, EQ: 0}[rel] * sigma[i]
            if sc == 1:
                init_cols[i] = slack_of[i]
            else:
                init_cols[i] = ns + nslack + nart
                nart += 1
        ncols = ns + nslack + nart
        table = []
        for i in range(m):
            r = [zero] * ncols
            for j in range(ns):
                v = a_rows[i][j]
                r[j] = -v if sigma[i] < 0 else v
            if slack_of[i] is not None:
                sc = one if rels[i] == LE else -one
                r[slack_of[i]] = -sc if sigma[i] < 0 else sc
            r[init_cols[i]] = one
            table.append(r)

        self.cols = cols
        self.x0 = x0
        self.ns = ns
        self.m_orig = lp.nrows
        self.sigma = sigma
        self.init_cols = init_cols
        self.art_start = ns + nslack
        self.ncols = ncols
        self.T = table
        self.beta = b
        self.basis = list(init_cols)
        self.zero, self.one = zero, one

    # core ----------------------------------------------------------------
    def _price(self, cost):
        z = self.zero
        d = list(cost)
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.T[i]
                for j in range(self.ncols):
                    if row[j]:
                        d[j] -= cb * row[j]
                z += cb * self.beta[i]
        self.d = d
        self.z = z

    def _pivot(self, r: int, q: int) -> None:
        T = self.T
        prow = T[r]
        p = prow[q]
        if p != self.one:
            prow = [v / p for v in prow]
            T[r] = prow
            self.beta[r] = self.beta[r] / p
        nz = [j for j in range(self.ncols) if prow[j]]
        br = self.beta[r]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][q]
            if f:
                row = T[i]
                for j in nz:
                    row[j] -= f * prow[j]
                if not self.exact:
                    row[q] = 0.0
                self.beta[i] -= f * br
        dq = self.d[q]
        if dq:
            for j in nz:
                self.d[j] -= dq * prow[j]
            if not self.exact:
                self.d[q] = 0.0
            self.z += dq * br
        self.basis[r] = q

    def _iterate(self, phase: int, allowed: int):
        """Run Bland pivots until optimal; return the unbounded column or None."""
        it = 0
        while True:
            q = next((j for j in range(allowed) if self._pos(self.d[j])), None)
            if q is None:
                return None
            best = None
            for i in range(len(self.T)):
                a = self.T[i][q]
                if self._pos(a):
                    ratio = self.beta[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return q
            r = best[1]
            self._log(
                f"phase {phase} iter {it}: enter {q} leave {self.basis[r]} "
                f"(row {r}) objective {self.z}"
            )
            self._pivot(r, q)
            it += 1

    def _multipliers(self, cost):
        # y_k = c_{init_k} - d_{init_k} since column init_k started as e_k
        return [cost[self.init_cols[k]] - self.d[self.init_cols[k]] for k in range(len(self.init_cols))]

    def _primal(self):
        xs = [self.zero] * self.ncols
        for i, bi in enumerate(self.basis):
            xs[bi] = self.beta[i]
        x = list(self.x0)
        for col, (j, s) in enumerate(self.cols):
            if xs[col]:
                x[j] = x[j] + xs[col] if s == 1 else x[j] - xs[col]
        return x

    def _dump(self, title: str) -> None:
        if self.trace is None:
            return
        self._log(f"-- {title}")
        fmt = (lambda v: format_rational(self._out(v))) if self.exact else (lambda v: f"{v:.6g}")
        for i, row in enumerate(self.T):
            self._log(f"  x{self.basis[i]:<3} | " + " ".join(fmt(v) for v in row) + f" | {fmt(self.beta[i])}")
        self._log("  d    | " + " ".join(fmt(v) for v in self.d) + f" | z={fmt(self.z)}")

    def solve(self) -> LpOutcome:
        if self._used:
            raise RuntimeError("Simplex instances solve exactly one LP")
        self._used = True
        out = self._solve()
        log = _audit.get()
        if log is not None:
            log.append((self.lp, out))
        return out

    def _solve(self) -> LpOutcome:
        lp = self.lp
        self._standardize()
        zero, one = self.zero, self.one

        if self.art_start < self.ncols:
            cost1 = [zero] * self.art_start + [-one] * (self.ncols - self.art_start)
            self._price(cost1)
            self._dump("phase 1 start")
            self._iterate(1, self.ncols)
            self._dump("phase 1 end")
            if (self.z != 0) if self.exact else (self.z < -self.eps):
                f = [-v for v in self._multipliers(cost1)]
                y = tuple(self._out(self.sigma[i] * f[i]) for i in range(self.m_orig))
                self._log("infeasible")
                return LpOutcome(INFEASIBLE, y=y)
            self._drive_out_artificials()

        s = 1 if lp.sense == MAX else -1
        cost2 = [zero] * self.ncols
        for col, (j, sign) in enumerate(self.cols):
            cj = self._num(lp.c[j])
            cost2[col] = cj * sign * s
        self._price(cost2)
        self._dump("phase 2 start")
        q = self._iterate(2, self.art_start)
        self._dump("phase 2 end")
        x = self._primal()
        if q is not None:
            dstd = [zero] * self.ncols
            dstd[q] = one
            for i, bi in enumerate(self.basis):
                dstd[bi] = -self.T[i][q]
            ray = [zero] * lp.nvars
            for col, (j, sign) in enumerate(self.cols):
                if dstd[col]:
                    ray[j] = ray[j] + dstd[col] if sign == 1 else ray[j] - dstd[col]
            self._log("unbounded")
            return LpOutcome(
                UNBOUNDED, x=tuple(self._out(v) for v in x), ray=tuple(self._out(v) for v in ray)
            )
        ystd = self._multipliers(cost2)
        y = tuple(self._out(s * self.sigma[i] * ystd[i]) for i in range(self.m_orig))
        xo = tuple(self._out(v) for v in x)
        value = sum((cj * xj for cj, xj in zip(lp.c, xo)), Fraction(0) if self.exact else 0.0)
        self._log(f"optimal value {value}")
        return LpOutcome(OPTIMAL, x=xo, y=y, value=value)

    def _drive_out_artificials(self) -> None:
        r = 0
        while r < len(self.T):
            if self.basis[r] >= self.art_start:
                row = self.T[r]
                q = next((j for j in range(self.art_start) if self._nonzero(row[j])), None)
                if q is None:
                    # redundant equality: drop the row, its multiplier stays implicit
                    del self.T[r]
                    del self.beta[r]
                    del self.basis[r]
                    continue
                self._pivot(r, q)
            r += 1


@contextlib.contextmanager
def tracing(stream: IO[str]):
    """Send the pivot trace of every solve inside the block to ``stream``."""
    token = _trace.set(stream)
    try:
        yield stream
    finally:
        _trace.reset(token)


def solve(lp: LinearProgram, trace: IO[str] | None = None) -> LpOutcome:
    return Simplex(lp, trace=trace if trace is not None else _trace.get()).solve()


# verification ---------------------------------------------------------------

class _Cmp:
    def __init__(self, exact: bool, tol: float):
        self.exact = exact
        self.tol = tol

    def le(self, a, b) -> bool:
        return a <= b if self.exact else a <= b + self.tol * (1 + abs(b))

    def eq(self, a, b) -> bool:
        return a == b if self.exact else abs(a - b) <= self.tol * (1 + abs(a) + abs(b))

    def lt(self, a, b) -> bool:
        return a < b if self.exact else a < b - self.tol * (1 + abs(b))

    def sign(self, a) -> int:
        if self.exact:
            return (a > 0) - (a < 0)
        if a > self.tol:
            return 1
        if a < -self.tol:
            return -1
        return 0


def _check_mode(lp: LinearProgram, vals) -> None:
    for v in vals:
        if v is not None and scalar_mode(v) != lp.mode:
            raise ModeError("certificate mode does not match LP mode")


def lp_certificate_failure(lp: LinearProgram, out: LpOutcome, tol: float = PIVOT_EPS) -> str | None:
    """Return a description of the first failing certificate identity, or None."""
    for field in (out.x, out.y, out.ray):
        if field is not None:
            _check_mode(lp, field)
    if out.value is not None:
        _check_mode(lp, [out.value])
    cmp = _Cmp(lp.mode == EXACT, tol)
    zero = Fraction(0) if cmp.exact else 0.0
    n, m = lp.nvars, lp.nrows
    s = 1 if lp.sense == MAX else -1

    def rows_ok(x, homogeneous=False):
        for i, (row, rel, b) in enumerate(zip(lp.rows, lp.relations, lp.rhs)):
            ax = sum((a * v for a, v in zip(row, x)), zero)
            rhs = zero if homogeneous else b
            if rel == LE and not cmp.le(ax, rhs):
                return f"row {i}: {ax} <= {rhs} fails"
            if rel == GE and not cmp.le(rhs, ax):
                return f"row {i}: {ax} >= {rhs} fails"
            if rel == EQ and not cmp.eq(ax, rhs):
                return f"row {i}: {ax} = {rhs} fails"
        return None

    def bounds_ok(x):
        for j, (lo, hi) in enumerate(lp.bounds):
            if lo is not None and not cmp.le(lo, x[j]):
                return f"x[{j}] = {x[j]} below lower bound {lo}"
            if hi is not None and not cmp.le(x[j], hi):
                return f"x[{j}] = {x[j]} above upper bound {hi}"
        return None

    def mt_y(y):
        return [sum((lp.rows[i][j] * y[i] for i in range(m)), zero) for j in range(n)]

    if out.status == OPTIMAL:
        if out.x is None or out.y is None or out.value is None or out.ray is not None:
            return "optimal outcome must carry x, y and value only"
        if len(out.x) != n or len(out.y) != m:
            return "certificate dimensions do not match the LP"
        x, y = out.x, out.y
        msg = rows_ok(x) or bounds_ok(x)
        if msg:
            return "primal infeasible: " + msg
        for i, rel in enumerate(lp.relations):
            sy = cmp.sign(s * y[i])
            if rel == LE and sy < 0:
                return f"dual sign wrong on <= row {i}"
            if rel == GE and sy > 0:
                return f"dual sign wrong on >= row {i}"
        w = [cj - a for cj, a in zip(lp.c, mt_y(y))]
        dual = sum((b * yi for b, yi in zip(lp.rhs, y)), zero)
        for j, (lo, hi) in enumerate(lp.bounds):
            sw = cmp.sign(s * w[j])
            if sw < 0:
                if lo is None:
                    return f"reduced cost of x[{j}] needs a finite lower bound"
                dual += w[j] * lo
            elif sw > 0:
                if hi is None:
                    return f"reduced cost of x[{j}] needs a finite upper bound"
                dual += w[j] * hi
        primal = sum((cj * xj for cj, xj in zip(lp.c, x)), zero)
        if not cmp.eq(primal, out.value):
            return f"reported value {out.value} != c^T x = {primal}"
        if not cmp.eq(primal, dual):
            return f"strong duality fails: primal {primal} != dual {dual}"
        for i, (row, b) in enumerate(zip(lp.rows, lp.rhs)):
            slack = sum((a * v for a, v in zip(row, x)), zero) - b
            if not cmp.eq(y[i] * slack, zero):
                return f"complementary slackness fails on row {i}"
        return None

    if out.status == INFEASIBLE:
        if out.y is None or out.x is not None or out.ray is not None or out.value is not None:
            return "infeasible outcome must carry the Farkas vector y only"
        if len(out.y) != m:
            return "Farkas vector has wrong length"
        y = out.y
        for i, rel in enumerate(lp.relations):
            sy = cmp.sign(y[i])
            if rel == GE and sy < 0:
                return f"Farkas multiplier negative on >= row {i}"
            if rel == LE and sy > 0:
                return f"Farkas multiplier positive on <= row {i}"
        a = mt_y(y)
        upper = zero
        for j, (lo, hi) in enumerate(lp.bounds):
            sa = cmp.sign(a[j])
            if sa > 0:
                if hi is None:
                    return f"(M^T y)[{j}] > 0 on a variable without upper bound"
                upper += a[j] * hi
            elif sa < 0:
                if lo is None:
                    return f"(M^T y)[{j}] < 0 on a variable without lower bound"
                upper += a[j] * lo
        yb = sum((b * yi for b, yi in zip(lp.rhs, y)), zero)
        if not cmp.lt(upper, yb):
            return f"Farkas inequality not strict: max (M^T y)^T x = {upper} >= y^T b = {yb}"
        return None

    # unbounded
    if out.x is None or out.ray is None or out.y is not None or out.value is not None:
        return "unbounded outcome must carry x and ray only"
    if len(out.x) != n or len(out.ray) != n:
        return "certificate dimensions do not match the LP"
    msg = rows_ok(out.x) or bounds_ok(out.x)
    if msg:
        return "point infeasible: " + msg
    d = out.ray
    msg = rows_ok(d, homogeneous=True)
    if msg:
        return "ray leaves the feasible set: " + msg
    for j, (lo, hi) in enumerate(lp.bounds):
        if lo is not None and cmp.sign(d[j]) < 0:
            return f"ray decreases x[{j}] below its lower bound"
        if hi is not None and cmp.sign(d[j]) > 0:
            return f"ray increases x[{j}] above its upper bound"
    gain = sum((cj * dj for cj, dj in zip(lp.c, d)), zero)
    if cmp.sign(s * gain) <= 0:
        return "ray does not improve the objective"
    return None


def verify_lp_certificate(lp: LinearProgram, out: LpOutcome, tol: float = PIVOT_EPS) -> bool:
    """True iff every certificate identity holds (exactly, for exact LPs)."""
    return lp_certificate_failure(lp, out, tol) is None
