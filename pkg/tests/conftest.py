"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's own LP path: HiGHS (via
scipy) for LP optimal values, and a brute-force angle grid for 2D margins.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from sphsep import lp as L
from sphsep.cones import ClosedSphericalConvex, OpenConeH, RaySet


def closed(*gens):
    return ClosedSphericalConvex.validate(RaySet(tuple(gens)))


def hcone(*rows):
    return OpenConeH(tuple(rows))


@pytest.fixture
def antipodal():
    return closed((1, 0)), closed((-1, 0))


@pytest.fixture
def quadrants():
    return closed((1, 0), (0, 1)), closed((-1, 0), (0, -1))


@pytest.fixture
def angled():
    return closed((1, 0), (1, 1)), closed((-1, 1), (-1, -1))


@pytest.fixture
def nested():
    return closed((1, 0), (0, 1)), closed((1, 1), (2, 1))


def grid_margin_2d(gens1, gens2, step=1e-4):
    """Max over unit u of the smaller side margin, by angle scan plus ternary refinement."""
    g1 = np.array([np.array(g, float) / np.linalg.norm(np.array(g, float)) for g in gens1])
    g2 = np.array([np.array(h, float) / np.linalg.norm(np.array(h, float)) for h in gens2])

    def f(t):
        u = np.array([math.cos(t), math.sin(t)])
        return min((g1 @ u).min(), (-(g2 @ u)).min())

    ts = np.arange(0.0, 2 * math.pi, step)
    us = np.stack([np.cos(ts), np.sin(ts)])
    vals = np.minimum((g1 @ us).min(axis=0), (-(g2 @ us)).min(axis=0))
    i = int(np.argmax(vals))
    lo, hi = ts[i] - step, ts[i] + step
    for _ in range(200):
        a, b = lo + (hi - lo) / 3, hi - (hi - lo) / 3
        if f(a) < f(b):
            lo = a
        else:
            hi = b
    t = (lo + hi) / 2
    return f(t), (math.cos(t), math.sin(t))


def highs_value(prob: L.LinearProgram):
    """(status, value) from scipy's HiGHS; status in {'optimal', 'other'}."""
    from scipy.optimize import linprog

    c = np.array([float(v) for v in prob.c])
    if prob.sense == L.MAX:
        c = -c
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row, rel, b in zip(prob.rows, prob.relations, prob.rhs):
        r = [float(v) for v in row]
        if rel == L.LE:
            a_ub.append(r)
            b_ub.append(float(b))
        elif rel == L.GE:
            a_ub.append([-v for v in r])
            b_ub.append(-float(b))
        else:
            a_eq.append(r)
            b_eq.append(float(b))
    bounds = [(None if lo is None else float(lo), None if hi is None else float(hi)) for lo, hi in prob.bounds]
    res = linprog(
        c,
        A_ub=a_ub or None,
        b_ub=b_ub or None,
        A_eq=a_eq or None,
        b_eq=b_eq or None,
        bounds=bounds,
        method="highs",
    )
    if res.status == 0:
        v = res.fun
        return "optimal", (-v if prob.sense == L.MAX else v)
    return "other", None


def frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)


def dual_objective(prob: L.LinearProgram, out: L.LpOutcome, tol: float = 1e-9):
    """Dual objective recomputed from ``y``: ``y^T b`` plus the bound payments of ``c - M^T y``.

    Float reduced costs below ``tol`` count as zero; exact ones are compared exactly.
    """
    s = 1 if prob.sense == L.MAX else -1
    if prob.mode == "exact":
        tol = 0
    w = [cj - sum(row[j] * yi for row, yi in zip(prob.rows, out.y)) for j, cj in enumerate(prob.c)]
    total = sum((yi * bi for yi, bi in zip(out.y, prob.rhs)), 0 * prob.c[0])
    for wj, (lo, hi) in zip(w, prob.bounds):
        if s * wj > tol:
            total += wj * hi
        elif s * wj < -tol:
            total += wj * lo
    return total


# acceptance lines are collected here and echoed after the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
