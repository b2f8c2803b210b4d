"""Maximum margins: analytic 2D cases, then random planted instances by dimension.

For each random instance prints the box-LP value t, the guaranteed floor
t/sqrt(n), the refined margin and the LP upper bound after the cutting rounds.
"""

import argparse
import math
from fractions import Fraction

import numpy as np

from sphsep.cones import ClosedSphericalConvex, RaySet
from sphsep.harness import gen_disjoint_closed
from sphsep.separation import max_margin, separate_closed


def closed(*g):
    return ClosedSphericalConvex.validate(RaySet(tuple(g)))


ANALYTIC = [
    ("antipodal rays", closed((1, 0)), closed((-1, 0)), 1.0),
    ("opposite quadrants", closed((1, 0), (0, 1)), closed((-1, 0), (0, -1)), math.sqrt(2) / 2),
    ("[0,45] vs [135,225]", closed((1, 0), (1, 1)), closed((-1, 1), (-1, -1)), math.sqrt(2) / 2),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-dim", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    print(f"{'instance':<22} {'r_lo':>12} {'expected':>12} {'error':>10}")
    for name, b1, b2, r in ANALYTIC:
        got = max_margin(b1, b2).r_lo
        print(f"{name:<22} {got:12.9f} {r:12.9f} {abs(got - r):10.2e}")

    rng = np.random.default_rng(args.seed)
    print()
    print(f"{'n':>2} {'box t':>9} {'t/sqrt n':>9} {'first sep':>9} {'r_lo':>9} {'r_hi':>9} {'gap':>9}")
    for n in (2, 3, 4, 5):
        gaps = []
        for _ in range(args.per_dim):
            b1, b2 = gen_disjoint_closed(n, int(rng.integers(3, 9)), Fraction(1, 10), int(rng.integers(2**32)))
            mm = max_margin(b1, b2)
            first = separate_closed(b1, b2).min_margin
            gaps.append(mm.r_hi - mm.r_lo)
            print(f"{n:>2} {mm.t_box:9.5f} {mm.t_box / math.sqrt(n):9.5f} {first:9.5f} "
                  f"{mm.r_lo:9.5f} {mm.r_hi:9.5f} {mm.r_hi - mm.r_lo:9.2e}")
        print(f"   n={n}: median gap {np.median(gaps):.2e}, max gap {max(gaps):.2e}")


if __name__ == "__main__":
    main()
