"""Write SVG pictures of the small hand-made instances and a few generated ones."""

import argparse
from fractions import Fraction
from pathlib import Path

from sphsep.cones import ClosedSphericalConvex, OpenConeH, RaySet
from sphsep.formats import Instance
from sphsep.harness import gen_disjoint_closed, gen_intersecting_closed
from sphsep.render import render_svg
from sphsep.separation import separate_closed, separate_open


def closed(*g):
    return ClosedSphericalConvex.validate(RaySet(tuple(g)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results/svg")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    pairs = {
        "antipodal": (closed((1, 0)), closed((-1, 0))),
        "quadrants": (closed((1, 0), (0, 1)), closed((-1, 0), (0, -1))),
        "angled": (closed((1, 0), (1, 1)), closed((-1, 1), (-1, -1))),
        "nested": (closed((1, 0), (0, 1)), closed((1, 1), (2, 1))),
        "random3d_disjoint": gen_disjoint_closed(3, 5, Fraction(1, 10), 1),
        "random3d_intersecting": gen_intersecting_closed(3, 5, 1),
    }
    for name, (b1, b2) in pairs.items():
        inst = Instance(b1.dim, sides=(b1.rays, b2.rays))
        (out / f"{name}.svg").write_text(render_svg(inst, separate_closed(b1, b2)))
        print(out / f"{name}.svg")

    p1, p2 = OpenConeH(((1, 0), (0, 1))), OpenConeH(((1, 0), (0, -1)))
    (out / "open_quadrant_halfplane.svg").write_text(render_svg(Instance(2, sides=(p1, p2)), separate_open(p1, p2)))
    print(out / "open_quadrant_halfplane.svg")


if __name__ == "__main__":
    main()
