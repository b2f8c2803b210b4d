"""Command-line entry point ``sphsep``.

Exit codes: 0 separated or verified, 1 verification failure (or failing
suite), 2 not separable (witness written), 3 bad input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import lp as _lp
from .arith import EXACT, MODES, format_rational
from .cones import ClosedSphericalConvex
from .errors import CertificateError, MixedInputError, SphSepError
from .formats import (
    GENERATORS,
    Instance,
    LpCertificate,
    certificate_to_json,
    check_certificate,
    dumps,
    instance_to_json,
    load_certificate,
    load_instance,
)
from .harness import (
    PROPERTIES,
    SuiteConfig,
    gen_disjoint_closed,
    gen_intersecting_closed,
    gen_open_pair,
    gen_polytope,
    run_suite,
)
from .render import render_svg
from .separation import Separator, max_margin, separate_closed, separate_open, thickening_radius
from .support import COMPACT, DAlphaQuery, d_alpha_member, openness_radius, sigma

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_WITNESS = 2
EXIT_INPUT = 3

log = logging.getLogger("sphsep")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which collides with "witness"
    def error(self, message):
        raise _Usage(message)


def _setup_logging() -> None:
    level = os.environ.get("SPHSEP_LOG", "WARNING").upper()
    if level.isdigit():
        level = int(level)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


@contextlib.contextmanager
def _maybe_trace(path):
    if not path:
        yield
        return
    with open(path, "w") as fh, _lp.tracing(fh):
        yield


def _two_sides(inst: Instance):
    if len(inst.sides) != 2:
        raise SphSepError(f"instance must define exactly two sides, got {len(inst.sides)}")
    kinds = inst.side_kinds
    if kinds[0] != kinds[1]:
        raise MixedInputError(f"mixed side kinds: {kinds[0]} and {kinds[1]}")
    if kinds[0] == GENERATORS:
        return tuple(ClosedSphericalConvex.validate(s) for s in inst.sides), True
    return inst.sides, False


def cmd_separate(args) -> int:
    inst = load_instance(args.instance, args.mode)
    (s1, s2), closed = _two_sides(inst)
    with _maybe_trace(args.trace_lp):
        res = separate_closed(s1, s2) if closed else separate_open(s1, s2)
    _write(dumps(certificate_to_json(res)), args.out)
    if isinstance(res, Separator):
        print(f"separated: u = ({', '.join(map(_show, res.u))})", file=sys.stderr)
        return EXIT_OK
    print(f"not separable: common point x = ({', '.join(map(_show, res.x))})", file=sys.stderr)
    return EXIT_WITNESS


def cmd_verify(args) -> int:
    cert = load_certificate(args.certificate)
    inst = load_instance(args.instance) if args.instance else Instance(2)
    if not args.instance and not isinstance(cert, LpCertificate):
        raise SphSepError("verify needs an instance file for this certificate kind")
    try:
        check_certificate(cert, inst, args.tolerance)
    except CertificateError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    print("verified", file=sys.stderr)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = load_instance(args.instance)
    cert = load_certificate(args.certificate) if args.certificate else None
    svg = render_svg(inst, cert)
    _write(svg, args.out)
    return EXIT_OK


def cmd_suite(args) -> int:
    dims = tuple(args.dim) if args.dim else SuiteConfig.dims
    cfg = SuiteConfig(dims=dims, trials=args.trials, seed=args.seed, mode=args.mode or EXACT)
    unknown = [p for p in (args.only or []) if p not in PROPERTIES]
    if unknown:
        raise SphSepError(f"unknown properties: {', '.join(unknown)}")
    with _maybe_trace(args.trace_lp):
        report = run_suite(cfg, only=args.only)
    print(report.to_text())
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_json(), indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_gen(args) -> int:
    import numpy as np

    n = args.dim[0] if args.dim else 2
    k = args.k
    if args.kind == "disjoint":
        b1, b2 = gen_disjoint_closed(n, k, Fraction(args.delta), args.seed)
        inst = Instance(n, sides=(b1.rays, b2.rays))
    elif args.kind == "intersecting":
        b1, b2 = gen_intersecting_closed(n, max(k, 2), args.seed)
        inst = Instance(n, sides=(b1.rays, b2.rays))
    elif args.kind in ("open-disjoint", "open-intersecting"):
        p1, p2 = gen_open_pair(n, k, args.seed, args.kind == "open-disjoint")
        inst = Instance(n, sides=(p1, p2))
    else:
        rng = np.random.default_rng(args.seed)
        poly = gen_polytope(rng, n, COMPACT)
        from .harness import lattice_vector

        q = lattice_vector(rng, n)
        inst = Instance(n, polytope=poly, queries=(q,), alpha=sigma(poly, q) + 1)
    _write(dumps(instance_to_json(inst)), args.out)
    return EXIT_OK


def _show(x) -> str:
    return format_rational(x) if isinstance(x, Fraction) else repr(x)


def cmd_support(args) -> int:
    inst = load_instance(args.instance)
    if inst.polytope is None:
        raise SphSepError("instance has no polytope")
    if not inst.queries:
        raise SphSepError("instance has no queries")
    alpha = inst.alpha if args.alpha is None else Fraction(args.alpha)
    rows = []
    for q in inst.queries:
        row = {"xstar": [_show(c) for c in q], "sigma": _show(sigma(inst.polytope, q))}
        if alpha is not None:
            query = DAlphaQuery(q, alpha)
            member = d_alpha_member(inst.polytope, query)
            row.update(alpha=_show(alpha), member=member)
            if member and inst.polytope.kind == COMPACT:
                rad = openness_radius(inst.polytope, query)
                row.update(gamma=_show(rad.gamma), rho=rad.rho)
        rows.append(row)
    _write(json.dumps({"kind": inst.polytope.kind, "queries": rows}, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_margin(args) -> int:
    inst = load_instance(args.instance, args.mode)
    (s1, s2), closed = _two_sides(inst)
    if not closed:
        raise SphSepError("margin needs generator sides")
    with _maybe_trace(args.trace_lp):
        res = separate_closed(s1, s2)
        if not isinstance(res, Separator):
            print("not separable: margin undefined", file=sys.stderr)
            _write(dumps(certificate_to_json(res)), args.out)
            return EXIT_WITNESS
        mm = max_margin(s1, s2)
    report = {
        "u_hat": list(mm.u_hat),
        "margin_lower": mm.r_lo,
        "margin_upper": mm.r_hi,
        "box_value": mm.t_box,
        "rounds": mm.rounds,
        "thickening_radius": thickening_radius(s1, s2),
    }
    _write(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_lp(args) -> int:
    inst = load_instance(args.instance)
    if inst.lp is None:
        raise SphSepError("instance has no lp field")
    with _maybe_trace(args.trace_lp):
        out = _lp.solve(inst.lp)
    _write(dumps(certificate_to_json(LpCertificate(inst.lp, out))), args.out)
    print(out.status, file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sphsep", description="Separation of spherically convex polyhedral sets.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, mode=True, trace=True):
        sp.add_argument("--out", help="output file (default: stdout)")
        if mode:
            sp.add_argument("--mode", choices=MODES, help="override the instance arithmetic mode")
        if trace:
            sp.add_argument("--trace-lp", metavar="FILE", help="write simplex pivots and tableaux to FILE")

    sp = sub.add_parser("separate", help="find a separator or a common-point witness")
    sp.add_argument("instance")
    common(sp)
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("verify", help="re-check a certificate against an instance")
    sp.add_argument("certificate")
    sp.add_argument("instance", nargs="?")
    sp.add_argument("--tolerance", type=float, default=1e-9, help="float-mode comparison tolerance")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("render", help="draw a 2D or 3D instance as SVG")
    sp.add_argument("instance")
    sp.add_argument("certificate", nargs="?")
    sp.add_argument("--out", help="SVG file (default: stdout)")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("suite", help="run the property suite")
    common(sp)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--dim", type=int, action="append", help="dimension to sample (repeatable)")
    sp.add_argument("--only", action="append", help="property name to run (repeatable)")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("gen", help="write a generated instance")
    sp.add_argument(
        "--kind",
        choices=("disjoint", "intersecting", "open-disjoint", "open-intersecting", "polytope"),
        default="disjoint",
    )
    sp.add_argument("--dim", type=int, action="append")
    sp.add_argument("--k", type=int, default=4, help="generators (or rows) per side")
    sp.add_argument("--delta", default="1/10", help="planting margin")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("support", help="support function and D_alpha queries")
    sp.add_argument("instance")
    sp.add_argument("--alpha", help="override the instance alpha")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("margin", help="maximum margin and thickening radius")
    sp.add_argument("instance")
    common(sp)
    sp.set_defaults(func=cmd_margin)

    sp = sub.add_parser("lp", help="solve the lp field of an instance and write its certificate")
    sp.add_argument("instance")
    common(sp, mode=False)
    sp.set_defaults(func=cmd_lp)
    return p


def main(argv=None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except _Usage as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (SphSepError, ValueError, TypeError, OSError) as e:
        log.debug("input error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
