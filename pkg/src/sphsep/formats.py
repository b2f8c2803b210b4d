"""JSON instance and certificate files.

Exact scalars are written as strings ``"p"`` or ``"p/q"``; float scalars as
JSON numbers. Parsing errors carry the JSON path of the offending field
(``sides[1].vectors[0][2]: ...``) or the line/column of a syntax error.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from . import lp as _lp
from .arith import EXACT, FLOAT, MODES, Vector, format_rational, parse_rational
from .cones import OpenConeH, RaySet
from .errors import CertificateError, FormatError, SphSepError
from .separation import CLOSED, OPEN, CommonRayWitness, OpenIntersectionWitness, Separator
from .support import KINDS, Polytope

GENERATORS = "generators"
HALFSPACES = "halfspaces"

CERT_SEPARATOR = "separator"
CERT_COMMON_RAY = "common-ray"
CERT_OPEN_INTERSECTION = "open-intersection"
CERT_LP = "lp"
CERT_KINDS = (CERT_SEPARATOR, CERT_COMMON_RAY, CERT_OPEN_INTERSECTION, CERT_LP)


@dataclass(frozen=True)
class Instance:
    dimension: int
    mode: str = EXACT
    sides: tuple = ()
    polytope: Optional[Polytope] = None
    queries: tuple = ()
    alpha: Optional[Fraction] = None
    lp: Optional[_lp.LinearProgram] = None

    @property
    def side_kinds(self) -> tuple:
        return tuple(GENERATORS if isinstance(s, RaySet) else HALFSPACES for s in self.sides)


@dataclass(frozen=True)
class LpCertificate:
    lp: _lp.LinearProgram
    outcome: _lp.LpOutcome


Certificate = Union[Separator, CommonRayWitness, OpenIntersectionWitness, LpCertificate]


# scalar codecs -----------------------------------------------------------------

def enc(x) -> Any:
    if x is None:
        return None
    if isinstance(x, float):
        return x
    return format_rational(x)


def enc_vec(v) -> Optional[list]:
    return None if v is None else [enc(c) for c in v]


def _dec_exact(obj, path: str) -> Fraction:
    if isinstance(obj, bool):
        raise FormatError(f"{path}: expected a rational string, got a boolean")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return parse_rational(obj)
        except ValueError as e:
            raise FormatError(f"{path}: {e}") from None
    raise FormatError(f"{path}: expected a rational string like \"p/q\", got {obj!r}")


def _dec_float(obj, path: str) -> float:
    if isinstance(obj, bool):
        raise FormatError(f"{path}: expected a number, got a boolean")
    if isinstance(obj, (int, float)):
        v = float(obj)
    elif isinstance(obj, str):
        try:
            v = float(parse_rational(obj)) if "/" in obj else float(obj)
        except ValueError as e:
            raise FormatError(f"{path}: {e}") from None
    else:
        raise FormatError(f"{path}: expected a number, got {obj!r}")
    if not math.isfinite(v):
        raise FormatError(f"{path}: non-finite value")
    return v


def dec(obj, mode: str, path: str):
    return _dec_exact(obj, path) if mode == EXACT else _dec_float(obj, path)


def _list(obj, path: str) -> list:
    if not isinstance(obj, list):
        raise FormatError(f"{path}: expected a list")
    return obj


def dec_vec(obj, mode: str, path: str, dim: Optional[int] = None) -> Vector:
    items = _list(obj, path)
    if dim is not None and len(items) != dim:
        raise FormatError(f"{path}: expected {dim} coordinates, got {len(items)}")
    if len(items) < 2:
        raise FormatError(f"{path}: vectors need dimension n >= 2")
    return Vector([dec(c, mode, f"{path}[{i}]") for i, c in enumerate(items)], mode)


def dec_scalars(obj, mode: str, path: str) -> tuple:
    return tuple(dec(c, mode, f"{path}[{i}]") for i, c in enumerate(_list(obj, path)))


def _req(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{path or '<root>'}: expected an object")
    if key not in obj:
        raise FormatError(f"{path + '.' if path else ''}{key}: missing field")
    return obj[key]


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


# LP ------------------------------------------------------------------------------

def lp_to_json(prob: _lp.LinearProgram) -> dict:
    return {
        "sense": prob.sense,
        "mode": prob.mode,
        "c": enc_vec(prob.c),
        "rows": [enc_vec(r) for r in prob.rows],
        "relations": list(prob.relations),
        "rhs": enc_vec(prob.rhs),
        "bounds": [[enc(lo), enc(hi)] for lo, hi in prob.bounds],
    }


def lp_from_json(obj: dict, path: str = "lp") -> _lp.LinearProgram:
    mode = obj.get("mode", EXACT) if isinstance(obj, dict) else EXACT
    if mode not in MODES:
        raise FormatError(f"{path}.mode: unknown mode {mode!r}")
    c = dec_scalars(_req(obj, "c", path), mode, f"{path}.c")
    rows = tuple(
        dec_scalars(r, mode, f"{path}.rows[{i}]") for i, r in enumerate(_list(obj.get("rows", []), f"{path}.rows"))
    )
    rels = tuple(_list(obj.get("relations", []), f"{path}.relations"))
    rhs = dec_scalars(obj.get("rhs", []), mode, f"{path}.rhs")
    raw_bounds = obj.get("bounds")
    if raw_bounds is None:
        bounds = tuple((dec(0, mode, ""), None) for _ in c)
    else:
        bounds = []
        for j, b in enumerate(_list(raw_bounds, f"{path}.bounds")):
            b = _list(b, f"{path}.bounds[{j}]")
            if len(b) != 2:
                raise FormatError(f"{path}.bounds[{j}]: expected [lo, hi]")
            bounds.append(
                tuple(None if v is None else dec(v, mode, f"{path}.bounds[{j}][{t}]") for t, v in enumerate(b))
            )
        bounds = tuple(bounds)
    try:
        return _lp.LinearProgram(c, rows, rels, rhs, bounds, obj.get("sense", _lp.MAX))
    except SphSepError as e:
        raise FormatError(f"{path}: {e}") from None


def outcome_to_json(out: _lp.LpOutcome) -> dict:
    return {
        "status": out.status,
        "x": enc_vec(out.x),
        "y": enc_vec(out.y),
        "value": enc(out.value),
        "ray": enc_vec(out.ray),
    }


def outcome_from_json(obj: dict, mode: str, path: str = "outcome") -> _lp.LpOutcome:
    status = _req(obj, "status", path)
    if status not in _lp.STATUSES:
        raise FormatError(f"{path}.status: unknown status {status!r}")

    def opt(key):
        v = obj.get(key)
        return None if v is None else dec_scalars(v, mode, f"{path}.{key}")

    value = obj.get("value")
    return _lp.LpOutcome(
        status,
        x=opt("x"),
        y=opt("y"),
        value=None if value is None else dec(value, mode, f"{path}.value"),
        ray=opt("ray"),
    )


# instances -------------------------------------------------------------------

def instance_to_json(inst: Instance) -> dict:
    out: dict = {"dimension": inst.dimension, "mode": inst.mode}
    if inst.sides:
        sides = []
        for s in inst.sides:
            if isinstance(s, RaySet):
                sides.append({"kind": GENERATORS, "vectors": [enc_vec(g) for g in s.generators]})
            else:
                sides.append({"kind": HALFSPACES, "rows": [enc_vec(r) for r in s.rows]})
        out["sides"] = sides
    if inst.polytope is not None:
        out["polytope"] = {"kind": inst.polytope.kind, "vertices": [enc_vec(v) for v in inst.polytope.vertices]}
    if inst.queries:
        out["queries"] = [enc_vec(q) for q in inst.queries]
    if inst.alpha is not None:
        out["alpha"] = enc(inst.alpha)
    if inst.lp is not None:
        out["lp"] = lp_to_json(inst.lp)
    return out


def instance_from_json(obj, mode_override: Optional[str] = None) -> Instance:
    if not isinstance(obj, dict):
        raise FormatError("<root>: expected an object")
    dim = _req(obj, "dimension", "")
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise FormatError("dimension: expected an integer")
    if dim < 2:
        raise FormatError(f"dimension: n must be >= 2, got {dim}")
    mode = mode_override or obj.get("mode", EXACT)
    if mode not in MODES:
        raise FormatError(f"mode: unknown mode {mode!r}")

    sides = []
    for i, s in enumerate(_list(obj.get("sides", []), "sides")):
        path = f"sides[{i}]"
        kind = _req(s, "kind", path)
        try:
            if kind == GENERATORS:
                vecs = _list(_req(s, "vectors", path), f"{path}.vectors")
                if not vecs:
                    raise FormatError(f"{path}.vectors: at least one generator required")
                sides.append(
                    RaySet(tuple(dec_vec(v, mode, f"{path}.vectors[{j}]", dim) for j, v in enumerate(vecs)))
                )
            elif kind == HALFSPACES:
                rows = _list(_req(s, "rows", path), f"{path}.rows")
                if not rows:
                    raise FormatError(f"{path}.rows: at least one row required")
                sides.append(OpenConeH(tuple(dec_vec(v, mode, f"{path}.rows[{j}]", dim) for j, v in enumerate(rows))))
            else:
                raise FormatError(f"{path}.kind: expected 'generators' or 'halfspaces', got {kind!r}")
        except FormatError:
            raise
        except SphSepError as e:
            raise FormatError(f"{path}: {e}") from None

    polytope = None
    if "polytope" in obj:
        pobj = obj["polytope"]
        kind = _req(pobj, "kind", "polytope")
        if kind not in KINDS:
            raise FormatError(f"polytope.kind: expected one of {KINDS}, got {kind!r}")
        verts = _list(_req(pobj, "vertices", "polytope"), "polytope.vertices")
        if not verts:
            raise FormatError("polytope.vertices: at least one vertex required")
        try:
            polytope = Polytope(
                tuple(dec_vec(v, EXACT, f"polytope.vertices[{j}]", dim) for j, v in enumerate(verts)), kind
            )
        except SphSepError as e:
            raise FormatError(f"polytope: {e}") from None

    queries = tuple(
        dec_vec(q, EXACT if polytope is not None else mode, f"queries[{j}]", dim)
        for j, q in enumerate(_list(obj.get("queries", []), "queries"))
    )
    alpha = None if obj.get("alpha") is None else _dec_exact(obj["alpha"], "alpha")
    prob = None if obj.get("lp") is None else lp_from_json(obj["lp"])
    return Instance(dim, mode, tuple(sides), polytope, queries, alpha, prob)


def parse_instance(text: str, mode_override: Optional[str] = None) -> Instance:
    return instance_from_json(_load_json(text), mode_override)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def load_instance(path, mode_override: Optional[str] = None) -> Instance:
    return parse_instance(Path(path).read_text(), mode_override)


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(instance_to_json(inst)))


# certificates ----------------------------------------------------------------

def certificate_kind(cert: Certificate) -> str:
    if isinstance(cert, Separator):
        return CERT_SEPARATOR
    if isinstance(cert, CommonRayWitness):
        return CERT_COMMON_RAY
    if isinstance(cert, OpenIntersectionWitness):
        return CERT_OPEN_INTERSECTION
    if isinstance(cert, LpCertificate):
        return CERT_LP
    raise TypeError(f"not a certificate: {type(cert).__name__}")


def certificate_to_json(cert: Certificate) -> dict:
    kind = certificate_kind(cert)
    if kind == CERT_SEPARATOR:
        payload = {
            "case": cert.case,
            "mode": cert.u.mode,
            "u": enc_vec(cert.u),
            "u_hat": list(cert.u_hat),
            "side1_margin": cert.side1_margin,
            "side2_margin": cert.side2_margin,
            "side1_dots": enc_vec(cert.side1_dots),
            "side2_dots": enc_vec(cert.side2_dots),
            "lam": enc_vec(cert.lam),
            "mu": enc_vec(cert.mu),
        }
    elif kind == CERT_COMMON_RAY:
        payload = {"mode": cert.x.mode, "lam": enc_vec(cert.lam), "mu": enc_vec(cert.mu), "x": enc_vec(cert.x)}
    elif kind == CERT_OPEN_INTERSECTION:
        payload = {"mode": cert.x.mode, "x": enc_vec(cert.x)}
    else:
        payload = {"lp": lp_to_json(cert.lp), "outcome": outcome_to_json(cert.outcome)}
    return {"kind": kind, "payload": payload}


def certificate_from_json(obj) -> Certificate:
    kind = _req(obj, "kind", "")
    if kind not in CERT_KINDS:
        raise FormatError(f"kind: expected one of {CERT_KINDS}, got {kind!r}")
    p = _req(obj, "payload", "")
    path = "payload"
    if kind == CERT_LP:
        prob = lp_from_json(_req(p, "lp", path), f"{path}.lp")
        return LpCertificate(prob, outcome_from_json(_req(p, "outcome", path), prob.mode, f"{path}.outcome"))
    mode = p.get("mode", EXACT) if isinstance(p, dict) else EXACT
    if mode not in MODES:
        raise FormatError(f"{path}.mode: unknown mode {mode!r}")

    def opt_scalars(key):
        v = p.get(key)
        return None if v is None else dec_scalars(v, mode, f"{path}.{key}")

    def opt_float(key):
        v = p.get(key)
        return None if v is None else _dec_float(v, f"{path}.{key}")

    try:
        if kind == CERT_SEPARATOR:
            case = _req(p, "case", path)
            if case not in (CLOSED, OPEN):
                raise FormatError(f"{path}.case: expected 'closed' or 'open', got {case!r}")
            return Separator(
                case,
                dec_vec(_req(p, "u", path), mode, f"{path}.u"),
                dec_vec(_req(p, "u_hat", path), FLOAT, f"{path}.u_hat"),
                side1_margin=opt_float("side1_margin"),
                side2_margin=opt_float("side2_margin"),
                side1_dots=opt_scalars("side1_dots"),
                side2_dots=opt_scalars("side2_dots"),
                lam=opt_scalars("lam"),
                mu=opt_scalars("mu"),
            )
        if kind == CERT_COMMON_RAY:
            return CommonRayWitness(
                dec_scalars(_req(p, "lam", path), mode, f"{path}.lam"),
                dec_scalars(_req(p, "mu", path), mode, f"{path}.mu"),
                dec_vec(_req(p, "x", path), mode, f"{path}.x"),
            )
        return OpenIntersectionWitness(dec_vec(_req(p, "x", path), mode, f"{path}.x"))
    except FormatError:
        raise
    except SphSepError as e:
        raise FormatError(f"{path}: {e}") from None


def parse_certificate(text: str) -> Certificate:
    return certificate_from_json(_load_json(text))


def load_certificate(path) -> Certificate:
    return parse_certificate(Path(path).read_text())


def save_certificate(cert: Certificate, path) -> None:
    Path(path).write_text(dumps(certificate_to_json(cert)))


def check_certificate(cert: Certificate, inst: Instance, tol: float = 1e-9) -> None:
    """Re-check a certificate against an instance from scratch.

    Raises CertificateError naming the first identity that fails.
    """
    from .separation import (
        check_closed_separator,
        check_common_ray,
        check_open_intersection,
        check_open_separator,
    )

    if isinstance(cert, LpCertificate):
        if inst.lp is not None and inst.lp != cert.lp:
            raise CertificateError("certificate LP differs from the instance LP")
        try:
            msg = _lp.lp_certificate_failure(cert.lp, cert.outcome, tol)
        except SphSepError as e:
            raise CertificateError(str(e)) from None
        if msg:
            raise CertificateError(msg)
        return
    if len(inst.sides) != 2:
        raise CertificateError("instance must define exactly two sides")
    s1, s2 = inst.sides
    kinds = inst.side_kinds
    if kinds[0] != kinds[1]:
        raise CertificateError("instance mixes generator and halfspace sides")
    closed = kinds[0] == GENERATORS
    try:
        if isinstance(cert, Separator):
            if closed:
                check_closed_separator(s1, s2, cert, tol)
            else:
                check_open_separator(s1, s2, cert, tol)
        elif isinstance(cert, CommonRayWitness):
            if not closed:
                raise CertificateError("common-ray certificate needs generator sides")
            check_common_ray(s1, s2, cert, tol)
        elif isinstance(cert, OpenIntersectionWitness):
            if closed:
                raise CertificateError("open-intersection certificate needs halfspace sides")
            check_open_intersection(s1, s2, cert, tol)
        else:
            raise CertificateError(f"unsupported certificate {type(cert).__name__}")
    except CertificateError:
        raise
    except SphSepError as e:
        # dimension/mode problems count as a failed identity
        raise CertificateError(str(e)) from None
