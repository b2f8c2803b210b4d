"""Strict separation of spherically convex polyhedral sets, with exact certificates."""

from .arith import EXACT, FLOAT, Vector, dot, norm, normalize, parse_rational
from .cones import (
    ClosedSphericalConvex,
    OpenConeH,
    RaySet,
    cone_member,
    is_pointed,
    open_cone_nonempty,
    sphere_sample,
)
from .errors import (
    CertificateError,
    DimensionError,
    EmptyConeError,
    MixedInputError,
    ModeError,
    NotInDAlphaError,
    NotSeparableError,
    NotSphericallyConvexError,
    SphSepError,
    ZeroVectorError,
)
from .formats import Instance, check_certificate, load_certificate, load_instance
from .lp import LinearProgram, LpOutcome, solve, verify_lp_certificate
from .separation import (
    CommonRayWitness,
    OpenIntersectionWitness,
    Separator,
    e_cone_member_open,
    e_member_closed,
    max_margin,
    separate_closed,
    separate_open,
    thickened_disjoint,
    thickening_radius,
)
from .support import DAlphaQuery, Polytope, conv_member_dual, d_alpha_member, openness_radius, sigma

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "ClosedSphericalConvex",
    "CommonRayWitness",
    "DAlphaQuery",
    "DimensionError",
    "EXACT",
    "EmptyConeError",
    "FLOAT",
    "Instance",
    "LinearProgram",
    "LpOutcome",
    "MixedInputError",
    "ModeError",
    "NotInDAlphaError",
    "NotSeparableError",
    "NotSphericallyConvexError",
    "OpenConeH",
    "OpenIntersectionWitness",
    "Polytope",
    "RaySet",
    "Separator",
    "SphSepError",
    "Vector",
    "ZeroVectorError",
    "check_certificate",
    "cone_member",
    "conv_member_dual",
    "d_alpha_member",
    "dot",
    "e_cone_member_open",
    "e_member_closed",
    "is_pointed",
    "load_certificate",
    "load_instance",
    "max_margin",
    "norm",
    "normalize",
    "open_cone_nonempty",
    "openness_radius",
    "parse_rational",
    "separate_closed",
    "separate_open",
    "sigma",
    "solve",
    "sphere_sample",
    "thickened_disjoint",
    "thickening_radius",
    "verify_lp_certificate",
]
