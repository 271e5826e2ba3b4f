"""Convex geometry - exact affine hulls, relative interiors and LP."""

from .linalg import (
    AffineSubspace,
    aff_contains,
    aff_equal,
    affine_hull,
    in_span,
    null_space,
    project_to_span,
    rank,
    span_basis,
)
from .simplex import Constraint, LinearProgram, LPResult, LPStatus, Relation, lp_solve
from .convex import GeometryError, normalize, ri_certificate, ri_conv_contains_zero, separating_vector

__all__ = [
    "AffineSubspace",
    "aff_contains",
    "aff_equal",
    "affine_hull",
    "in_span",
    "null_space",
    "project_to_span",
    "rank",
    "span_basis",
    "Constraint",
    "LinearProgram",
    "LPResult",
    "LPStatus",
    "Relation",
    "lp_solve",
    "GeometryError",
    "normalize",
    "ri_certificate",
    "ri_conv_contains_zero",
    "separating_vector",
]
