"""Relative-interior membership of the origin and separating vectors."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from ..logging_config import get_logger
from .linalg import Vector, dot, affine_hull, project_to_span, solve, span_basis
from .simplex import LinearProgram, Relation, lp_solve

logger = get_logger(__name__)


class GeometryError(ValueError):
    """Raised when a geometric precondition does not hold."""


def normalize(h: Vector) -> Vector:
    """Scale by a positive factor so the first nonzero coordinate is +1 or -1."""
    lead = next((v for v in h if v != 0), None)
    if lead is None:
        return h
    return tuple(v / abs(lead) for v in h)


def combine(coefficients: Sequence[Fraction], basis: Sequence[Vector], dim: int) -> Vector:
    return tuple(
        sum((c * b[i] for c, b in zip(coefficients, basis)), Fraction(0))
        for i in range(dim)
    )


def ri_certificate(points: Sequence[Vector]) -> Optional[tuple[Fraction, ...]]:
    """Strictly positive convex weights expressing 0 from ``points``, if any.

    The weights exist iff 0 lies in the relative interior of Conv(points);
    they are found by maximizing eps subject to sum l_i y_i = 0,
    sum l_i = 1 and l_i >= eps.
    """
    points = [tuple(p) for p in points]
    if not points:
        raise GeometryError("relative interior of an empty set")
    if not affine_hull(points).is_linear():
        return None

    n, dim = len(points), len(points[0])
    # variables: l_1..l_n, eps
    objective = tuple([Fraction(0)] * n + [Fraction(1)])
    lp = LinearProgram(objective, bounds=[(Fraction(0), None)] * n + [(None, None)])
    for k in range(dim):
        lp.add([y[k] for y in points] + [Fraction(0)], Relation.EQ, Fraction(0))
    lp.add([Fraction(1)] * n + [Fraction(0)], Relation.EQ, Fraction(1))
    for i in range(n):
        row = [Fraction(0)] * (n + 1)
        row[i] = Fraction(1)
        row[n] = Fraction(-1)
        lp.add(row, Relation.GE, Fraction(0))
    result = lp_solve(lp)
    if not result.is_optimal or result.value <= 0:
        logger.debug(f"0 not in Ri(Conv) of {len(points)} points: LP {result.status.value}, eps={result.value}")
        return None
    return result.solution[:n]


def ri_conv_contains_zero(points: Sequence[Vector]) -> bool:
    """True iff 0 is in the relative interior of Conv(points)."""
    return ri_certificate(points) is not None


def separating_vector(points: Sequence[Vector]) -> Vector:
    """Nonzero h in span(points) with h.y >= 0 on all points.

    When 0 lies in Aff(points), h.y > 0 for at least one point; otherwise
    h.y = 1 for every point. Raises GeometryError if 0 is in the relative
    interior of Conv(points).
    """
    points = [tuple(p) for p in points]
    if not points:
        raise GeometryError("separating vector of an empty set")
    dim = len(points[0])
    basis = span_basis(points)
    if not basis:
        raise GeometryError("all points are 0: 0 is in the relative interior")

    if not affine_hull(points).is_linear():
        # a functional equal to 1 on Aff(points) exists since 0 is not in it
        h = solve(points, [Fraction(1)] * len(points))
        if h is None:
            raise GeometryError("no functional equal to 1 on the affine hull")
        return normalize(project_to_span(h, points))

    k = len(basis)
    products = [[dot(b, y) for b in basis] for y in points]
    objective = tuple(sum((row[j] for row in products), Fraction(0)) for j in range(k))
    lp = LinearProgram(objective, bounds=[(Fraction(-1), Fraction(1))] * k)
    for row in products:
        lp.add(row, Relation.GE, Fraction(0))
    result = lp_solve(lp)
    if not result.is_optimal or result.value <= 0:
        raise GeometryError("0 is in the relative interior of the convex hull")
    return normalize(combine(result.solution, basis, dim))
