"""Exact rational linear algebra: elimination, rank, spans and affine hulls."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Vector = tuple[Fraction, ...]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def zeros(dim: int) -> Vector:
    return tuple(Fraction(0) for _ in range(dim))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    a = [[Fraction(v) for v in row] for row in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    y = 0
    for x in range(n):
        if y == m:
            break
        pivot_row = next((r for r in range(y, m) if a[r][x] != 0), None)
        if pivot_row is None:
            continue
        a[y], a[pivot_row] = a[pivot_row], a[y]
        pivot_value = a[y][x]
        a[y] = [v / pivot_value for v in a[y]]
        for r in range(m):
            if r != y and a[r][x] != 0:
                factor = a[r][x]
                a[r] = [v - factor * w for v, w in zip(a[r], a[y])]
        pivots.append(x)
        y += 1
    return a, pivots


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    return len(rref(vectors)[1])


def independent_subset(vectors: Sequence[Vector]) -> list[Vector]:
    """Greedy maximal linearly independent subset, preserving input order."""
    chosen: list[Vector] = []
    for v in vectors:
        if rank(chosen + [v]) > len(chosen):
            chosen.append(tuple(v))
    return chosen


def in_span(basis: Sequence[Vector], x: Vector) -> bool:
    if all(v == 0 for v in x):
        return True
    if not basis:
        return False
    return rank(list(basis) + [x]) == rank(basis)


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Vector]:
    """One solution of ``matrix @ c = rhs`` (free variables set to 0), or None."""
    if not matrix:
        return None if any(r != 0 for r in rhs) else ()
    n = len(matrix[0])
    augmented = [list(row) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented)
    if n in pivots:
        return None
    solution = [Fraction(0)] * n
    for row, col in zip(reduced, pivots):
        solution[col] = row[n]
    return tuple(solution)


def null_space(vectors: Sequence[Vector], dim: int) -> list[Vector]:
    """Basis of {h : h.y = 0 for every y in ``vectors``}."""
    rows = [list(v) for v in vectors if any(c != 0 for c in v)]
    if not rows:
        return [tuple(Fraction(1) if i == j else Fraction(0) for i in range(dim)) for j in range(dim)]
    reduced, pivots = rref(rows)
    free = [j for j in range(dim) if j not in pivots]
    basis = []
    for f in free:
        h = [Fraction(0)] * dim
        h[f] = Fraction(1)
        for row, col in zip(reduced, pivots):
            h[col] = -row[f]
        basis.append(tuple(h))
    return basis


def project_to_span(h: Vector, vectors: Sequence[Vector]) -> Vector:
    """Orthogonal projection of ``h`` onto span(``vectors``), exact."""
    basis = independent_subset([tuple(v) for v in vectors if any(c != 0 for c in v)])
    if not basis:
        return zeros(len(h))
    gram = [[dot(b, c) for c in basis] for b in basis]
    coefficients = solve(gram, [dot(b, h) for b in basis])
    # the Gram matrix of an independent family is invertible
    assert coefficients is not None
    return tuple(
        sum((c * b[i] for c, b in zip(coefficients, basis)), Fraction(0))
        for i in range(len(h))
    )


@dataclass(frozen=True)
class AffineSubspace:
    """base_point + span(basis), with a linearly independent basis."""

    base_point: Vector
    basis: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base_point)

    def contains(self, x: Vector) -> bool:
        return in_span(self.basis, _sub(x, self.base_point))

    def is_linear(self) -> bool:
        return self.contains(zeros(self.ambient_dim))


def affine_hull(points: Sequence[Vector]) -> AffineSubspace:
    """Smallest affine set containing ``points`` (nonempty)."""
    if not points:
        raise ValueError("affine hull of an empty point set")
    base = tuple(Fraction(v) for v in points[0])
    differences = [_sub(p, base) for p in points[1:]]
    basis = independent_subset([d for d in differences if any(c != 0 for c in d)])
    return AffineSubspace(base_point=base, basis=tuple(basis))


def aff_contains(aff: AffineSubspace, x: Vector) -> bool:
    return aff.contains(x)


def aff_equal(a: AffineSubspace, b: AffineSubspace) -> bool:
    """Mutual containment of the generating points of two affine subspaces."""
    if a.dim != b.dim or not b.contains(a.base_point):
        return False
    return all(b.contains(tuple(p + v for p, v in zip(a.base_point, direction))) for direction in a.basis)


def span_basis(points: Sequence[Vector]) -> list[Vector]:
    """Independent subset of ``points`` spanning their linear span."""
    return independent_subset([tuple(p) for p in points if any(c != 0 for c in p)])
