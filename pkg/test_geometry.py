"""Exact affine hulls, relative interiors and separating vectors."""

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import vec
from qsna.geometry import (
    GeometryError,
    aff_contains,
    aff_equal,
    affine_hull,
    null_space,
    project_to_span,
    rank,
    ri_certificate,
    ri_conv_contains_zero,
    separating_vector,
)
from qsna.geometry.linalg import dot

small = st.integers(min_value=-3, max_value=3).map(Fraction)


def point_sets(dim):
    return st.lists(st.tuples(*[small] * dim), min_size=1, max_size=5)


def test_affine_hull_of_origin():
    aff = affine_hull([vec(0)])
    assert aff.dim == 0
    assert aff.base_point == vec(0)


def test_affine_hull_of_axis_points():
    aff = affine_hull([vec(-1, 0), vec(1, 0), vec(0, 0)])
    assert aff.dim == 1
    assert aff_contains(aff, vec(5, 0))
    assert not aff_contains(aff, vec(0, 1))


def test_aff_contains():
    assert aff_contains(affine_hull([vec(0)]), vec(0))
    assert not aff_contains(affine_hull([vec(1, 0), vec(1, 1)]), vec(0, 0))


def test_affine_hull_rejects_empty():
    with pytest.raises(ValueError):
        affine_hull([])


@settings(max_examples=60, deadline=None)
@given(point_sets(3))
def test_affine_hull_contains_inputs_and_matches_rank(points):
    aff = affine_hull(points)
    assert all(aff_contains(aff, p) for p in points)
    differences = [tuple(a - b for a, b in zip(p, points[0])) for p in points[1:]]
    assert aff.dim == rank(differences)


def test_aff_equal():
    line = affine_hull([vec(1, 0), vec(1, 1)])
    same = affine_hull([vec(1, 5), vec(1, -2), vec(1, 3)])
    other = affine_hull([vec(0, 0), vec(0, 1)])
    assert aff_equal(line, same)
    assert not aff_equal(line, other)
    assert not aff_equal(line, affine_hull([vec(1, 0)]))


@pytest.mark.parametrize(
    "points, expected",
    [
        ([vec(-1), vec(1)], True),
        ([vec(1), vec(2)], False),
        ([vec(0)], True),
        ([vec(1, 0), vec(-1, 0), vec(0, 0)], True),
        ([vec(0), vec(1)], False),
        ([vec(1, 0), vec(-1, 0), vec(0, 1)], False),
        ([vec(1, 0), vec(-1, 1), vec(-1, -1)], True),
    ],
)
def test_ri_conv_contains_zero(points, expected):
    assert ri_conv_contains_zero(points) is expected


def test_certificate_is_strictly_positive_convex_weights():
    points = [vec(1, 0), vec(-1, 1), vec(-1, -1), vec(0, 0)]
    weights = ri_certificate(points)
    assert weights is not None
    assert all(w > 0 for w in weights)
    assert sum(weights) == 1
    assert all(sum(w * y[k] for w, y in zip(weights, points)) == 0 for k in range(2))


def _brute_force_ri(points):
    """0 in Ri(Conv) iff every hyperplane through 0 weakly supporting the set is flat on it.

    Checked through all candidate normals spanned by small integer vectors,
    which is exact for the coordinate ranges used below.
    """
    if not affine_hull(points).is_linear():
        return False
    grid = range(-3, 4)
    dim = len(points[0])
    normals = [tuple(Fraction(v) for v in h) for h in _product(grid, dim) if any(h)]
    for h in normals:
        products = [dot(h, y) for y in points]
        if all(v >= 0 for v in products) and any(v > 0 for v in products):
            return False
    return True


def _product(values, dim):
    if dim == 0:
        yield ()
        return
    for head in values:
        for tail in _product(values, dim - 1):
            yield (head,) + tail


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=4))
def test_ri_matches_brute_force_in_the_plane(points):
    # Extreme separating normals are orthogonal to one of the points, so the grid suffices.
    assert ri_conv_contains_zero(points) == _brute_force_ri(points)


@settings(max_examples=40, deadline=None)
@given(point_sets(2), st.integers(min_value=1, max_value=5))
def test_ri_invariant_under_permutation_duplication_and_scaling(points, factor):
    verdict = ri_conv_contains_zero(points)
    assert ri_conv_contains_zero(list(reversed(points))) == verdict
    assert ri_conv_contains_zero(points + points[:1]) == verdict
    assert ri_conv_contains_zero([tuple(factor * v for v in p) for p in points]) == verdict


@settings(max_examples=40, deadline=None)
@given(point_sets(2))
def test_ri_invariant_under_invertible_linear_map(points):
    mapped = [(p[0] + 2 * p[1], p[1]) for p in points]
    assert ri_conv_contains_zero(mapped) == ri_conv_contains_zero(points)


@pytest.mark.parametrize(
    "points, expected",
    [
        ([vec(1, 1), vec(2, 2)], False),
        ([vec(1, 1), vec(-1, -1)], True),
        ([vec(1, 0), vec(0, 1), vec(-1, -1)], True),
        ([vec(1, 0), vec(0, 1), vec(1, 1)], False),
    ],
)
def test_adding_origin_keeps_ri_verdict_examples(points, expected):
    assert ri_conv_contains_zero(points) == expected
    assert ri_conv_contains_zero(points + [vec(0, 0)]) == expected


@settings(max_examples=60, deadline=None)
@given(point_sets(2))
def test_adding_origin_in_affine_hull_keeps_ri_verdict(points):
    assume(affine_hull(points).is_linear())
    with_origin = points + [(Fraction(0), Fraction(0))]
    assert ri_conv_contains_zero(with_origin) == ri_conv_contains_zero(points)


def test_separating_vector_examples():
    assert separating_vector([vec(1), vec(2)]) == vec(1)
    assert separating_vector([vec(2)]) == vec(1)


def test_separating_vector_lies_in_span():
    h = separating_vector([vec(1, 0), vec(2, 0)])
    assert h == vec(1, 0)


def test_separating_vector_rejects_interior():
    with pytest.raises(GeometryError):
        separating_vector([vec(-1), vec(1)])
    with pytest.raises(GeometryError):
        separating_vector([vec(0, 0)])


@settings(max_examples=60, deadline=None)
@given(point_sets(3))
def test_separating_vector_separates(points):
    if ri_conv_contains_zero(points):
        return
    h = separating_vector(points)
    products = [dot(h, y) for y in points]
    assert any(v != 0 for v in h)
    assert min(products) >= 0
    assert max(products) > 0 or not affine_hull(points).is_linear()
    lead = next(v for v in h if v != 0)
    assert abs(lead) == 1


def test_null_space():
    assert null_space([vec(1, 0)], 2) == [vec(0, 1)]
    assert len(null_space([vec(0, 0)], 2)) == 2
    assert null_space([vec(1, 0), vec(0, 1)], 2) == []


@settings(max_examples=40, deadline=None)
@given(point_sets(3))
def test_null_space_is_orthogonal_complement(points):
    basis = null_space(points, 3)
    assert len(basis) == 3 - rank(points)
    assert all(dot(h, y) == 0 for h in basis for y in points)


def test_project_to_span():
    assert project_to_span(vec(3, 4), [vec(1, 0)]) == vec(3, 0)
    assert project_to_span(vec(3, 4), [vec(0, 0)]) == vec(0, 0)
    assert project_to_span(vec(1, 1), [vec(1, 0), vec(0, 2)]) == vec(1, 1)


def test_rank():
    assert rank([vec(1, 2), vec(2, 4)]) == 1
    assert rank([]) == 0
    assert all(rank(list(c)) == 2 for c in combinations([vec(1, 0), vec(0, 1), vec(1, 1)], 2))
