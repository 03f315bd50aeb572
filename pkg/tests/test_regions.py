"""Oriented regions, boundary walks, vertex shortcuts, cuts."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canforms import Arrangement, Region, region_from_point
from canforms.errors import PreconditionError, ValidationError
from canforms.regions import (
    cut_region,
    face_sign_ratio,
    facet_indices,
    facet_region,
    iterated_boundary,
    partial_boundary,
    region_face,
    region_vertices,
    vertex_sign_shortcut,
)

from conftest import LF, box_region, random_polytope


def orthant_region(n):
    arr = Arrangement(
        n,
        tuple(
            LF(0, *[1 if j == i else 0 for j in range(n)]) for i in range(n)
        ),
    )
    return region_from_point(arr, tuple(F(1) for _ in range(n)))


def test_region_rejects_mismatched_witness(square):
    with pytest.raises(ValidationError):
        Region(square, (1, 1, 1, 1), (F(2), F(1, 2)), 1)


def test_region_from_point_needs_interior(square):
    with pytest.raises(PreconditionError):
        region_from_point(square, (F(0), F(1, 2)))


def test_quadrant_full_walk_signs():
    for n in range(1, 6):
        region = orthant_region(n)
        expected = (-1) ** (n * (n + 1) // 2)
        assert iterated_boundary(region, tuple(range(1, n + 1))) == expected


def test_interval_endpoint_coefficients():
    arr = Arrangement(1, (LF(0, 1), LF(1, -1)))
    region = region_from_point(arr, (F(1, 2),))
    assert iterated_boundary(region, (1,)) == -1
    assert iterated_boundary(region, (2,)) == 1


def test_triangle_vertex_walks(triangle_region):
    assert iterated_boundary(triangle_region, (1, 2)) == -1
    assert iterated_boundary(triangle_region, (1, 3)) == 1
    assert iterated_boundary(triangle_region, (2, 3)) == -1


def test_walks_match_vertex_shortcut(triangle_region, square_region):
    for region, pairs in (
        (triangle_region, [(1, 2), (1, 3), (2, 3)]),
        (square_region, [(1, 3), (1, 4), (2, 3), (2, 4)]),
    ):
        for pair in pairs:
            assert iterated_boundary(region, pair) == vertex_sign_shortcut(
                region, pair
            )


def test_orientation_reversal_flips_walks(triangle_region):
    flipped = triangle_region.reversed()
    for pair in [(1, 2), (1, 3), (2, 3)]:
        assert iterated_boundary(flipped, pair) == -iterated_boundary(
            triangle_region, pair
        )


def test_walk_away_from_region_is_zero(square_region):
    # z1=0 and 1-z2=0 meet at (0,1), a vertex; z1=0 and z2=0 meet at the
    # origin: both are vertices, so extend the square with a far line
    # whose vertex with z1=0 lies outside
    arr = Arrangement(
        2, square_region.arrangement.hyperplanes + (LF(-3, 0, 1),)
    )
    region = region_from_point(arr, (F(1, 2), F(1, 2)))
    assert iterated_boundary(region, (1, 5)) == 0


def test_mixed_size_walk_returns_face(square_region):
    face = iterated_boundary(square_region, (4,))
    assert face is not None
    assert face.zero_indices == (4,)
    assert face.orientation_basis == ((F(-1), F(0)),)


def test_missing_facet_walk_is_none(figure_triangle):
    # the steep line passes through a vertex of the triangle: no facet
    assert iterated_boundary(figure_triangle, (1,)) is None


def test_figure_four_lines_corner_coefficient(figure_triangle):
    assert iterated_boundary(figure_triangle, (1, 2)) == -1


def test_boundary_antisymmetry(square_region):
    base = region_face(square_region)
    ab = partial_boundary(partial_boundary(base, 4), 1)
    ba = partial_boundary(partial_boundary(base, 1), 4)
    assert ab is not None and ba is not None
    assert face_sign_ratio(ab, ba) == -1


def test_face_sign_ratio_distinct_cells(square_region):
    base = region_face(square_region)
    a = partial_boundary(base, 1)
    b = partial_boundary(base, 2)
    assert face_sign_ratio(a, b) is None
    assert face_sign_ratio(a, a) == 1


def test_iterated_boundary_precondition_errors(square_region):
    with pytest.raises(PreconditionError):
        iterated_boundary(square_region, ())
    with pytest.raises(PreconditionError):
        iterated_boundary(square_region, (1, 1))
    with pytest.raises(PreconditionError):
        iterated_boundary(square_region, (1, 2))  # parallel sides


def test_pyramid_apex_is_not_simple(pyramid_region):
    with pytest.raises(PreconditionError):
        vertex_sign_shortcut(pyramid_region, (1, 2, 3))


def test_pyramid_base_corner_walks(pyramid_region):
    assert iterated_boundary(pyramid_region, (1, 2, 5)) == vertex_sign_shortcut(
        pyramid_region, (1, 2, 5)
    )


def test_vertex_shortcut_rejects_foreign_point(square_region):
    arr = Arrangement(
        2, square_region.arrangement.hyperplanes + (LF(-3, 1, 1),)
    )
    region = region_from_point(arr, (F(1, 2), F(1, 2)))
    # z1=0 and z1+z2-3=0 meet at (0,3), outside the square
    with pytest.raises(PreconditionError):
        vertex_sign_shortcut(region, (1, 5))


def test_region_vertices_square(square_region):
    verts = region_vertices(square_region)
    points = {v for v, _ in verts}
    assert points == {
        (F(0), F(0)),
        (F(0), F(1)),
        (F(1), F(0)),
        (F(1), F(1)),
    }
    actives = {v: s for v, s in verts}
    assert actives[(F(0), F(0))] == frozenset({1, 3})


def test_region_vertices_pyramid_apex_degree(pyramid_region):
    verts = dict(region_vertices(pyramid_region))
    assert verts[(F(0), F(0), F(0))] == frozenset({1, 2, 3, 4})
    assert len(verts) == 5


def test_facet_indices_drop_non_facets(figure_triangle):
    assert facet_indices(figure_triangle) == (2, 3, 4)


def test_facet_region_of_square_top(square_region):
    facet = facet_region(square_region, 4)
    assert facet is not None
    assert facet.arrangement.ambient_dim == 1
    assert facet.orientation == -1
    assert facet.witness[0] > 0 and facet.witness[0] < 1


def test_facet_region_missing(figure_triangle):
    assert facet_region(figure_triangle, 1) is None


def test_cut_square_into_triangles(square_region):
    plus, minus, extended = cut_region(square_region, LF(0, 1, -1))
    assert extended.size == 5
    assert plus.sign(5) == 1 and minus.sign(5) == -1
    assert plus.orientation == minus.orientation == 1
    # below the diagonal z1 > z2 on the plus side
    assert plus.witness[0] > plus.witness[1]
    assert minus.witness[0] < minus.witness[1]


def test_cut_region_requires_interior_crossing(square_region):
    with pytest.raises(PreconditionError):
        cut_region(square_region, LF(-5, 1, 1))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_polytope_simple_vertices_match_shortcut(seed):
    region = random_polytope(seed, 2, max_facets=6)
    arr = region.arrangement
    n = arr.ambient_dim
    for point, active in region_vertices(region):
        if len(active) != n:
            continue
        idx = tuple(sorted(active))
        walk = iterated_boundary(region, idx)
        assert walk == vertex_sign_shortcut(region, idx)
        assert walk in (1, -1)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_random_polytope_every_hyperplane_is_facet(seed):
    region = random_polytope(seed, 2, max_facets=6)
    arr = region.arrangement
    assert facet_indices(region) == tuple(arr.indices())
