"""Log-form algebra: relations, canonical elements, residues, products."""

import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canforms import Arrangement, OSElement, RationalForm, region_from_point
from canforms.errors import PreconditionError, ValidationError
from canforms.exact import MultiPoly
from canforms.osalgebra import (
    DlogCombination,
    adjoint_polynomial,
    canonical_form_nbc,
    canonical_form_polygon,
    canonical_form_simple_polytope,
    corner_residues,
    os_normalize,
    os_relations,
    product_form,
    pullback_power,
    pushforward_power,
    residue,
    to_rational_form,
)
from canforms.regions import cut_region, facet_region, iterated_boundary
from canforms.arrangement import nbc_sets

from conftest import (
    LF,
    box_region,
    chain_simplex_region,
    random_generic_arrangement,
    random_polytope,
)

PYRAMID_COEFFS = {
    (1, 2, 3): F(-1),
    (1, 2, 5): F(1),
    (1, 3, 4): F(-1),
    (1, 4, 5): F(-1),
    (2, 3, 5): F(1),
    (3, 4, 5): F(1),
}


# -- relations and normalization ----------------------------------------------


def test_pyramid_relation_rewrites_top_monomial(pyramid):
    x = os_normalize(OSElement.monomial(pyramid, (2, 3, 4)))
    expected = OSElement.build(
        pyramid, 3, {(1, 2, 3): F(1), (1, 2, 4): F(-1), (1, 3, 4): F(1)}
    )
    assert x == expected


def test_relations_normalize_to_zero(pyramid):
    for degree in (2, 3):
        for rel in os_relations(pyramid, degree):
            assert os_normalize(rel).is_zero()


def test_nbc_monomials_are_normal_forms(pyramid):
    for s in nbc_sets(pyramid, 3):
        mono = OSElement.monomial(pyramid, s)
        assert os_normalize(mono) == mono


def test_normalize_is_idempotent(pyramid):
    x = OSElement.build(
        pyramid, 3, {(2, 3, 4): F(2), (1, 2, 3): F(-1), (2, 4, 5): F(3)}
    )
    once = os_normalize(x)
    assert os_normalize(once) == once


def test_wedge_antisymmetry_in_algebra(four_lines):
    a = OSElement.monomial(four_lines, (1,))
    b = OSElement.monomial(four_lines, (2,))
    assert a.wedge(b) == -(b.wedge(a))
    assert a.wedge(a).is_zero()


# -- canonical elements --------------------------------------------------------


def test_pyramid_canonical_form(pyramid_region):
    x = canonical_form_nbc(pyramid_region)
    assert x.terms_dict() == PYRAMID_COEFFS
    assert x.coefficient((1, 2, 4)) == 0


def test_square_canonical_form(square_region):
    x = canonical_form_nbc(square_region)
    assert x.terms_dict() == {
        (1, 3): F(-1),
        (1, 4): F(1),
        (2, 3): F(1),
        (2, 4): F(-1),
    }


def test_interval_canonical_form():
    region = box_region(1)
    x = canonical_form_nbc(region)
    assert x.terms_dict() == {(1,): F(-1), (2,): F(1)}


def test_canonical_form_orientation_linear(square_region):
    assert canonical_form_nbc(square_region.reversed()) == -(
        canonical_form_nbc(square_region)
    )


def test_polygon_route_matches_nbc(square_region, pentagon_region):
    for region in (square_region, pentagon_region):
        assert canonical_form_polygon(region) == canonical_form_nbc(region)


def test_polygon_accepts_rotated_ccw_order(square_region):
    base = canonical_form_polygon(square_region)
    # boundary walk bottom, right, top, left started from the left side
    rotated = canonical_form_polygon(square_region, ccw_order=[1, 3, 2, 4])
    assert rotated == base


def test_polygon_rejects_wrong_cycle(square_region):
    # swapping two adjacent sides breaks the boundary walk
    with pytest.raises(ValidationError):
        canonical_form_polygon(square_region, ccw_order=[1, 2, 3, 4])


def test_polygon_needs_dimension_two(pyramid_region):
    with pytest.raises(PreconditionError):
        canonical_form_polygon(pyramid_region)


def test_simple_polytope_route_matches_nbc(square_region):
    assert canonical_form_simple_polytope(square_region) == canonical_form_nbc(
        square_region
    )
    cube = box_region(3)
    assert canonical_form_simple_polytope(cube) == canonical_form_nbc(cube)


def test_simple_polytope_rejects_pyramid_apex(pyramid_region):
    with pytest.raises(PreconditionError):
        canonical_form_simple_polytope(pyramid_region)


# -- residues -------------------------------------------------------------------


def test_square_residue_along_top(square_region):
    x = canonical_form_nbc(square_region)
    res = residue(x, 4)
    assert res.terms_dict() == {(1,): F(1), (2,): F(-1)}


def test_residue_matches_facet_form(pyramid_region, square_region):
    for region, index in ((pyramid_region, 5), (square_region, 4)):
        x = canonical_form_nbc(region)
        facet = facet_region(region, index)
        assert facet is not None
        assert residue(x, index) == canonical_form_nbc(facet)


def test_corner_residues_match_boundary_walks(pyramid_region):
    x = canonical_form_nbc(pyramid_region)
    vector = corner_residues(x)
    for corner, value in vector.entries:
        assert value == iterated_boundary(pyramid_region, corner)


def test_szenes_duality_on_pyramid(pyramid):
    tops = nbc_sets(pyramid, 3)
    for j in tops:
        vector = corner_residues(OSElement.monomial(pyramid, j))
        for corner, value in vector.entries:
            assert value == (1 if corner == j else 0)


def test_corner_residues_need_top_degree(pyramid):
    with pytest.raises(ValidationError):
        corner_residues(OSElement.monomial(pyramid, (1, 2)))


# -- rational realizations -------------------------------------------------------


def test_interval_form_is_dlog_ratio():
    x = canonical_form_nbc(box_region(1))
    expected = RationalForm.dlog_ratio(LF(-1, 1), LF(0, 1))
    assert to_rational_form(x) == expected


def box_closed_form(n):
    sign = F((-1) ** (n * (n + 1) // 2))
    denom = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        denom.append((LF(0, *e), 1))
        denom.append((LF(1, *[-v for v in e]), 1))
    return RationalForm(
        n,
        n,
        {tuple(range(n)): MultiPoly.const(n, sign)},
        tuple(denom),
    )


def simplex_closed_form(n):
    sign = F((-1) ** (n * (n + 1) // 2))
    denom = [(LF(0, *[1 if j == 0 else 0 for j in range(n)]), 1)]
    for i in range(1, n):
        grad = [0] * n
        grad[i] = 1
        grad[i - 1] = -1
        denom.append((LF(0, *grad), 1))
    denom.append((LF(1, *([0] * (n - 1) + [-1])), 1))
    return RationalForm(
        n,
        n,
        {tuple(range(n)): MultiPoly.const(n, sign)},
        tuple(denom),
    )


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hypercube_closed_form(n):
    x = canonical_form_nbc(box_region(n))
    assert to_rational_form(x) == box_closed_form(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_simplex_closed_form(n):
    x = canonical_form_nbc(chain_simplex_region(n))
    assert to_rational_form(x) == simplex_closed_form(n)


# -- adjoint ---------------------------------------------------------------------


def test_square_adjoint_is_minus_x0(square_region):
    form = to_rational_form(canonical_form_nbc(square_region))
    adj = adjoint_polynomial(form, square_region.arrangement)
    assert adj == MultiPoly.variable(3, 0).scale(-1)


def test_triangle_adjoint_is_constant(triangle_region):
    form = to_rational_form(canonical_form_nbc(triangle_region))
    adj = adjoint_polynomial(form, triangle_region.arrangement)
    assert adj == MultiPoly.const(3, -1)
    assert adj.total_degree() == 0


def test_simplex_adjoints_are_degree_zero():
    for n in (2, 3):
        region = chain_simplex_region(n)
        form = to_rational_form(canonical_form_nbc(region))
        adj = adjoint_polynomial(form, region.arrangement)
        assert adj.total_degree() == 0


def test_pyramid_adjoint_degree(pyramid_region):
    form = to_rational_form(canonical_form_nbc(pyramid_region))
    adj = adjoint_polynomial(form, pyramid_region.arrangement)
    # N - n - 1 with five planes in three variables
    assert adj.total_degree() == 1
    assert not adj.is_zero()


def test_adjoint_rejects_foreign_poles(square_region):
    form = RationalForm.dlog(LF(3, 1, 1)).wedge(RationalForm.dlog(LF(0, 1, 0)))
    with pytest.raises(ValidationError):
        adjoint_polynomial(form, square_region.arrangement)


# -- products --------------------------------------------------------------------


def test_box_products_match_direct_forms():
    cases = [(1, 1), (1, 2), (2, 2), (1, 3)]
    for p, q in cases:
        x = canonical_form_nbc(box_region(p))
        y = canonical_form_nbc(box_region(q))
        direct = canonical_form_nbc(box_region(p + q))
        assert product_form(x, y) == direct


def test_product_requires_generic_mode(pyramid, square_region):
    import dataclasses

    from canforms.arrangement import PROJECTIVE_CLOSURE

    arr = dataclasses.replace(
        square_region.arrangement, infinity_mode=PROJECTIVE_CLOSURE
    )
    x = OSElement.monomial(arr, (1,))
    with pytest.raises(PreconditionError):
        product_form(x, x)


# -- pushforward and pullback -----------------------------------------------------


def interval_dlog():
    return DlogCombination.build("z", {1: 1, 0: -1})


@pytest.mark.parametrize("power", [2, 3, 4])
def test_pushforward_fixes_interval_combination(power):
    pushed = pushforward_power(
        DlogCombination.build("w", {1: 1, 0: -1}), power
    )
    assert pushed.linear_dict() == {F(1): F(1), F(0): F(-1)}
    assert pushed.atoms == ()


def test_pullback_square_root():
    pulled = pullback_power(interval_dlog(), 2)
    assert pulled.linear_dict() == {F(-1): F(1), F(0): F(-2), F(1): F(1)}
    assert pulled.atoms == ()


def test_pullback_cube_root():
    pulled = pullback_power(interval_dlog(), 3)
    assert pulled.linear_dict() == {F(0): F(-3), F(1): F(1)}
    assert pulled.atoms == (((F(1), F(1), F(1)), F(1)),)


def test_pullback_fourth_root():
    pulled = pullback_power(interval_dlog(), 4)
    assert pulled.linear_dict() == {F(-1): F(1), F(0): F(-4), F(1): F(1)}
    assert pulled.atoms == (((F(1), F(0), F(1)), F(1)),)


def test_pullback_scales_total_residue():
    for power in (2, 3, 4, 5):
        x = DlogCombination.build("z", {2: F(1, 3), -1: F(2), 0: F(-1)})
        assert (
            pullback_power(x, power).total_residue()
            == power * x.total_residue()
        )


def test_push_after_pull_is_multiplication_by_power():
    x = DlogCombination.build("z", {1: F(5, 2), 0: F(-3)})
    for power in (2, 3):
        pulled = pullback_power(x, power)
        if pulled.atoms:
            continue
        back = pushforward_power(pulled, power)
        assert back.linear_dict() == {
            a: power * c for a, c in x.linear_dict().items()
        }


def test_pushforward_rejects_atoms():
    with_atom = pullback_power(interval_dlog(), 3)
    with pytest.raises(ValidationError):
        pushforward_power(with_atom, 3)


# -- cut additivity ----------------------------------------------------------------


def test_square_cut_additivity(square_region):
    plus, minus, _ = cut_region(square_region, LF(0, 1, -1))
    total = to_rational_form(canonical_form_nbc(plus)) + to_rational_form(
        canonical_form_nbc(minus)
    )
    assert total == to_rational_form(canonical_form_nbc(square_region))


# -- randomized properties -----------------------------------------------------------


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_random_polytope_normal_form_stable(seed):
    region = random_polytope(seed, 2, max_facets=6)
    x = canonical_form_nbc(region)
    assert os_normalize(x) == x
    for s, _ in x.terms:
        assert s in nbc_sets(region.arrangement, 2)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_szenes_duality_on_random_arrangements(seed):
    arr = random_generic_arrangement(seed, 2, 4)
    for j in nbc_sets(arr, 2):
        vector = corner_residues(OSElement.monomial(arr, j))
        for corner, value in vector.entries:
            assert value == (1 if corner == j else 0)
