"""Acceptance gate: fourteen end-to-end criteria, one test per criterion.

Every check is exact rational arithmetic with no tolerances.  Run with
-v for one pass/fail line per criterion; each test also prints a PASS
summary visible under -s.
"""

import itertools
import random
from fractions import Fraction as F
from math import comb

from canforms import Arrangement, OSElement, region_from_point
from canforms.arrangement import (
    bounded_regions,
    build_flat_poset,
    combinatorial_rank_moebius,
    nbc_sets,
    reorder,
    send_to_infinity,
)
from canforms.exact import MultiPoly, RationalForm
from canforms.osalgebra import (
    DlogCombination,
    adjoint_polynomial,
    canonical_form_nbc,
    corner_residues,
    product_form,
    pullback_power,
    pushforward_power,
    residue,
    to_rational_form,
)
from canforms.regions import (
    cut_region,
    face_sign_ratio,
    facet_indices,
    facet_region,
    iterated_boundary,
    partial_boundary,
    region_face,
)
from canforms.strata import (
    StrataInput,
    curve_rank,
    curve_rank_relative,
    dual_complex,
    genus_plane_curve,
    genus_smooth_hypersurface,
    reduced_homology_dims,
    simplex_boundary_input,
)

from conftest import (
    LF,
    box_region,
    chain_simplex_region,
    random_generic_arrangement,
    random_polytope,
)


def _canonical(region):
    return to_rational_form(canonical_form_nbc(region))


def test_criterion_01_pyramid_canonical_form(pyramid_region):
    x = canonical_form_nbc(pyramid_region)
    assert x.terms_dict() == {
        (1, 2, 3): F(-1),
        (1, 3, 4): F(-1),
        (1, 2, 5): F(1),
        (2, 3, 5): F(1),
        (3, 4, 5): F(1),
        (1, 4, 5): F(-1),
    }
    assert x.terms_dict().get((1, 2, 4), F(0)) == 0
    print("PASS 1: square-pyramid canonical form, six terms, none on {1,2,4}")


def _box_closed_form(n):
    sign = F((-1) ** (n * (n + 1) // 2))
    denom = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        denom.append((LF(0, *e), 1))
        denom.append((LF(1, *[-v for v in e]), 1))
    return RationalForm(
        n, n, {tuple(range(n)): MultiPoly.const(n, sign)}, tuple(denom)
    )


def _simplex_closed_form(n):
    sign = F((-1) ** (n * (n + 1) // 2))
    denom = [(LF(0, *[1 if j == 0 else 0 for j in range(n)]), 1)]
    for i in range(1, n):
        grad = [0] * n
        grad[i] = 1
        grad[i - 1] = -1
        denom.append((LF(0, *grad), 1))
    denom.append((LF(1, *([0] * (n - 1) + [-1])), 1))
    return RationalForm(
        n, n, {tuple(range(n)): MultiPoly.const(n, sign)}, tuple(denom)
    )


def test_criterion_02_closed_forms_boxes_and_simplices():
    for n in range(1, 5):
        assert _canonical(box_region(n)) == _box_closed_form(n)
        assert _canonical(chain_simplex_region(n)) == _simplex_closed_form(n)
    print("PASS 2: hypercube and simplex closed forms for n = 1..4, signs included")


def test_criterion_03_interval_and_square_residue():
    interval = Arrangement(1, (LF(0, 1), LF(1, -1)))
    segment = region_from_point(interval, (F(1, 2),))
    # dlog((z - 1) / (z - 0)) at endpoints (a, b) = (0, 1)
    assert _canonical(segment) == RationalForm.dlog_ratio(LF(-1, 1), LF(0, 1))

    square = box_region(2)
    res = residue(canonical_form_nbc(square), 4)
    assert res.terms_dict() == {(1,): F(1), (2,): F(-1)}
    # the residue along the top edge is -dlog((z1 - 1) / z1)
    assert to_rational_form(res) == RationalForm.dlog_ratio(LF(0, 1), LF(-1, 1))
    print("PASS 3: interval dlog ratio and square residue along the top edge")


def test_criterion_04_residue_recursion_on_random_polytopes():
    checked = 0
    for seed in range(100, 125):
        region = random_polytope(seed, 2 + seed % 2, max_facets=8)
        x = canonical_form_nbc(region)
        for i in facet_indices(region):
            facet = facet_region(region, i)
            assert facet is not None
            assert residue(x, i) == canonical_form_nbc(facet)
        checked += 1
    assert checked == 25
    print("PASS 4: facet residue recursion on 25 random polytopes, every facet")


def test_criterion_05_triangulation_additivity():
    checked = 0
    for seed in range(200, 225):
        n = 2 + seed % 2
        region = random_polytope(seed, n, max_facets=8)
        rng = random.Random(seed)
        while True:
            grad = [rng.randint(-3, 3) for _ in range(n)]
            if any(grad):
                break
        # a cut through the witness point splits the interior
        constant = -sum(g * w for g, w in zip(grad, region.witness))
        plus, minus, _ = cut_region(region, LF(constant, *grad))
        assert _canonical(plus) + _canonical(minus) == _canonical(region)
        checked += 1
    assert checked == 25
    print("PASS 5: cut additivity with cancelled cut factor on 25 random polytopes")


def test_criterion_06_four_way_rank_agreement():
    for n in (2, 3):
        for d in range(3, 9):
            expected = comb(d - 1, n)
            # d <= n cannot be essential: the Moebius route needs a top
            # flat, and the other three counts all vanish with it
            essential = d >= n + 1
            arr = random_generic_arrangement(
                seed=1000 + 10 * n + d,
                n=n,
                d=d,
                require_general_position=True,
                require_essential=essential,
            )
            if essential:
                poset = build_flat_poset(arr)
                assert (-1) ** (n - 1) * poset.moebius(poset.one_hat()) == expected
            else:
                assert expected == 0
            assert combinatorial_rank_moebius(arr) == expected
            assert len(bounded_regions(arr)) == expected
            for i in (1, d):
                coned = send_to_infinity(arr, i)
                assert len(nbc_sets(coned, n)) == expected
    print("PASS 6: binomial = Moebius rank = bounded regions = nbc count, d = 3..8, n = 2, 3")


def test_criterion_07_corner_residue_duality(pyramid):
    arrangements = [pyramid]
    for seed, n, d in (
        (1, 2, 4), (2, 2, 4), (3, 2, 5), (4, 2, 5), (5, 2, 5),
        (6, 3, 4), (7, 3, 4), (8, 3, 5), (9, 3, 5), (10, 2, 6),
    ):
        arrangements.append(random_generic_arrangement(seed=seed, n=n, d=d))
    for arr in arrangements:
        n = arr.ambient_dim
        tops = nbc_sets(arr, n)
        for j in tops:
            vector = corner_residues(OSElement.monomial(arr, j))
            assert vector.as_dict() == {
                k: (F(1) if k == j else F(0)) for k in tops
            }
    print("PASS 7: corner residues of basis monomials are delta vectors, pyramid + 10 random")


def test_criterion_08_order_independence():
    polytopes = [
        random_polytope(seed, 1 + seed % 2, max_facets=5)
        for seed in range(300, 310)
    ]
    for region in polytopes:
        arr = region.arrangement
        base = _canonical(region)
        for perm in itertools.permutations(range(1, arr.size + 1)):
            relabeled = reorder(arr, list(perm))
            again = region_from_point(relabeled, region.witness)
            assert _canonical(again) == base
    # a three-dimensional spot check on a sample of relabelings
    region = box_region(3)
    base = _canonical(region)
    rng = random.Random(8)
    perms = rng.sample(list(itertools.permutations(range(1, 7))), 20)
    for perm in perms:
        relabeled = reorder(region.arrangement, list(perm))
        again = region_from_point(relabeled, region.witness)
        assert _canonical(again) == base
    print("PASS 8: identical rational form under all facet relabelings, 10 random polytopes")


def test_criterion_09_adjoint_degree(
    triangle_region, square_region, pentagon_region, pyramid_region
):
    cases = [triangle_region, square_region, pentagon_region, pyramid_region]
    cases += [box_region(k) for k in range(1, 5)]
    cases += [chain_simplex_region(k) for k in range(2, 5)]
    cases += [random_polytope(seed, 2 + seed % 2) for seed in range(400, 405)]
    for region in cases:
        arr = region.arrangement
        count, n = arr.size, arr.ambient_dim
        poly = adjoint_polynomial(_canonical(region), arr)
        assert not poly.is_zero()
        assert poly.total_degree() == count - n - 1
        assert (poly.total_degree() == 0) == (count == n + 1)
    print("PASS 9: adjoint numerator degree N-n-1, zero exactly for simplices")


def test_criterion_10_product_multiplicativity():
    for p, q in ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)):
        x = canonical_form_nbc(box_region(p))
        y = canonical_form_nbc(box_region(q))
        direct = canonical_form_nbc(box_region(p + q))
        assert product_form(x, y) == direct
    print("PASS 10: box products match direct computation, sign included, p+q <= 4")


def _conic_two_lines():
    return StrataInput.build(
        ["C", "L1", "L2"],
        {
            (0, 1): [
                ("t01", {(0,): "C", (1,): "L1"}),
                ("p", {(0,): "C", (1,): "L1"}),
            ],
            (0, 2): [
                ("t02", {(0,): "C", (2,): "L2"}),
                ("q", {(0,): "C", (2,): "L2"}),
            ],
            (1, 2): [("t12", {(1,): "L1", (2,): "L2"})],
            (0, 1, 2): [("t", {(0, 1): "t01", (0, 2): "t02", (1, 2): "t12"})],
        },
    )


def test_criterion_11_dual_complex_homology():
    summary = reduced_homology_dims(dual_complex(_conic_two_lines()))
    assert summary.reduced == (0, 2, 0)
    for n in range(1, 6):
        summary = reduced_homology_dims(dual_complex(simplex_boundary_input(n)))
        assert summary.reduced[n - 1] == 1
        assert sum(summary.reduced) == 1
    print("PASS 11: conic plus two lines gives h1 = 2; simplex boundary is a sphere, n <= 5")


def test_criterion_12_curve_invariants():
    assert curve_rank([("node", 2)], 1) == 1
    cusp_alone = curve_rank([("cusp", 1)], 1)
    assert curve_rank_relative(cusp_alone, 3) == 2
    # same count from the glued pair: cuspidal cubic plus a transverse line
    assert curve_rank([("cusp", 1), ("a", 2), ("b", 2), ("c", 2)], 2) == 2
    assert genus_plane_curve(3, []) == 1
    assert genus_smooth_hypersurface(4, 3) == 0
    print("PASS 12: nodal cubic 1, cusp-plus-line relative 2, cubic genus 1, threefold 0")


def test_criterion_13_power_map_transport():
    interval = DlogCombination.build("w", {1: 1, 0: -1})
    for power in (2, 3, 4):
        pushed = pushforward_power(interval, power)
        assert pushed.linear_dict() == {F(1): F(1), F(0): F(-1)}
        assert pushed.atoms == ()
    expected = {
        2: ({F(1): F(1), F(-1): F(1), F(0): F(-2)}, ()),
        3: ({F(1): F(1), F(0): F(-3)}, (((F(1), F(1), F(1)), F(1)),)),
        4: ({F(1): F(1), F(-1): F(1), F(0): F(-4)}, (((F(1), F(0), F(1)), F(1)),)),
    }
    downstairs = DlogCombination.build("z", {1: 1, 0: -1})
    for power, (linear, atoms) in expected.items():
        pulled = pullback_power(downstairs, power)
        assert pulled.linear_dict() == linear
        assert pulled.atoms == atoms
    print("PASS 13: power-map pushforward fixes the interval form; pullbacks expand exactly, N = 2, 3, 4")


def test_criterion_14_boundary_sign_ledger(figure_triangle):
    assert iterated_boundary(figure_triangle, (1, 2)) == -1

    base = region_face(figure_triangle)
    antisymmetric_pairs = 0
    for i, j in itertools.combinations(range(1, 5), 2):
        first = partial_boundary(base, i)
        second = partial_boundary(base, j)
        ab = partial_boundary(first, j) if first is not None else None
        ba = partial_boundary(second, i) if second is not None else None
        if ab is not None and ba is not None:
            assert face_sign_ratio(ab, ba) == -1
            antisymmetric_pairs += 1
    assert antisymmetric_pairs >= 3

    for n in range(1, 6):
        arr = Arrangement(
            n,
            tuple(
                LF(0, *[1 if j == i else 0 for j in range(n)])
                for i in range(n)
            ),
        )
        orthant = region_from_point(arr, tuple(F(1) for _ in range(n)))
        walk = iterated_boundary(orthant, tuple(range(1, n + 1)))
        assert walk == (-1) ** (n * (n + 1) // 2)
    print("PASS 14: corner coefficient -1, boundary antisymmetry, orthant signs to n = 5")
