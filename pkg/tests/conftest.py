"""Shared fixtures: named arrangements and seeded random geometry."""

import itertools
import random
from fractions import Fraction as F

import pytest

from canforms import Arrangement, LinearFunctional, Region, region_from_point
from canforms.arrangement import (
    cell_is_bounded,
    genericity_violation,
    is_essential,
    sign_vector_at,
)
from canforms.regions import facet_indices


def LF(c, *grad):
    return LinearFunctional(F(c), tuple(F(g) for g in grad))


def box_arrangement(n):
    """Facet pairs (z_i, 1 - z_i) in coordinate order."""
    planes = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        planes.append(LF(0, *e))
        planes.append(LF(1, *[-v for v in e]))
    return Arrangement(n, tuple(planes))


def box_region(n):
    return region_from_point(box_arrangement(n), tuple(F(1, 2) for _ in range(n)))


def chain_simplex_arrangement(n):
    """0 <= z_1 <= ... <= z_n <= 1 as n+1 facets."""
    planes = [LF(0, *[1 if j == 0 else 0 for j in range(n)])]
    for i in range(1, n):
        grad = [0] * n
        grad[i] = 1
        grad[i - 1] = -1
        planes.append(LF(0, *grad))
    planes.append(LF(1, *[0] * (n - 1), -1))
    return Arrangement(n, tuple(planes))


def chain_simplex_region(n):
    point = tuple(F(i + 1, n + 1) for i in range(n))
    return region_from_point(chain_simplex_arrangement(n), point)


@pytest.fixture
def pyramid():
    """Square pyramid: apex at the origin, base in the z = -1 plane."""
    return Arrangement(
        3,
        (
            LF(0, 1, 0, -1),  # x - z
            LF(0, 0, 1, -1),  # y - z
            LF(0, 1, 0, 1),   # x + z
            LF(0, 0, 1, 1),   # y + z
            LF(1, 0, 0, 1),   # z + 1
        ),
    )


@pytest.fixture
def pyramid_region(pyramid):
    return region_from_point(pyramid, (F(0), F(0), F(-1, 2)))


@pytest.fixture
def triangle():
    return Arrangement(2, (LF(0, 1, 0), LF(0, 0, 1), LF(1, -1, -1)))


@pytest.fixture
def triangle_region(triangle):
    return region_from_point(triangle, (F(1, 4), F(1, 4)))


@pytest.fixture
def square():
    return box_arrangement(2)


@pytest.fixture
def square_region(square):
    return region_from_point(square, (F(1, 2), F(1, 2)))


@pytest.fixture
def four_lines():
    """Triangle lines plus a transversal; generic at infinity."""
    return Arrangement(
        2, (LF(0, 1, 0), LF(0, 0, 1), LF(1, -1, -1), LF(3, 2, -1))
    )


@pytest.fixture
def figure_four_lines():
    """A steep line through (0,1), the y-axis, the antidiagonal, the x-axis.

    The unit triangle is a region; the vertex (0,1) lies on the first
    three lines at once.
    """
    return Arrangement(
        2,
        (
            LF(10, 17, -10),  # 17x - 10y + 10
            LF(0, 1, 0),      # x
            LF(1, -1, -1),    # 1 - x - y
            LF(0, 0, 1),      # y
        ),
    )


@pytest.fixture
def figure_triangle(figure_four_lines):
    return region_from_point(figure_four_lines, (F(1, 4), F(1, 4)))


@pytest.fixture
def pentagon():
    """Convex pentagon with vertices (0,0),(2,0),(3,2),(1,4),(-1,2);
    sides labeled counterclockwise starting from the bottom edge."""
    return Arrangement(
        2,
        (
            LF(0, 0, 1),     # y
            LF(-4, 2, -1),   # 2x - y - 4
            LF(-5, 1, 1),    # x + y - 5
            LF(3, 1, -1),    # x - y + 3
            LF(0, 2, 1),     # 2x + y
        ),
    )


@pytest.fixture
def pentagon_region(pentagon):
    return region_from_point(pentagon, (F(1), F(1)))


def random_functional(rng, n, span=4):
    while True:
        grad = tuple(F(rng.randint(-span, span)) for _ in range(n))
        if any(grad):
            return LinearFunctional(F(rng.randint(-span, span)), grad)


def random_generic_arrangement(
    seed,
    n,
    d,
    require_violation_free=True,
    require_general_position=False,
    require_essential=True,
):
    """Distinct hyperplanes, essential, and (optionally) generic at
    infinity; retries until the sampled configuration qualifies.

    With require_general_position the homogenized vectors must form a
    uniform matroid: every min(d, n+1)-subset independent, so no n+1
    hyperplanes share a point and no smaller subset degenerates.
    Essentiality is impossible for d <= n, so such sizes need
    require_essential=False.
    """
    if require_essential and d < n + 1:
        raise ValueError("essential needs at least n+1 hyperplanes")
    rng = random.Random(seed)
    while True:
        planes = []
        keys = set()
        while len(planes) < d:
            f = random_functional(rng, n)
            if f.locus_key() in keys:
                continue
            keys.add(f.locus_key())
            planes.append(f)
        arr = Arrangement(n, tuple(planes))
        if require_essential and not is_essential(arr):
            continue
        if require_violation_free and genericity_violation(arr) is not None:
            continue
        if require_general_position:
            size = min(d, n + 1)
            if any(
                arr.homog_rank(combo) < size
                for combo in itertools.combinations(arr.indices(), size)
            ):
                continue
        return arr


def random_polytope(seed, n, max_facets=8):
    """Bounded region all of whose hyperplanes are facets.

    Starts from the unit box, adds random cuts through it, keeps the
    piece around a sampled interior point, then discards non-facet
    hyperplanes so the arrangement is exactly the facet list.
    """
    rng = random.Random(seed)
    base = box_arrangement(n)
    extras = []
    budget = max_facets - 2 * n
    for _ in range(budget):
        extras.append(random_functional(rng, n, span=3))
    planes = base.hyperplanes + tuple(
        f for f in extras
        if f.locus_key() not in {g.locus_key() for g in base.hyperplanes}
    )
    # dedup extras among themselves
    seen, kept = set(), []
    for f in planes:
        if f.locus_key() in seen:
            continue
        seen.add(f.locus_key())
        kept.append(f)
    arr = Arrangement(n, tuple(kept))
    point = None
    for _ in range(200):
        candidate = tuple(
            F(rng.randint(1, 19), 20) for _ in range(n)
        )
        values = [arr.functional(i).evaluate(candidate) for i in arr.indices()]
        if all(v != 0 for v in values):
            point = candidate
            break
    if point is None:
        return random_polytope(seed + 7919, n, max_facets)
    signs = sign_vector_at(arr, point)
    if not cell_is_bounded(arr, signs.entries):
        return random_polytope(seed + 7919, n, max_facets)
    region = Region(arr, signs.entries, point, 1)
    facets = facet_indices(region)
    trimmed = Arrangement(
        n, tuple(arr.functional(i) for i in sorted(facets))
    )
    return region_from_point(trimmed, point)
