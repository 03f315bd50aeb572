"""Stress the residue recursion and cut additivity on random polytopes.

Each round builds a bounded region from the unit box plus random cuts,
checks that the residue of its canonical form along every facet equals
the facet's own canonical form, then splits the region by a random
hyperplane through its witness point and checks that the two halves' forms
sum back to the original with the cut factor cancelled.

Run:  python scripts/recursion_experiment.py [--count 25] [--dimension 3] [--seed 0]
"""

import argparse
import random
from fractions import Fraction as F

from canforms import Arrangement, LinearFunctional, region_from_point
from canforms.arrangement import cell_is_bounded, sign_vector_at
from canforms.osalgebra import canonical_form_nbc, residue, to_rational_form
from canforms.regions import Region, cut_region, facet_indices, facet_region


def random_functional(rng, n, span=3):
    while True:
        grad = tuple(F(rng.randint(-span, span)) for _ in range(n))
        if any(grad):
            return LinearFunctional(F(rng.randint(-span, span)), grad)


def random_polytope(rng, n, max_facets=8):
    """Unit box plus random cuts, trimmed to its facet hyperplanes."""
    while True:
        planes = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            planes.append(LinearFunctional(F(0), tuple(F(v) for v in e)))
            planes.append(LinearFunctional(F(1), tuple(F(-v) for v in e)))
        keys = {f.locus_key() for f in planes}
        for _ in range(max_facets - 2 * n):
            f = random_functional(rng, n)
            if f.locus_key() not in keys:
                keys.add(f.locus_key())
                planes.append(f)
        arr = Arrangement(n, tuple(planes))
        point = tuple(F(rng.randint(1, 19), 20) for _ in range(n))
        if any(f.evaluate(point) == 0 for f in arr.hyperplanes):
            continue
        sv = sign_vector_at(arr, point)
        if not cell_is_bounded(arr, sv.entries):
            continue
        region = Region(arr, sv.entries, point, 1)
        keep = facet_indices(region)
        trimmed = Arrangement(n, tuple(arr.functional(i) for i in keep))
        return region_from_point(trimmed, point)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=25)
    parser.add_argument("--dimension", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for round_index in range(args.count):
        region = random_polytope(rng, args.dimension)
        x = canonical_form_nbc(region)
        facets = facet_indices(region)
        for i in facets:
            facet = facet_region(region, i)
            assert facet is not None
            assert residue(x, i) == canonical_form_nbc(facet)

        grad = [0] * args.dimension
        while not any(grad):
            grad = [rng.randint(-3, 3) for _ in range(args.dimension)]
        constant = -sum(g * w for g, w in zip(grad, region.witness))
        cut = LinearFunctional(F(constant), tuple(F(g) for g in grad))
        plus, minus, _ = cut_region(region, cut)
        total = to_rational_form(canonical_form_nbc(plus)) + to_rational_form(
            canonical_form_nbc(minus)
        )
        assert total == to_rational_form(x)
        print(
            f"round {round_index:>3}: {len(facets)} facets, "
            f"{len(x.terms)} form terms, recursion and additivity hold"
        )
    print(f"\nall {args.count} rounds passed")


if __name__ == "__main__":
    main()
