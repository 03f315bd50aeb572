"""Survey the four rank counts on random general-position arrangements.

For each pair (n, d) the script samples d hyperplanes in n-space in
general position with all projective intersections finite, then tabulates
binom(d-1, n), the signed Moebius value of the top flat, the number of
bounded regions, and the nbc n-set count after sending one hyperplane to
infinity.  All four agree.

Run:  python scripts/rank_table.py [--max-d 8] [--seed 0]
"""

import argparse
import itertools
import random
from fractions import Fraction as F
from math import comb

from canforms import Arrangement, LinearFunctional
from canforms.arrangement import (
    bounded_regions,
    combinatorial_rank_moebius,
    genericity_violation,
    is_essential,
    nbc_sets,
    send_to_infinity,
)


def sample_general_position(rng, n, d):
    """Rejection-sample until every min(d, n+1)-subset of homogenized
    vectors is independent and every intersection is finite."""
    while True:
        planes = []
        keys = set()
        while len(planes) < d:
            grad = tuple(F(rng.randint(-4, 4)) for _ in range(n))
            if not any(grad):
                continue
            f = LinearFunctional(F(rng.randint(-4, 4)), grad)
            if f.locus_key() in keys:
                continue
            keys.add(f.locus_key())
            planes.append(f)
        arr = Arrangement(n, tuple(planes))
        if d >= n + 1 and not is_essential(arr):
            continue
        if genericity_violation(arr) is not None:
            continue
        size = min(d, n + 1)
        if any(
            arr.homog_rank(combo) < size
            for combo in itertools.combinations(arr.indices(), size)
        ):
            continue
        return arr


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-d", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'n':>2} {'d':>2} {'binom':>6} {'moebius':>8} {'bounded':>8} {'nbc':>6}")
    for n in (2, 3):
        for d in range(3, args.max_d + 1):
            rng = random.Random((args.seed, n, d).__hash__())
            arr = sample_general_position(rng, n, d)
            expected = comb(d - 1, n)
            rank = combinatorial_rank_moebius(arr)
            bounded = len(bounded_regions(arr))
            nbc = len(nbc_sets(send_to_infinity(arr, 1), n))
            marker = "" if expected == rank == bounded == nbc else "  <- MISMATCH"
            print(f"{n:>2} {d:>2} {expected:>6} {rank:>8} {bounded:>8} {nbc:>6}{marker}")


if __name__ == "__main__":
    main()
