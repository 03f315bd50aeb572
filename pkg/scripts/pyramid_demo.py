"""Walk the square pyramid through the whole pipeline.

Builds the five-facet arrangement (four slanted planes meeting at the
apex, one base plane), then prints its matroid data, the canonical form
of the interior region in three notations, the residue along the base,
the corner-residue vector, and the adjoint polynomial.

Run:  python scripts/pyramid_demo.py
"""

from fractions import Fraction as F

from canforms import Arrangement, LinearFunctional, region_from_point
from canforms.arrangement import circuits, nbc_sets
from canforms.osalgebra import (
    adjoint_polynomial,
    canonical_form_nbc,
    corner_residues,
    residue,
    to_rational_form,
)
from canforms.serialize import (
    form_plain,
    os_latex,
    os_plain,
    poly_plain,
)


def lf(c, *grad):
    return LinearFunctional(F(c), tuple(F(g) for g in grad))


def main():
    pyramid = Arrangement(
        3,
        (
            lf(0, 1, 0, -1),
            lf(0, 0, 1, -1),
            lf(0, 1, 0, 1),
            lf(0, 0, 1, 1),
            lf(1, 0, 0, 1),
        ),
    )
    region = region_from_point(pyramid, (F(0), F(0), F(-1, 2)))

    print("circuits:", [list(c) for c in circuits(pyramid)])
    print("nbc 3-sets:", [list(s) for s in nbc_sets(pyramid, 3)])

    x = canonical_form_nbc(region)
    print("\ncanonical form:")
    print(" ", os_plain(x))
    print(" ", os_latex(x))
    form = to_rational_form(x)
    print(" ", form_plain(form, pyramid.variables))

    base = residue(x, 5)
    print("\nresidue along the base plane:")
    print(" ", os_plain(base))

    print("\ncorner residues (nbc corner: coefficient):")
    for corner, value in corner_residues(x).entries:
        print(f"  {','.join(str(i) for i in corner)}: {value}")

    adj = adjoint_polynomial(form, pyramid)
    names = [f"x{j}" for j in range(pyramid.ambient_dim + 1)]
    print("\nadjoint polynomial:", poly_plain(adj, names))
    print(f"degree: {adj.total_degree()} (facets - dim - 1 = {pyramid.size - 4})")


if __name__ == "__main__":
    main()
