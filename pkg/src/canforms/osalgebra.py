"""Logarithmic-form algebra of an arrangement and canonical forms.

Elements are rational combinations of wedge monomials in the generators
attached to the hyperplanes.  Two relation families cut out the algebra:
monomials over index sets with empty chart intersection vanish, and each
minimal dependent intersecting set yields the alternating sum relation.
The no-broken-circuit monomials form a basis of the quotient, and
normalization writes any element in that basis by an exact linear solve.

Canonical forms of regions are computed three ways: the general
boundary-coefficient formula over nbc sets, the counterclockwise polygon
formula in the plane, and the vertex sum for simple polytopes.  Residues
follow the trailing-factor convention, dropping the named generator from
the back of a monomial without a sign and acquiring one as it commutes
forward; iterated residues apply the largest index first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .arrangement import (
    Arrangement,
    GENERIC,
    Restriction,
    cell_is_bounded,
    circuits,
    nbc_sets,
    restriction,
)
from .errors import InternalInvariantError, PreconditionError, ValidationError
from .exact import (
    LinearFunctional,
    MultiPoly,
    RationalForm,
    Vector,
    det,
    frac,
    poly_product,
    solve_affine,
    wedge_of_dlogs,
)
from .regions import Region, iterated_boundary, region_vertices

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class OSElement:
    arrangement: Arrangement
    degree: int
    terms: Tuple[Tuple[IndexTuple, Fraction], ...]

    def __post_init__(self) -> None:
        if self.degree < 0:
            raise ValidationError("negative degree")
        seen = set()
        for indices, coeff in self.terms:
            if len(indices) != self.degree:
                raise ValidationError("term length does not match degree")
            if list(indices) != sorted(set(indices)):
                raise ValidationError("term indices must be strictly increasing")
            if indices in seen:
                raise ValidationError("duplicate term")
            if any(not 1 <= i <= self.arrangement.size for i in indices):
                raise ValidationError("term index out of range")
            if coeff == 0:
                raise ValidationError("zero coefficient stored")
            seen.add(indices)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def build(
        arr: Arrangement, degree: int, mapping: Dict[IndexTuple, Fraction]
    ) -> "OSElement":
        terms = tuple(
            (t, frac(c)) for t, c in sorted(mapping.items()) if frac(c) != 0
        )
        return OSElement(arr, degree, terms)

    @staticmethod
    def zero(arr: Arrangement, degree: int) -> "OSElement":
        return OSElement(arr, degree, ())

    @staticmethod
    def monomial(arr: Arrangement, indices: Sequence[int], coeff=1) -> "OSElement":
        idx = tuple(indices)
        return OSElement.build(arr, len(idx), {idx: frac(coeff)})

    @staticmethod
    def one(arr: Arrangement) -> "OSElement":
        return OSElement.monomial(arr, ())

    # -- ring structure ---------------------------------------------------

    def terms_dict(self) -> Dict[IndexTuple, Fraction]:
        return dict(self.terms)

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        return self.terms_dict().get(tuple(indices), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "OSElement") -> "OSElement":
        if self.arrangement != other.arrangement or self.degree != other.degree:
            raise ValidationError("mismatched elements")
        out = self.terms_dict()
        for t, c in other.terms:
            out[t] = out.get(t, Fraction(0)) + c
        return OSElement.build(self.arrangement, self.degree, out)

    def __neg__(self) -> "OSElement":
        return self.scale(-1)

    def __sub__(self, other: "OSElement") -> "OSElement":
        return self + (-other)

    def scale(self, factor) -> "OSElement":
        f = frac(factor)
        return OSElement.build(
            self.arrangement,
            self.degree,
            {t: c * f for t, c in self.terms},
        )

    def wedge(self, other: "OSElement") -> "OSElement":
        if self.arrangement != other.arrangement:
            raise ValidationError("mismatched arrangements")
        out: Dict[IndexTuple, Fraction] = {}
        for t1, c1 in self.terms:
            for t2, c2 in other.terms:
                merged, sign = _merge_sign(t1, t2)
                if sign == 0:
                    continue
                out[merged] = out.get(merged, Fraction(0)) + sign * c1 * c2
        return OSElement.build(
            self.arrangement, self.degree + other.degree, out
        )


def _merge_sign(t1: IndexTuple, t2: IndexTuple) -> Tuple[IndexTuple, int]:
    """Sorted union of two ascending disjoint tuples and the permutation
    sign of the concatenation; sign 0 on a shared index."""
    if set(t1) & set(t2):
        return (), 0
    inversions = sum(1 for a in t1 for b in t2 if a > b)
    merged = tuple(sorted(t1 + t2))
    return merged, (-1) ** inversions


# ---------------------------------------------------------------------------
# normalization onto the nbc basis


@lru_cache(maxsize=None)
def _relation_rows(
    arr: Arrangement, degree: int
) -> Tuple[Tuple[IndexTuple, ...], Tuple[Tuple[Tuple[IndexTuple, Fraction], ...], ...]]:
    """All degree-k wedge monomial coordinates and the relation rows
    spanning the vanishing subspace in that degree."""
    all_tuples = tuple(itertools.combinations(arr.indices(), degree))
    rows: List[Tuple[Tuple[IndexTuple, Fraction], ...]] = []
    for t in all_tuples:
        if not arr.intersects_affinely(t):
            rows.append(((t, Fraction(1)),))
    others = set(arr.indices())
    for circuit in circuits(arr):
        clen = len(circuit)
        if clen - 1 > degree:
            continue
        free = sorted(others - set(circuit))
        for extra in itertools.combinations(free, degree - (clen - 1)):
            row: Dict[IndexTuple, Fraction] = {}
            for pos in range(clen):
                rest = circuit[:pos] + circuit[pos + 1:]
                merged, sign = _merge_sign(rest, extra)
                if sign == 0:
                    continue
                value = Fraction((-1) ** pos * sign)
                row[merged] = row.get(merged, Fraction(0)) + value
            entries = tuple((t, c) for t, c in sorted(row.items()) if c != 0)
            if entries:
                rows.append(entries)
    return all_tuples, tuple(rows)


def os_relations(arr: Arrangement, degree: int) -> Tuple[OSElement, ...]:
    """The spanning relation elements of the given degree."""
    _, rows = _relation_rows(arr, degree)
    return tuple(OSElement.build(arr, degree, dict(row)) for row in rows)


def os_normalize(x: OSElement) -> OSElement:
    """Rewrite on the nbc monomial basis modulo the relation space."""
    arr = x.arrangement
    k = x.degree
    if x.is_zero():
        return x
    if k == 0:
        return x
    all_tuples, rows = _relation_rows(arr, k)
    basis = nbc_sets(arr, k)
    if all(t in set(basis) for t, _ in x.terms):
        return x
    index_of = {t: i for i, t in enumerate(all_tuples)}
    ncols = len(basis) + len(rows)
    eq_rows = []
    rhs = []
    target = x.terms_dict()
    for t in all_tuples:
        row = [Fraction(0)] * ncols
        for j, b in enumerate(basis):
            if b == t:
                row[j] = Fraction(1)
        for r, entries in enumerate(rows):
            for tt, c in entries:
                if tt == t:
                    row[len(basis) + r] = c
        eq_rows.append(tuple(row))
        rhs.append(target.get(t, Fraction(0)))
    solved = solve_affine(eq_rows, rhs)
    if solved is None:
        raise InternalInvariantError("element lies outside the relation span")
    particular, _ = solved
    out = {b: particular[j] for j, b in enumerate(basis)}
    return OSElement.build(arr, k, out)


# ---------------------------------------------------------------------------
# canonical forms


def canonical_form_nbc(region: Region) -> OSElement:
    """Top-degree element whose coefficient on each nbc monomial is the
    signed iterated boundary of the region along those hyperplanes."""
    arr = region.arrangement
    n = arr.ambient_dim
    out: Dict[IndexTuple, Fraction] = {}
    for indices in nbc_sets(arr, n):
        value = iterated_boundary(region, indices)
        if value:
            out[indices] = Fraction(value)
    return OSElement.build(arr, n, out)


def _ccw_vertex_cycle(region: Region) -> List[Tuple[Vector, frozenset]]:
    vertices = list(region_vertices(region))
    if len(vertices) < 3:
        raise PreconditionError("region is not a polygon")
    m = len(vertices)
    cx = sum((p[0] for p, _ in vertices), Fraction(0)) / m
    cy = sum((p[1] for p, _ in vertices), Fraction(0)) / m

    def half(d):
        if d[1] > 0 or (d[1] == 0 and d[0] > 0):
            return 0
        return 1

    def compare(a, b):
        da = (a[0][0] - cx, a[0][1] - cy)
        db = (b[0][0] - cx, b[0][1] - cy)
        ha, hb = half(da), half(db)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = da[0] * db[1] - da[1] * db[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(vertices, key=cmp_to_key(compare))


def canonical_form_polygon(
    region: Region, ccw_order: Optional[Sequence[int]] = None
) -> OSElement:
    """Cyclic-sum polygon formula; the side list must walk the boundary
    counterclockwise."""
    arr = region.arrangement
    if arr.ambient_dim != 2:
        raise PreconditionError("polygon formula needs a two-dimensional chart")
    if not cell_is_bounded(arr, region.signs):
        raise PreconditionError("polygon formula needs a bounded region")
    cycle = _ccw_vertex_cycle(region)
    m = len(cycle)
    sides: List[int] = []
    for k in range(m):
        _, active_a = cycle[k]
        _, active_b = cycle[(k + 1) % m]
        shared = sorted(active_a & active_b)
        if len(shared) != 1:
            raise InternalInvariantError("ambiguous polygon side")
        sides.append(shared[0])
    given = sides if ccw_order is None else list(ccw_order)
    if len(given) != m or set(given) != set(sides):
        raise ValidationError("side list does not match the polygon's facets")
    shift = sides.index(given[0])
    rotated = sides[shift:] + sides[:shift]
    if rotated != given:
        raise ValidationError("side list is not the counterclockwise order")
    out: Dict[IndexTuple, Fraction] = {}
    for k in range(m):
        a, b = given[k], given[(k + 1) % m]
        if a < b:
            key, sign = (a, b), 1
        else:
            key, sign = (b, a), -1
        out[key] = out.get(key, Fraction(0)) - sign
    element = OSElement.build(arr, 2, out).scale(region.orientation)
    return os_normalize(element)


def canonical_form_simple_polytope(region: Region) -> OSElement:
    """Vertex sum for bounded regions all of whose vertices are simple."""
    arr = region.arrangement
    n = arr.ambient_dim
    if not cell_is_bounded(arr, region.signs):
        raise PreconditionError("vertex formula needs a bounded region")
    sign = (-1) ** (n * (n + 1) // 2) * region.orientation
    out: Dict[IndexTuple, Fraction] = {}
    vertices = region_vertices(region)
    if not vertices:
        raise PreconditionError("region has no vertices")
    for point, active in vertices:
        idx = tuple(sorted(active))
        if len(idx) != n:
            raise PreconditionError(
                f"vertex {list(point)} is not simple: "
                f"hyperplanes {list(idx)} pass through it"
            )
        rows = [
            tuple(region.sign(i) * g for g in arr.functional(i).gradient)
            for i in idx
        ]
        d = det(rows)
        if d == 0:
            raise PreconditionError("degenerate vertex")
        value = sign * (1 if d > 0 else -1)
        out[idx] = out.get(idx, Fraction(0)) + value
    return os_normalize(OSElement.build(arr, n, out))


# ---------------------------------------------------------------------------
# residues


def _residue_raw(x: OSElement, index: int) -> Tuple[OSElement, Restriction]:
    """Monomial residue rule along one hyperplane, without normalization."""
    arr = x.arrangement
    r = restriction(arr, index)
    out: Dict[IndexTuple, Fraction] = {}
    for indices, coeff in x.terms:
        if index not in indices:
            continue
        k = len(indices)
        pos = indices.index(index) + 1
        sign = (-1) ** (k - pos)
        rest = [j for j in indices if j != index]
        mapped = [r.map_index(j) for j in rest]
        if any(m is None for m in mapped):
            continue
        order_sign = _sort_sign_list(mapped)
        if order_sign == 0:
            continue
        key = tuple(sorted(mapped))
        value = coeff * sign * order_sign
        out[key] = out.get(key, Fraction(0)) + value
    return OSElement.build(r.arrangement, x.degree - 1, out), r


def _sort_sign_list(values: List[int]) -> int:
    if len(set(values)) != len(values):
        return 0
    sign = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                sign = -sign
    return sign


def residue(x: OSElement, index: int) -> OSElement:
    """Residue along one hyperplane, as a normalized element of the
    restricted arrangement."""
    raw, _ = _residue_raw(x, index)
    return os_normalize(raw)


@dataclass(frozen=True)
class CornerResidueVector:
    """Iterated corner residues indexed by the nbc top sets."""

    arrangement: Arrangement
    entries: Tuple[Tuple[IndexTuple, Fraction], ...]

    def as_dict(self) -> Dict[IndexTuple, Fraction]:
        return dict(self.entries)

    def value(self, indices: Sequence[int]) -> Fraction:
        return self.as_dict()[tuple(indices)]


def corner_residues(x: OSElement) -> CornerResidueVector:
    """Iterated residues along every nbc top set, largest index first.

    Computed by pure monomial-rule composition, independently of the
    normalization path, so the two can cross-check each other.
    """
    arr = x.arrangement
    n = arr.ambient_dim
    if x.degree != n:
        raise ValidationError("corner residues need a top-degree element")
    out: List[Tuple[IndexTuple, Fraction]] = []
    for corner in nbc_sets(arr, n):
        current = x
        mapping = {i: i for i in arr.indices()}
        value = Fraction(0)
        alive = True
        for original in sorted(corner, reverse=True):
            target = mapping.get(original)
            if target is None:
                alive = False
                break
            current, r = _residue_raw(current, target)
            next_map = {}
            for orig, cur in mapping.items():
                if cur is None or cur == target:
                    next_map[orig] = None
                else:
                    next_map[orig] = r.map_index(cur)
            mapping = next_map
            if current.is_zero():
                alive = False
                break
        if alive:
            value = current.coefficient(())
        out.append((corner, value))
    return CornerResidueVector(arr, tuple(out))


# ---------------------------------------------------------------------------
# rational realizations


def to_rational_form(x: OSElement) -> RationalForm:
    """Expand generators into exact dlog wedges and sum."""
    arr = x.arrangement
    n = arr.ambient_dim
    total = RationalForm.zero(n, x.degree)
    for indices, coeff in x.terms:
        total = total + _monomial_form(arr, indices).scale(coeff)
    return total


def _monomial_form(arr: Arrangement, indices: IndexTuple) -> RationalForm:
    n = arr.ambient_dim
    k = len(indices)
    if k == 0:
        return RationalForm.constant(n, Fraction(1))
    functionals = [arr.functional(i) for i in indices]
    if arr.infinity_mode != "explicit":
        return wedge_of_dlogs(functionals, n)
    f0 = arr.infinity_functional
    total = wedge_of_dlogs(functionals, n)
    for t in range(k):
        swapped = list(functionals)
        swapped[t] = f0
        total = total - wedge_of_dlogs(swapped, n)
    return total


def adjoint_polynomial(form: RationalForm, arr: Arrangement) -> MultiPoly:
    """Homogeneous numerator of a top form over the full hyperplane
    product; degree N-n-1 when nonzero.

    Hyperplanes absent from the form's denominator are multiplied into
    the numerator first; a repeated denominator factor is rejected.
    """
    n = arr.ambient_dim
    N = arr.size
    if form.degree != n or form.chart_dim != n:
        raise ValidationError("adjoint needs a top-degree form on the chart")
    if N - n - 1 < 0:
        raise ValidationError("arrangement has too few hyperplanes for an adjoint")
    if form.is_zero():
        return MultiPoly(n + 1, {})
    numerator = form.components.get(tuple(range(n)))
    if numerator is None or len(form.components) != 1:
        raise ValidationError("form is not a single top component")
    by_locus = {}
    for f, exp in form.denominator:
        by_locus[f.locus_key()] = (f, exp)
    scale = Fraction(1)
    missing: List[LinearFunctional] = []
    for i in arr.indices():
        fi = arr.functional(i)
        key = fi.locus_key()
        if key not in by_locus:
            missing.append(fi)
            continue
        d, exp = by_locus.pop(key)
        if exp != 1:
            raise ValidationError(f"higher-order pole along hyperplane {i}")
        hv_f = fi.homogeneous_vector()
        hv_d = d.homogeneous_vector()
        t = next(j for j, a in enumerate(hv_f) if a != 0)
        scale *= hv_d[t] / hv_f[t]
    if by_locus:
        raise ValidationError("form has poles outside the arrangement")
    adjusted = numerator.scale(Fraction(1) / scale)
    if missing:
        adjusted = adjusted * poly_product([f.to_poly() for f in missing], n)
    target = N - n - 1
    degree = adjusted.total_degree()
    if degree > target:
        raise ValidationError("numerator degree exceeds the adjoint degree")
    lifted = adjusted.homogenize()
    x0 = MultiPoly.variable(n + 1, 0)
    for _ in range(target - degree):
        lifted = lifted * x0
    return lifted


# ---------------------------------------------------------------------------
# products


def product_arrangement(a: Arrangement, b: Arrangement) -> Arrangement:
    if a.infinity_mode != GENERIC or b.infinity_mode != GENERIC:
        raise PreconditionError("products require generic infinity mode")
    p, q = a.ambient_dim, b.ambient_dim
    functionals = [
        LinearFunctional(f.constant, f.gradient + (Fraction(0),) * q)
        for f in a.hyperplanes
    ]
    functionals += [
        LinearFunctional(f.constant, (Fraction(0),) * p + f.gradient)
        for f in b.hyperplanes
    ]
    return Arrangement(ambient_dim=p + q, hyperplanes=tuple(functionals))


def product_form(x: OSElement, y: OSElement) -> OSElement:
    """Wedge of the two lifts on the product arrangement, with the sign
    that matches the product orientation of the factors."""
    arr1, arr2 = x.arrangement, y.arrangement
    product = product_arrangement(arr1, arr2)
    shift = arr1.size
    out: Dict[IndexTuple, Fraction] = {}
    for t1, c1 in x.terms:
        for t2, c2 in y.terms:
            key = t1 + tuple(j + shift for j in t2)
            out[key] = out.get(key, Fraction(0)) + c1 * c2
    sign = (-1) ** (x.degree * y.degree)
    element = OSElement.build(product, x.degree + y.degree, out).scale(sign)
    return os_normalize(element)


# ---------------------------------------------------------------------------
# pushforward and pullback along z = w^N


@dataclass(frozen=True)
class DlogCombination:
    """Rational combination of dlog(var - a) terms plus irreducible
    monic polynomial dlog atoms, on a one-dimensional chart."""

    variable: str
    linear: Tuple[Tuple[Fraction, Fraction], ...]
    atoms: Tuple[Tuple[Tuple[Fraction, ...], Fraction], ...] = ()

    @staticmethod
    def build(variable: str, linear: Dict, atoms: Optional[Dict] = None):
        lin = tuple(
            (frac(a), frac(c))
            for a, c in sorted(linear.items(), key=lambda kv: frac(kv[0]))
            if frac(c) != 0
        )
        at = tuple(
            (tuple(frac(v) for v in poly), frac(c))
            for poly, c in sorted((atoms or {}).items())
            if frac(c) != 0
        )
        return DlogCombination(variable, lin, at)

    def linear_dict(self) -> Dict[Fraction, Fraction]:
        return dict(self.linear)

    def total_residue(self) -> Fraction:
        total = sum((c for _, c in self.linear), Fraction(0))
        for poly, c in self.atoms:
            total += c * (len(poly) - 1)
        return total


def pushforward_power(x: DlogCombination, power: int) -> DlogCombination:
    """Trace along w -> w^N: each dlog(w - a) maps to dlog(z - a^N)."""
    if power < 1:
        raise ValidationError("power must be a positive integer")
    if x.atoms:
        raise ValidationError("pushforward supports plain dlog terms only")
    out: Dict[Fraction, Fraction] = {}
    for a, c in x.linear:
        target = a**power
        out[target] = out.get(target, Fraction(0)) + c
    return DlogCombination.build("z", out)


def pullback_power(x: DlogCombination, power: int) -> DlogCombination:
    """Substitute z = w^N and split off the rational linear factors."""
    if power < 1:
        raise ValidationError("power must be a positive integer")
    if x.atoms:
        raise ValidationError("pullback supports plain dlog terms only")
    linear: Dict[Fraction, Fraction] = {}
    atoms: Dict[Tuple[Fraction, ...], Fraction] = {}
    for a, c in x.linear:
        if a == 0:
            linear[Fraction(0)] = linear.get(Fraction(0), Fraction(0)) + c * power
            continue
        roots = _rational_power_roots(a, power)
        cofactor = _power_poly(a, power)
        for r in roots:
            linear[r] = linear.get(r, Fraction(0)) + c
            cofactor = _divide_linear(cofactor, r)
        if len(cofactor) > 1:
            key = tuple(cofactor)
            atoms[key] = atoms.get(key, Fraction(0)) + c
    return DlogCombination.build("w", linear, atoms)


def _power_poly(a: Fraction, power: int) -> List[Fraction]:
    coeffs = [Fraction(0)] * (power + 1)
    coeffs[0] = -a
    coeffs[power] = Fraction(1)
    return coeffs


def _divide_linear(coeffs: List[Fraction], root: Fraction) -> List[Fraction]:
    """Exact synthetic division of a polynomial by (w - root)."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for k in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[k] + carry
        out[k - 1] = carry
        carry = carry * root
    if coeffs[0] + carry != 0:
        raise InternalInvariantError("claimed root does not divide")
    return out


def _int_nth_root(m: int, power: int) -> Optional[int]:
    if m < 0:
        return None
    if m in (0, 1):
        return m
    low, high = 0, 1
    while high**power < m:
        high *= 2
    while low < high:
        mid = (low + high) // 2
        if mid**power < m:
            low = mid + 1
        else:
            high = mid
    return low if low**power == m else None


def _rational_power_roots(a: Fraction, power: int) -> List[Fraction]:
    """All rational solutions of r^power = a, sorted."""
    negative = a < 0
    mag = -a if negative else a
    p_root = _int_nth_root(mag.numerator, power)
    q_root = _int_nth_root(mag.denominator, power)
    if p_root is None or q_root is None:
        return []
    base = Fraction(p_root, q_root)
    if negative:
        if power % 2 == 1:
            return [-base]
        return []
    if power % 2 == 1:
        return [base]
    return sorted([-base, base])
