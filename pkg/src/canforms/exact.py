"""Exact rational arithmetic: polynomials, linear functionals, rational
differential forms, and dense rational linear algebra.

Everything here is built on ``fractions.Fraction``, whose normalized
``p/q`` representation (gcd 1, positive denominator) is exactly the
scalar contract the rest of the package relies on.  No floating point
enters any computation.

Representations
---------------
* ``MultiPoly``: sparse multivariate polynomial, ``terms`` maps exponent
  tuples to nonzero ``Fraction`` coefficients.  The zero polynomial has
  an empty term map.  Display and serialization order is graded
  lexicographic, leading term first.
* ``LinearFunctional``: affine-linear map ``constant + gradient . z``.
* ``RationalForm``: a degree ``k`` differential form on a rational chart,
  stored as numerator polynomials indexed by ascending k-subsets of
  chart variables, over one shared denominator kept as a factored list
  of linear forms with positive integer exponents.  Denominators are
  never expanded except transiently inside the cross-multiplication
  equality test.
* ``ExactMatrix``: immutable wrapper for a dense Fraction matrix with
  cached reduced row echelon data.

Equality of rational forms is decided by cross multiplication of
numerators against expanded denominator products, so it is independent
of how either side happens to be factored.  Simplification never
computes polynomial gcds; the only cancellation performed is exact
division of every numerator by a linear denominator factor, which is
all that canonical-form arithmetic needs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ValidationError

Exponent = Tuple[int, ...]
Vector = Tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(value) -> Fraction:
    """Coerce ints, strings like '3/7', and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValidationError(f"not an exact rational: {value!r}")


def grlex_key(exp: Exponent) -> Tuple[int, Exponent]:
    return (sum(exp), exp)


# ---------------------------------------------------------------------------
# polynomials


@dataclass
class MultiPoly:
    """Sparse polynomial in ``num_vars`` variables over Q."""

    num_vars: int
    terms: Dict[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: Dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            if len(exp) != self.num_vars:
                raise ValidationError(
                    f"exponent {exp} has wrong arity for {self.num_vars} variables"
                )
            c = frac(coeff)
            if c != 0:
                clean[tuple(int(e) for e in exp)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(num_vars: int, value) -> "MultiPoly":
        c = frac(value)
        if c == 0:
            return MultiPoly(num_vars, {})
        return MultiPoly(num_vars, {(0,) * num_vars: c})

    @staticmethod
    def variable(num_vars: int, index: int) -> "MultiPoly":
        exp = tuple(1 if j == index else 0 for j in range(num_vars))
        return MultiPoly(num_vars, {exp: ONE})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.num_vars != other.num_vars:
            raise ValidationError("polynomial arity mismatch")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, ZERO) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly(self.num_vars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, ZERO) + c1 * c2
                if s == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return MultiPoly(self.num_vars, out)

    def scale(self, value) -> "MultiPoly":
        c = frac(value)
        if c == 0:
            return MultiPoly(self.num_vars, {})
        return MultiPoly(self.num_vars, {e: k * c for e, k in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.num_vars:
            raise ValidationError("evaluation point arity mismatch")
        total = ZERO
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x ** e
            total += v
        return total

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def homogenize(self, degree: Optional[int] = None) -> "MultiPoly":
        """Homogenize with one extra leading variable.

        The new variable sits at index 0.  ``degree`` defaults to the total
        degree of the polynomial; a larger value pads with extra powers.
        """
        if self.is_zero():
            return MultiPoly(self.num_vars + 1, {})
        d = self.total_degree() if degree is None else degree
        if d < self.total_degree():
            raise ValidationError("homogenization degree below total degree")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            out[(d - sum(exp),) + exp] = c
        return MultiPoly(self.num_vars + 1, out)


def poly_product(factors: Iterable[MultiPoly], num_vars: int) -> MultiPoly:
    out = MultiPoly.const(num_vars, 1)
    for f in factors:
        out = out * f
    return out


def exact_divide(num: MultiPoly, lin: "LinearFunctional") -> Optional[MultiPoly]:
    """Divide ``num`` by the linear form ``lin``; None when not divisible.

    Synthetic division in the first variable carried by ``lin`` with a
    nonzero coefficient.  The remainder is a polynomial without that
    variable; divisibility means the remainder is identically zero.
    """
    n = num.num_vars
    if len(lin.gradient) != n:
        raise ValidationError("divisor arity mismatch")
    pivot = next((j for j, g in enumerate(lin.gradient) if g != 0), None)
    if pivot is None:
        raise ValidationError("division by a constant functional")
    a = lin.gradient[pivot]
    # rest = lin - a*z_pivot, as a polynomial
    rest_terms: Dict[Exponent, Fraction] = {}
    if lin.constant != 0:
        rest_terms[(0,) * n] = lin.constant
    for j, g in enumerate(lin.gradient):
        if j != pivot and g != 0:
            rest_terms[tuple(1 if t == j else 0 for t in range(n))] = g
    rest = MultiPoly(n, rest_terms)

    # bucket num by pivot degree
    buckets: Dict[int, MultiPoly] = {}
    for exp, c in num.terms.items():
        d = exp[pivot]
        stripped = exp[:pivot] + (0,) + exp[pivot + 1:]
        b = buckets.setdefault(d, MultiPoly(n, {}))
        b.terms[stripped] = b.terms.get(stripped, ZERO) + c
    buckets = {d: MultiPoly(n, b.terms) for d, b in buckets.items()}
    if not buckets:
        return MultiPoly(n, {})
    top = max(buckets)
    quotient = MultiPoly(n, {})
    carry = {d: buckets.get(d, MultiPoly(n, {})) for d in range(top + 1)}
    for d in range(top, 0, -1):
        q_d = carry[d].scale(Fraction(1, 1) / a)
        # attach pivot^(d-1) to q_d
        shifted: Dict[Exponent, Fraction] = {}
        for exp, c in q_d.terms.items():
            e = list(exp)
            e[pivot] += d - 1
            shifted[tuple(e)] = c
        quotient = quotient + MultiPoly(n, shifted)
        carry[d - 1] = carry[d - 1] - q_d * rest
    remainder = carry[0]
    if remainder.is_zero():
        return quotient
    return None


# ---------------------------------------------------------------------------
# linear functionals


@dataclass(frozen=True)
class LinearFunctional:
    """Affine-linear functional ``constant + gradient . z``."""

    constant: Fraction
    gradient: Vector

    def __post_init__(self) -> None:
        object.__setattr__(self, "constant", frac(self.constant))
        object.__setattr__(self, "gradient", tuple(frac(g) for g in self.gradient))

    @property
    def dim(self) -> int:
        return len(self.gradient)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.dim:
            raise ValidationError("point arity mismatch")
        return self.constant + sum(g * x for g, x in zip(self.gradient, point))

    def is_constant(self) -> bool:
        return all(g == 0 for g in self.gradient)

    def homogeneous_vector(self) -> Vector:
        """Coefficient vector (constant, gradient...) in chart-closure coords."""
        return (self.constant,) + self.gradient

    def locus_key(self) -> Vector:
        """Canonical representative of the zero locus: first nonzero
        homogeneous coefficient scaled to 1."""
        vec = self.homogeneous_vector()
        lead = next((v for v in vec if v != 0), None)
        if lead is None:
            raise ValidationError("zero functional has no locus")
        return tuple(v / lead for v in vec)

    def to_poly(self, num_vars: Optional[int] = None) -> MultiPoly:
        n = self.dim if num_vars is None else num_vars
        terms: Dict[Exponent, Fraction] = {}
        if self.constant != 0:
            terms[(0,) * n] = self.constant
        for j, g in enumerate(self.gradient):
            if g != 0:
                terms[tuple(1 if t == j else 0 for t in range(n))] = g
        return MultiPoly(n, terms)

    def scale(self, value) -> "LinearFunctional":
        c = frac(value)
        if c == 0:
            raise ValidationError("cannot scale a functional by zero")
        return LinearFunctional(self.constant * c, tuple(g * c for g in self.gradient))


# ---------------------------------------------------------------------------
# dense rational linear algebra


def rref(rows: Sequence[Sequence[Fraction]]) -> Tuple[List[List[Fraction]], int, List[int]]:
    """Reduced row echelon form.

    Deterministic: scan columns left to right, pick the first row with a
    nonzero entry, normalize the pivot to 1, eliminate above and below.
    Returns (reduced rows, rank, pivot column indices).
    """
    mat = [[frac(x) for x in row] for row in rows]
    if not mat:
        return [], 0, []
    ncols = len(mat[0])
    for row in mat:
        if len(row) != ncols:
            raise ValidationError("ragged matrix")
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        sel = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        pv = mat[r][col]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat, r, pivots


def matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    return rref(rows)[1]


def kernel_basis(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> List[Vector]:
    """Canonical (row-reduced) basis of the right null space."""
    rows = list(rows)
    if not rows:
        if ncols is None:
            raise ValidationError("kernel of an empty matrix needs ncols")
        eye = [tuple(ONE if i == j else ZERO for j in range(ncols)) for i in range(ncols)]
        return eye
    n = len(rows[0]) if ncols is None else ncols
    red, rank, pivots = rref(rows)
    free = [j for j in range(n) if j not in pivots]
    basis: List[List[Fraction]] = []
    for j in free:
        vec = [ZERO] * n
        vec[j] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -red[r][j]
        basis.append(vec)
    if not basis:
        return []
    reduced, _, _ = rref(basis)
    return [tuple(row) for row in reduced if any(x != 0 for x in row)]


def solve_affine(grad_rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """Solve ``G x = rhs`` exactly.

    Returns (particular solution with free variables set to zero, kernel
    basis rows) or None when inconsistent.
    """
    grad_rows = list(grad_rows)
    if not grad_rows:
        raise ValidationError("empty system")
    n = len(grad_rows[0])
    aug = [list(row) + [frac(b)] for row, b in zip(grad_rows, rhs)]
    red, rank, pivots = rref(aug)
    if n in pivots:
        return None
    point = [ZERO] * n
    for r, p in enumerate(pivots):
        point[p] = red[r][n]
    return tuple(point), kernel_basis(grad_rows, n)


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable Fraction matrix with cached echelon data."""

    rows: Tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "rows", tuple(tuple(frac(x) for x in row) for row in self.rows)
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def rref(self) -> "ExactMatrix":
        red, _, _ = rref(self.rows)
        return ExactMatrix(tuple(tuple(r) for r in red))

    def rank(self) -> int:
        return matrix_rank(self.rows)

    def kernel(self) -> Tuple[Vector, ...]:
        return tuple(kernel_basis(self.rows))


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    mat = [[frac(x) for x in row] for row in rows]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValidationError("determinant of a non-square matrix")
    sign = 1
    out = ONE
    for col in range(n):
        sel = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if sel is None:
            return ZERO
        if sel != col:
            mat[col], mat[sel] = mat[sel], mat[col]
            sign = -sign
        pv = mat[col][col]
        out *= pv
        for i in range(col + 1, n):
            if mat[i][col] != 0:
                f = mat[i][col] / pv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return out * sign


def invert(rows: Sequence[Sequence[Fraction]]) -> List[Vector]:
    mat = [list(r) for r in rows]
    n = len(mat)
    aug = [list(mat[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    red, rank, _ = rref(aug)
    if rank < n:
        raise ValidationError("matrix not invertible")
    return [tuple(red[i][n:]) for i in range(n)]


# ---------------------------------------------------------------------------
# rational differential forms


VarSubset = Tuple[int, ...]
DenomFactor = Tuple[LinearFunctional, int]


def _factor_sort_key(factor: DenomFactor):
    lin, exp = factor
    return (lin.gradient, lin.constant, exp)


@dataclass
class RationalForm:
    """Degree-k rational differential form on an n-dimensional chart.

    ``components`` maps ascending k-subsets of variable indices (0-based)
    to numerator polynomials; all components share ``denominator``, a
    sorted tuple of (linear functional, positive exponent) pairs.  The
    zero form has an empty component map.
    """

    chart_dim: int
    degree: int
    components: Dict[VarSubset, MultiPoly] = field(default_factory=dict)
    denominator: Tuple[DenomFactor, ...] = ()

    def __post_init__(self) -> None:
        if not (0 <= self.degree <= self.chart_dim):
            raise ValidationError("form degree out of range")
        clean: Dict[VarSubset, MultiPoly] = {}
        for subset, poly in self.components.items():
            sub = tuple(subset)
            if len(sub) != self.degree or list(sub) != sorted(set(sub)):
                raise ValidationError(f"bad differential subset {subset}")
            if any(not 0 <= v < self.chart_dim for v in sub):
                raise ValidationError(f"differential index out of range in {subset}")
            if poly.num_vars != self.chart_dim:
                raise ValidationError("numerator arity mismatch")
            if not poly.is_zero():
                clean[sub] = poly
        self.components = clean
        merged: Dict[Vector, Tuple[LinearFunctional, int]] = {}
        for lin, exp in self.denominator:
            if exp <= 0:
                raise ValidationError("denominator exponents must be positive")
            key = lin.homogeneous_vector()
            if key in merged:
                merged[key] = (merged[key][0], merged[key][1] + exp)
            else:
                merged[key] = (lin, exp)
        self.denominator = tuple(sorted(merged.values(), key=_factor_sort_key))
        if not self.components:
            self.denominator = ()

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(chart_dim: int, degree: int) -> "RationalForm":
        return RationalForm(chart_dim, degree, {}, ())

    @staticmethod
    def constant(chart_dim: int, value) -> "RationalForm":
        c = frac(value)
        if c == 0:
            return RationalForm.zero(chart_dim, 0)
        return RationalForm(chart_dim, 0, {(): MultiPoly.const(chart_dim, c)}, ())

    @staticmethod
    def dlog(lin: LinearFunctional) -> "RationalForm":
        """dlog(lin) = d(lin)/lin; zero for constant functionals."""
        n = lin.dim
        if lin.is_constant():
            return RationalForm.zero(n, 1)
        comps = {
            (j,): MultiPoly.const(n, g)
            for j, g in enumerate(lin.gradient)
            if g != 0
        }
        return RationalForm(n, 1, comps, ((lin, 1),))

    @staticmethod
    def dlog_ratio(num: LinearFunctional, den: LinearFunctional) -> "RationalForm":
        return RationalForm.dlog(num) - RationalForm.dlog(den)

    # -- helpers -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def denominator_poly(self) -> MultiPoly:
        return poly_product(
            (lin.to_poly() for lin, e in self.denominator for _ in range(e)),
            self.chart_dim,
        )

    def _scaled_to_denominator(self, target: Tuple[DenomFactor, ...]) -> Dict[VarSubset, MultiPoly]:
        """Rewrite numerators over a denominator that is a superset of ours."""
        have = {lin.homogeneous_vector(): e for lin, e in self.denominator}
        extra: List[MultiPoly] = []
        for lin, e in target:
            need = e - have.get(lin.homogeneous_vector(), 0)
            if need < 0:
                raise ValidationError("target denominator is not a superset")
            extra.extend(lin.to_poly() for _ in range(need))
        mult = poly_product(extra, self.chart_dim)
        return {sub: poly * mult for sub, poly in self.components.items()}

    @staticmethod
    def _merge_denominators(a: Tuple[DenomFactor, ...], b: Tuple[DenomFactor, ...]):
        merged: Dict[Vector, Tuple[LinearFunctional, int]] = {}
        for lin, e in a:
            merged[lin.homogeneous_vector()] = (lin, e)
        for lin, e in b:
            key = lin.homogeneous_vector()
            if key in merged:
                merged[key] = (merged[key][0], max(merged[key][1], e))
            else:
                merged[key] = (lin, e)
        return tuple(sorted(merged.values(), key=_factor_sort_key))

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "RationalForm") -> None:
        if self.chart_dim != other.chart_dim:
            raise ValidationError("chart dimension mismatch")
        if self.degree != other.degree:
            raise ValidationError("form degree mismatch")

    def __add__(self, other: "RationalForm") -> "RationalForm":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        denom = self._merge_denominators(self.denominator, other.denominator)
        mine = self._scaled_to_denominator(denom)
        theirs = other._scaled_to_denominator(denom)
        out: Dict[VarSubset, MultiPoly] = dict(mine)
        for sub, poly in theirs.items():
            out[sub] = out.get(sub, MultiPoly(self.chart_dim, {})) + poly
        return RationalForm(self.chart_dim, self.degree, out, denom).cancel()

    def __neg__(self) -> "RationalForm":
        return RationalForm(
            self.chart_dim,
            self.degree,
            {s: -p for s, p in self.components.items()},
            self.denominator,
        )

    def __sub__(self, other: "RationalForm") -> "RationalForm":
        return self + (-other)

    def scale(self, value) -> "RationalForm":
        c = frac(value)
        if c == 0:
            return RationalForm.zero(self.chart_dim, self.degree)
        return RationalForm(
            self.chart_dim,
            self.degree,
            {s: p.scale(c) for s, p in self.components.items()},
            self.denominator,
        )

    def wedge(self, other: "RationalForm") -> "RationalForm":
        if self.chart_dim != other.chart_dim:
            raise ValidationError("chart dimension mismatch")
        k = self.degree + other.degree
        if k > self.chart_dim:
            raise ValidationError("wedge degree exceeds chart dimension")
        out: Dict[VarSubset, MultiPoly] = {}
        for s1, p1 in self.components.items():
            for s2, p2 in other.components.items():
                if set(s1) & set(s2):
                    continue
                combined = s1 + s2
                sign = _sort_sign(combined)
                sub = tuple(sorted(combined))
                contrib = (p1 * p2).scale(sign)
                out[sub] = out.get(sub, MultiPoly(self.chart_dim, {})) + contrib
        denom = self._merge_sum_denominators(other)
        return RationalForm(self.chart_dim, k, out, denom).cancel()

    def _merge_sum_denominators(self, other: "RationalForm"):
        merged: Dict[Vector, Tuple[LinearFunctional, int]] = {}
        for lin, e in self.denominator:
            merged[lin.homogeneous_vector()] = (lin, e)
        for lin, e in other.denominator:
            key = lin.homogeneous_vector()
            if key in merged:
                merged[key] = (merged[key][0], merged[key][1] + e)
            else:
                merged[key] = (lin, e)
        return tuple(sorted(merged.values(), key=_factor_sort_key))

    def cancel(self) -> "RationalForm":
        """Strip denominator factors that divide every numerator exactly."""
        if self.is_zero():
            return RationalForm.zero(self.chart_dim, self.degree)
        comps = dict(self.components)
        denom = list(self.denominator)
        changed = True
        while changed:
            changed = False
            for idx, (lin, exp) in enumerate(denom):
                quotients: Dict[VarSubset, MultiPoly] = {}
                ok = True
                for sub, poly in comps.items():
                    q = exact_divide(poly, lin)
                    if q is None:
                        ok = False
                        break
                    quotients[sub] = q
                if ok:
                    comps = quotients
                    if exp == 1:
                        denom.pop(idx)
                    else:
                        denom[idx] = (lin, exp - 1)
                    changed = True
                    break
        return RationalForm(self.chart_dim, self.degree, comps, tuple(denom))

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalForm):
            return NotImplemented
        if self.chart_dim != other.chart_dim or self.degree != other.degree:
            return False
        d1 = self.denominator_poly()
        d2 = other.denominator_poly()
        subs = set(self.components) | set(other.components)
        zero = MultiPoly(self.chart_dim, {})
        for sub in subs:
            n1 = self.components.get(sub, zero)
            n2 = other.components.get(sub, zero)
            if n1 * d2 != n2 * d1:
                return False
        return True

    def evaluate(self, point: Sequence[Fraction]) -> Dict[VarSubset, Fraction]:
        """Componentwise value at a point off every denominator locus."""
        den = ONE
        for lin, e in self.denominator:
            v = lin.evaluate(point)
            if v == 0:
                raise ValidationError("evaluation point lies on a pole")
            den *= v ** e
        return {sub: poly.evaluate(point) / den for sub, poly in self.components.items()}


def _sort_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 on repeats."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0
    sign = 1
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] > items[j]:
                sign = -sign
    return sign


def wedge_of_dlogs(
    functionals: Sequence[LinearFunctional], chart_dim: int
) -> RationalForm:
    """Expand dlog f_1 ^ ... ^ dlog f_k in one pass.

    The numerator of each chart component is the corresponding gradient
    minor, a constant, so the result needs no cancellation.
    """
    k = len(functionals)
    if k == 0:
        return RationalForm.constant(chart_dim, 1)
    if any(f.is_constant() for f in functionals):
        return RationalForm.zero(chart_dim, k)
    if k > chart_dim:
        raise ValidationError("more dlog factors than chart dimension")
    comps: Dict[VarSubset, MultiPoly] = {}
    for sub in itertools.combinations(range(chart_dim), k):
        minor = [[f.gradient[j] for j in sub] for f in functionals]
        value = det(minor)
        if value != 0:
            comps[sub] = MultiPoly.const(chart_dim, value)
    denom = tuple((f, 1) for f in functionals)
    return RationalForm(chart_dim, k, comps, denom)
