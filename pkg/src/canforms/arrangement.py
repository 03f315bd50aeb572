"""Rational hyperplane arrangements in an affine chart of projective space.

An ``Arrangement`` is an ordered list of affine-linear functionals
``f_1, ..., f_N`` on a rational chart of dimension ``n``, together with
a declaration of how the hyperplane at infinity is treated:

* ``generic``: the projective divisor consists of the closures of the N
  listed hyperplanes only.  The chart's plane at infinity is assumed to
  be in general position; log one-forms are emitted as ``dlog f_i`` and
  only suitable sums are forms on projective space.
* ``projective-closure``: the chart's plane at infinity is itself a
  member of the divisor (label 0).  Rank and the flat poset include it.
* ``explicit``: a designated functional ``f_0`` (label 0, visible in the
  chart) joins the divisor, and one-forms are ``dlog(f_i/f_0)``.

Combinatorial data splits along that line: circuits and no-broken-circuit
sets are always computed for the listed hyperplanes 1..N in the affine
chart, while essentiality, the flat poset, and the Moebius rank are
computed projectively over every declared member, including label 0 in
the latter two modes.

Indices are 1-based everywhere in the public interface; label 0 is
reserved for the infinity member.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import PreconditionError, ValidationError
from .exact import (
    LinearFunctional,
    Vector,
    frac,
    invert,
    kernel_basis,
    matrix_rank,
    rref,
    solve_affine,
)
from .linprog import cone_has_nonzero_point, strict_interior_point

GENERIC = "generic"
PROJECTIVE_CLOSURE = "projective-closure"
EXPLICIT = "explicit"

_MODES = (GENERIC, PROJECTIVE_CLOSURE, EXPLICIT)


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    hyperplanes: Tuple[LinearFunctional, ...]
    infinity_mode: str = GENERIC
    infinity_functional: Optional[LinearFunctional] = None
    variables: Tuple[str, ...] = ()
    names: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = self.ambient_dim
        if n < 0:
            raise ValidationError("ambient dimension must be nonnegative")
        if self.infinity_mode not in _MODES:
            raise ValidationError(f"unknown infinity mode {self.infinity_mode!r}")
        if (self.infinity_mode == EXPLICIT) != (self.infinity_functional is not None):
            raise ValidationError("explicit mode requires exactly one named functional")
        if not self.variables:
            object.__setattr__(
                self, "variables", tuple(f"z{j + 1}" for j in range(n))
            )
        if len(self.variables) != n:
            raise ValidationError("variable list does not match ambient dimension")
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"H{i + 1}" for i in range(len(self.hyperplanes)))
            )
        if len(self.names) != len(self.hyperplanes):
            raise ValidationError("hyperplane name list length mismatch")
        seen: Dict[Vector, int] = {}
        pool = list(self.hyperplanes)
        if self.infinity_functional is not None:
            pool.append(self.infinity_functional)
        for idx, f in enumerate(pool):
            if f.dim != n:
                raise ValidationError("hyperplane arity mismatch")
            if all(g == 0 for g in f.gradient):
                raise ValidationError("hyperplane with zero gradient")
            key = f.locus_key()
            if key in seen:
                raise ValidationError(
                    f"hyperplanes {seen[key] + 1} and {idx + 1} share a zero locus"
                )
            seen[key] = idx

    # -- basic accessors ----------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.hyperplanes)

    def functional(self, index: int) -> LinearFunctional:
        """1-based accessor; index 0 is the explicit infinity member."""
        if index == 0:
            if self.infinity_functional is None:
                raise ValidationError("no explicit infinity member")
            return self.infinity_functional
        if not 1 <= index <= self.size:
            raise ValidationError(f"hyperplane index {index} out of range")
        return self.hyperplanes[index - 1]

    def indices(self) -> range:
        return range(1, self.size + 1)

    def members(self) -> List[Tuple[int, Vector]]:
        """Projective divisor members as (label, homogeneous coefficient
        vector); coordinates ordered (x0, x1, ..., xn)."""
        out = [(i, self.functional(i).homogeneous_vector()) for i in self.indices()]
        if self.infinity_mode == PROJECTIVE_CLOSURE:
            infty = (Fraction(1),) + (Fraction(0),) * self.ambient_dim
            out.append((0, infty))
        elif self.infinity_mode == EXPLICIT:
            out.append((0, self.infinity_functional.homogeneous_vector()))
        return out

    def gradient_rows(self, subset: Sequence[int]) -> List[Vector]:
        return [self.functional(i).gradient for i in subset]

    def homogeneous_rows(self, subset: Sequence[int]) -> List[Vector]:
        return [self.functional(i).homogeneous_vector() for i in subset]

    # -- affine intersection data -------------------------------------------

    def grad_rank(self, subset: Sequence[int]) -> int:
        if not subset:
            return 0
        return matrix_rank(self.gradient_rows(subset))

    def homog_rank(self, subset: Sequence[int]) -> int:
        if not subset:
            return 0
        return matrix_rank(self.homogeneous_rows(subset))

    def intersects_affinely(self, subset: Sequence[int]) -> bool:
        """The common affine intersection of the subset is nonempty."""
        if not subset:
            return True
        return self.grad_rank(subset) == self.homog_rank(subset)

    def affine_flat_data(self, subset: Sequence[int]):
        """(basepoint, direction basis) of the affine intersection, or None."""
        if not subset:
            raise ValidationError("empty subset has no defining system")
        rows = self.gradient_rows(subset)
        rhs = [-self.functional(i).constant for i in subset]
        return solve_affine(rows, rhs)


# ---------------------------------------------------------------------------
# flats and the Moebius rank


@dataclass(frozen=True)
class Flat:
    closure_indices: FrozenSet[int]
    dim: int
    kernel_rows: Tuple[Vector, ...]
    basepoint: Optional[Vector]
    direction_basis: Tuple[Vector, ...]

    def is_empty(self) -> bool:
        return self.dim < 0

    def sort_key(self):
        return (-self.dim, tuple(sorted(self.closure_indices)), self.kernel_rows)


@dataclass
class FlatPoset:
    arrangement: Arrangement
    flats: Tuple[Flat, ...]
    moebius_values: Tuple[int, ...]
    essential: bool

    def moebius(self, flat: Flat) -> int:
        return self.moebius_values[self.flats.index(flat)]

    def zero_hat(self) -> Flat:
        return self.flats[0]

    def one_hat(self) -> Flat:
        if not self.essential:
            raise PreconditionError("non-essential arrangement has no top flat")
        return self.flats[-1]

    @staticmethod
    def contains(upper: Flat, lower: Flat) -> bool:
        """True when ``upper`` contains ``lower`` as projective subspaces.

        The empty flat is contained in everything.
        """
        if lower.is_empty():
            return True
        if upper.is_empty():
            return False
        rows = list(upper.kernel_rows)
        base = matrix_rank(rows)
        return matrix_rank(rows + list(lower.kernel_rows)) == base


def _flat_from_kernel(
    arr: Arrangement, kernel: Tuple[Vector, ...], members: List[Tuple[int, Vector]]
) -> Flat:
    n = arr.ambient_dim
    if not kernel:
        return Flat(frozenset(lbl for lbl, _ in members), -1, (), None, ())
    closure = frozenset(
        lbl
        for lbl, vec in members
        if all(sum(a * b for a, b in zip(vec, v)) == 0 for v in kernel)
    )
    dim = len(kernel) - 1
    affine = [v for v in kernel if v[0] != 0]
    basepoint: Optional[Vector] = None
    directions: Tuple[Vector, ...] = ()
    if affine:
        # affine part: functionals vanishing on the flat, solved exactly
        labels = sorted(lbl for lbl in closure if lbl != 0)
        if labels:
            data = arr.affine_flat_data(labels)
            if data is not None:
                basepoint, dirs = data
                directions = tuple(dirs)
        else:
            basepoint = (Fraction(0),) * n
            eye = [
                tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
                for i in range(n)
            ]
            directions = tuple(eye)
    return Flat(closure, dim, kernel, basepoint, directions)


@lru_cache(maxsize=None)
def build_flat_poset(arr: Arrangement) -> FlatPoset:
    """All distinct intersections of divisor members, with Moebius values.

    Flats are projective; the poset is ordered by reverse inclusion with
    the ambient space as bottom.  The empty flat appears exactly when the
    arrangement is essential.
    """
    members = arr.members()
    if not members:
        raise PreconditionError("flat poset needs at least one hyperplane")
    n = arr.ambient_dim
    found: Dict[Tuple[Vector, ...], Flat] = {}
    for size in range(0, len(members) + 1):
        for combo in itertools.combinations(members, size):
            rows = [vec for _, vec in combo]
            kern = tuple(kernel_basis(rows, n + 1))
            if kern not in found:
                found[kern] = _flat_from_kernel(arr, kern, members)
    essential = () in found
    flats = sorted(found.values(), key=Flat.sort_key)
    moebius: List[int] = []
    for i, flat in enumerate(flats):
        if i == 0:
            moebius.append(1)
            continue
        total = 0
        for j in range(i):
            other = flats[j]
            if other is not flat and FlatPoset.contains(other, flat):
                total += moebius[j]
        moebius.append(-total)
    return FlatPoset(arr, tuple(flats), tuple(moebius), essential)


def is_essential(arr: Arrangement) -> bool:
    rows = [vec for _, vec in arr.members()]
    return matrix_rank(rows) == arr.ambient_dim + 1


@lru_cache(maxsize=None)
def combinatorial_rank_moebius(arr: Arrangement) -> int:
    """(-1)^(n-1) mu(0,1) over the projective divisor; 0 when not essential."""
    if not is_essential(arr):
        return 0
    poset = build_flat_poset(arr)
    top = poset.one_hat()
    mu = poset.moebius(top)
    n = arr.ambient_dim
    return (-1) ** (n - 1) * mu


# ---------------------------------------------------------------------------
# circuits and nbc sets (affine chart, listed hyperplanes only)


@lru_cache(maxsize=None)
def circuits(arr: Arrangement) -> Tuple[Tuple[int, ...], ...]:
    """Minimal subsets whose hyperplanes meet in the chart and have
    linearly dependent gradients; lexicographically sorted."""
    n = arr.ambient_dim
    found: List[Tuple[int, ...]] = []
    for size in range(2, min(arr.size, n + 1) + 1):
        for combo in itertools.combinations(arr.indices(), size):
            if any(set(c) <= set(combo) for c in found):
                continue
            if arr.grad_rank(combo) >= size:
                continue
            if not arr.intersects_affinely(combo):
                continue
            found.append(combo)
    return tuple(sorted(found))


def broken_circuits(arr: Arrangement) -> Tuple[Tuple[int, ...], ...]:
    """Each circuit minus its least element; duplicates removed."""
    out = {c[1:] for c in circuits(arr)}
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def nbc_sets(arr: Arrangement, k: int) -> Tuple[Tuple[int, ...], ...]:
    """Size-k subsets with nonempty chart intersection of codimension k
    containing no broken circuit; lexicographically sorted."""
    if k < 0 or k > arr.ambient_dim:
        return ()
    if k == 0:
        return ((),)
    broken = broken_circuits(arr)
    out: List[Tuple[int, ...]] = []
    for combo in itertools.combinations(arr.indices(), k):
        cs = set(combo)
        if any(set(b) <= cs for b in broken):
            continue
        if arr.grad_rank(combo) != k:
            continue
        if not arr.intersects_affinely(combo):
            continue
        out.append(combo)
    return tuple(out)


# ---------------------------------------------------------------------------
# genericity of the chart infinity and bounded regions


def genericity_violation(arr: Arrangement) -> Optional[Tuple[int, ...]]:
    """Smallest subset whose projective intersection exists only at the
    chart's infinity; None when the chart infinity is generic.

    A subset S witnesses a violation when its homogenized rank is at most
    n (the projective flat is nonempty) yet exceeds its gradient rank
    (the affine intersection is empty, e.g. parallels).
    """
    n = arr.ambient_dim
    for size in range(2, arr.size + 1):
        for combo in itertools.combinations(arr.indices(), size):
            hr = arr.homog_rank(combo)
            if hr <= n and arr.grad_rank(combo) < hr:
                return combo
    return None


@dataclass(frozen=True)
class SignVector:
    """Full-support sign assignment with an interior rational witness."""

    entries: Tuple[int, ...]
    witness: Vector

    def __post_init__(self) -> None:
        if any(e not in (1, -1) for e in self.entries):
            raise ValidationError("sign vector entries must be +-1")

    def sign(self, index: int) -> int:
        return self.entries[index - 1]


def sign_vector_at(arr: Arrangement, point: Sequence[Fraction]) -> SignVector:
    pt = tuple(frac(x) for x in point)
    entries = []
    for i in arr.indices():
        v = arr.functional(i).evaluate(pt)
        if v == 0:
            raise PreconditionError(f"point lies on hyperplane {i}")
        entries.append(1 if v > 0 else -1)
    return SignVector(tuple(entries), pt)


def _strict_constraints(arr: Arrangement, entries: Sequence[int]):
    out = []
    for i, s in zip(arr.indices(), entries):
        f = arr.functional(i)
        out.append((tuple(s * g for g in f.gradient), s * f.constant))
    return out


def open_cell_witness(arr: Arrangement, entries: Sequence[int]) -> Optional[Vector]:
    return strict_interior_point(
        _strict_constraints(arr, entries), nvars=arr.ambient_dim
    )


def cell_is_bounded(arr: Arrangement, entries: Sequence[int]) -> bool:
    rows = [
        tuple(s * g for g in arr.functional(i).gradient)
        for i, s in zip(arr.indices(), entries)
    ]
    return cone_has_nonzero_point(rows) is None


@lru_cache(maxsize=None)
def bounded_regions(arr: Arrangement) -> Tuple[SignVector, ...]:
    """Sign vectors of the bounded chambers, each with an interior witness.

    Requires generic infinity mode and a chart infinity generic for the
    divisor, so that the count matches the Moebius rank.
    """
    if arr.infinity_mode != GENERIC:
        raise PreconditionError("bounded regions require generic infinity mode")
    bad = genericity_violation(arr)
    if bad is not None:
        raise PreconditionError(
            "chart infinity is not generic: hyperplanes "
            f"{list(bad)} meet only at infinity"
        )
    out: List[SignVector] = []
    for entries in itertools.product((1, -1), repeat=arr.size):
        witness = open_cell_witness(arr, entries)
        if witness is None:
            continue
        if cell_is_bounded(arr, entries):
            out.append(SignVector(entries, witness))
    return tuple(out)


# ---------------------------------------------------------------------------
# characteristic polynomial (affine flats) for the Zaslavsky cross-check


@lru_cache(maxsize=None)
def characteristic_polynomial(arr: Arrangement) -> Tuple[Fraction, ...]:
    """Coefficients (constant first) of the chart characteristic polynomial.

    Computed by Moebius recursion over the poset of nonempty affine
    flats.  Bounded chamber counts follow by Zaslavsky evaluation, which
    the test suite uses as an independent check on region enumeration.
    """
    n = arr.ambient_dim
    flats: Dict[Tuple, Tuple[int, Tuple]] = {}
    ambient_key = ("ambient",)
    flats[ambient_key] = (n, ())
    for size in range(1, arr.size + 1):
        for combo in itertools.combinations(arr.indices(), size):
            data = arr.affine_flat_data(combo)
            if data is None:
                continue
            basepoint, dirs = data
            key = (basepoint, tuple(dirs))
            flats.setdefault(key, (n - arr.grad_rank(combo), key))
    ordered = sorted(
        flats.items(), key=lambda kv: (-kv[1][0], str(kv[0]))
    )

    def contains(big_key, small_key) -> bool:
        if big_key == ambient_key:
            return True
        if small_key == ambient_key:
            return False
        bp_b, dirs_b = big_key
        bp_s, dirs_s = small_key
        rows = [list(d) for d in dirs_b]
        span_rank = matrix_rank(rows) if rows else 0
        diff = [a - b for a, b in zip(bp_s, bp_b)]
        if any(x != 0 for x in diff):
            if matrix_rank(rows + [diff]) != span_rank:
                return False
        for d in dirs_s:
            if matrix_rank(rows + [list(d)]) != span_rank:
                return False
        return True

    mu: List[int] = []
    for i, (key, (dim, _)) in enumerate(ordered):
        if i == 0:
            mu.append(1)
            continue
        total = 0
        for j in range(i):
            kj, (dj, _) = ordered[j]
            if kj != key and contains(kj, key):
                total += mu[j]
        mu.append(-total)
    coeffs = [Fraction(0)] * (n + 1)
    for (key, (dim, _)), m in zip(ordered, mu):
        coeffs[dim] += m
    return tuple(coeffs)


def evaluate_poly_coeffs(coeffs: Sequence[Fraction], t: Fraction) -> Fraction:
    total = Fraction(0)
    for d, c in enumerate(coeffs):
        total += c * t**d
    return total


# ---------------------------------------------------------------------------
# derived arrangements


@dataclass(frozen=True)
class Restriction:
    """Induced arrangement on a member hyperplane.

    ``index_map`` sends original indices to trace indices (1-based) or
    None for hyperplanes parallel to the support.  ``chart_point`` and
    ``chart_basis`` embed the (n-1)-chart back into the ambient chart;
    the basis order defines the restricted chart's standard orientation.
    """

    arrangement: Arrangement
    support: int
    pivot: int
    index_map: Tuple[Tuple[int, Optional[int]], ...]
    chart_point: Vector
    chart_basis: Tuple[Vector, ...]

    def map_index(self, original: int) -> Optional[int]:
        for src, dst in self.index_map:
            if src == original:
                return dst
        raise ValidationError(f"index {original} not in the restricted map")


@lru_cache(maxsize=None)
def restriction(arr: Arrangement, index: int) -> Restriction:
    """Traces of the remaining hyperplanes on hyperplane ``index``.

    The chart solves the first variable carried by the support with a
    nonzero coefficient; remaining variables keep their ambient order.
    Coincident traces are merged onto the smallest contributing index.
    """
    n = arr.ambient_dim
    if n < 1:
        raise PreconditionError("cannot restrict a zero-dimensional chart")
    f = arr.functional(index)
    pivot = next(j for j, g in enumerate(f.gradient) if g != 0)
    keep = [j for j in range(n) if j != pivot]
    gp = f.gradient[pivot]

    def trace(g: LinearFunctional) -> LinearFunctional:
        const = g.constant - g.gradient[pivot] * f.constant / gp
        grad = tuple(
            g.gradient[j] - g.gradient[pivot] * f.gradient[j] / gp for j in keep
        )
        return LinearFunctional(const, grad)

    traces: List[LinearFunctional] = []
    trace_names: List[str] = []
    locus_to_new: Dict[Vector, int] = {}
    mapping: List[Tuple[int, Optional[int]]] = []
    for i in arr.indices():
        if i == index:
            continue
        t = trace(arr.functional(i))
        if t.is_constant():
            mapping.append((i, None))
            continue
        key = t.locus_key()
        if key in locus_to_new:
            mapping.append((i, locus_to_new[key]))
            continue
        traces.append(t)
        trace_names.append(arr.names[i - 1])
        new_index = len(traces)
        locus_to_new[key] = new_index
        mapping.append((i, new_index))

    mode = arr.infinity_mode
    inf_func = None
    if mode == EXPLICIT:
        t0 = trace(arr.infinity_functional)
        if t0.is_constant():
            mode = GENERIC
        else:
            inf_func = t0
    restricted = Arrangement(
        ambient_dim=n - 1,
        hyperplanes=tuple(traces),
        infinity_mode=mode,
        infinity_functional=inf_func,
        variables=tuple(arr.variables[j] for j in keep),
        names=tuple(trace_names),
    )
    chart_point = tuple(
        -f.constant / gp if j == pivot else Fraction(0) for j in range(n)
    )
    basis = []
    for q in keep:
        vec = [Fraction(0)] * n
        vec[q] = Fraction(1)
        vec[pivot] = -f.gradient[q] / gp
        basis.append(tuple(vec))
    return Restriction(
        restricted, index, pivot, tuple(mapping), chart_point, tuple(basis)
    )


def reorder(arr: Arrangement, new_order: Sequence[int]) -> Arrangement:
    """Relabel the hyperplanes: new slot k holds old ``new_order[k]``."""
    if sorted(new_order) != list(arr.indices()):
        raise ValidationError(
            f"order override {list(new_order)} is not a permutation of "
            f"1..{arr.size}"
        )
    return Arrangement(
        ambient_dim=arr.ambient_dim,
        hyperplanes=tuple(arr.functional(i) for i in new_order),
        infinity_mode=arr.infinity_mode,
        infinity_functional=arr.infinity_functional,
        variables=arr.variables,
        names=tuple(arr.names[i - 1] for i in new_order),
    )


def deletion(arr: Arrangement, index: int) -> Tuple[Arrangement, Dict[int, int]]:
    """Remove one hyperplane, preserving order; returns the index map."""
    if arr.size < 2:
        raise PreconditionError("deletion needs at least two hyperplanes")
    if not 1 <= index <= arr.size:
        raise ValidationError(f"hyperplane index {index} out of range")
    keep = [i for i in arr.indices() if i != index]
    new = Arrangement(
        ambient_dim=arr.ambient_dim,
        hyperplanes=tuple(arr.functional(i) for i in keep),
        infinity_mode=arr.infinity_mode,
        infinity_functional=arr.infinity_functional,
        variables=arr.variables,
        names=tuple(arr.names[i - 1] for i in keep),
    )
    mapping = {i: k + 1 for k, i in enumerate(keep)}
    return new, mapping


def send_to_infinity(arr: Arrangement, index: int) -> Arrangement:
    """Projective chart change placing hyperplane ``index`` at infinity.

    The other members reappear as affine hyperplanes of a
    projective-closure arrangement describing the same divisor.
    """
    n = arr.ambient_dim
    target = arr.functional(index).homogeneous_vector()
    rows: List[Vector] = [target]
    for j in range(n + 1):
        cand = tuple(Fraction(1) if t == j else Fraction(0) for t in range(n + 1))
        if matrix_rank(rows + [cand]) > matrix_rank(rows):
            rows.append(cand)
        if len(rows) == n + 1:
            break
    m_inv = invert(rows)
    # row vector v transforms to v . M^-1 in the new coordinates
    cols = list(zip(*m_inv))
    new_functionals = []
    new_names = []
    for i in arr.indices():
        if i == index:
            continue
        v = arr.functional(i).homogeneous_vector()
        w = tuple(sum(a * b for a, b in zip(v, col)) for col in cols)
        new_functionals.append(LinearFunctional(w[0], w[1:]))
        new_names.append(arr.names[i - 1])
    return Arrangement(
        ambient_dim=n,
        hyperplanes=tuple(new_functionals),
        infinity_mode=PROJECTIVE_CLOSURE,
        variables=tuple(f"w{j + 1}" for j in range(n)),
        names=tuple(new_names),
    )
