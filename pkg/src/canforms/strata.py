"""Dual complexes of boundary divisors and closed-form rank and genus
calculators.

The dual complex has one vertex per irreducible component and one
k-simplex per connected component of each (k+1)-fold intersection, with
attaching maps given by inclusions.  Its reduced rational homology in
degree n-1 computes the combinatorial rank in the normal crossing case.
Strata are supplied as combinatorial data; no algebraic geometry is
performed here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import InternalInvariantError, PreconditionError, ValidationError
from .exact import matrix_rank

Subset = Tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    """One connected component of a multiple intersection."""

    name: str
    faces: Tuple[Tuple[Subset, str], ...] = ()

    def face_map(self) -> Dict[Subset, str]:
        return dict(self.faces)


@dataclass(frozen=True)
class StrataInput:
    components: Tuple[str, ...]
    strata: Tuple[Tuple[Subset, Tuple[Stratum, ...]], ...] = ()

    @staticmethod
    def build(components: Sequence[str], strata: Dict) -> "StrataInput":
        packed = []
        for subset in sorted(strata, key=lambda s: (len(s), s)):
            entries = []
            for item in strata[subset]:
                if isinstance(item, Stratum):
                    entries.append(item)
                else:
                    name, faces = item
                    packed_faces = tuple(sorted(
                        (tuple(k), v) for k, v in faces.items()
                    ))
                    entries.append(Stratum(name, packed_faces))
            packed.append((tuple(subset), tuple(entries)))
        return StrataInput(tuple(components), tuple(packed))

    def strata_map(self) -> Dict[Subset, Tuple[Stratum, ...]]:
        return dict(self.strata)

    def validate(self) -> None:
        m = len(self.components)
        if m == 0:
            raise ValidationError("no components given")
        if len(set(self.components)) != m:
            raise ValidationError("component names must be distinct")
        table = self.strata_map()
        names: Dict[Subset, List[str]] = {
            (i,): [self.components[i]] for i in range(m)
        }
        for subset, entries in sorted(table.items(), key=lambda kv: len(kv[0])):
            if len(subset) < 2:
                raise ValidationError(
                    "singleton strata are implicit; list intersections only"
                )
            if list(subset) != sorted(set(subset)):
                raise ValidationError(f"stratum subset {list(subset)} not sorted")
            if any(not 0 <= i < m for i in subset):
                raise ValidationError(f"component index out of range in {list(subset)}")
            bucket = []
            for stratum in entries:
                fm = stratum.face_map()
                expected = {
                    tuple(s for s in subset if s != drop) for drop in subset
                }
                if set(fm) != expected:
                    raise ValidationError(
                        f"stratum {stratum.name!r} of {list(subset)} has "
                        "inconsistent face data"
                    )
                for sub, target in fm.items():
                    if target not in names.get(sub, []):
                        raise ValidationError(
                            f"stratum {stratum.name!r} of {list(subset)} refers "
                            f"to unknown stratum {target!r} of {list(sub)}"
                        )
                if stratum.name in bucket:
                    raise ValidationError(
                        f"duplicate stratum name {stratum.name!r} in {list(subset)}"
                    )
                bucket.append(stratum.name)
            names[subset] = bucket


@dataclass
class DeltaComplex:
    """Simplices by dimension with ordered attaching faces.

    ``attach[k][s]`` lists, for the s-th k-simplex, the indices of its
    k+1 codimension-one faces in the order of omitted vertices.
    """

    labels: Dict[int, List[str]] = field(default_factory=dict)
    attach: Dict[int, List[Tuple[int, ...]]] = field(default_factory=dict)

    def dims(self) -> List[int]:
        return sorted(d for d, sims in self.labels.items() if sims)

    def count(self, dim: int) -> int:
        return len(self.labels.get(dim, []))

    def boundary_matrix(self, dim: int) -> List[Tuple[Fraction, ...]]:
        """Rows indexed by dim-simplices, columns by (dim-1)-simplices."""
        rows = []
        lower = self.count(dim - 1)
        for faces in self.attach.get(dim, []):
            row = [Fraction(0)] * lower
            for j, target in enumerate(faces):
                row[target] += Fraction((-1) ** j)
            rows.append(tuple(row))
        return rows

    def verify_chain_complex(self) -> None:
        for dim in self.dims():
            if dim < 2:
                continue
            d_high = self.boundary_matrix(dim)
            d_low = self.boundary_matrix(dim - 1)
            for row in d_high:
                composed = [Fraction(0)] * self.count(dim - 2)
                for j, c in enumerate(row):
                    if c == 0:
                        continue
                    for t, c2 in enumerate(d_low[j]):
                        composed[t] += c * c2
                if any(v != 0 for v in composed):
                    raise InternalInvariantError("boundary squared is nonzero")


def dual_complex(strata: StrataInput) -> DeltaComplex:
    """Delta complex with one k-simplex per stratum of a (k+1)-fold
    intersection."""
    strata.validate()
    complex_ = DeltaComplex()
    m = len(strata.components)
    position: Dict[Tuple[Subset, str], int] = {}
    complex_.labels[0] = list(strata.components)
    complex_.attach[0] = [() for _ in range(m)]
    for i in range(m):
        position[((i,), strata.components[i])] = i
    table = strata.strata_map()
    for subset in sorted(table, key=lambda s: (len(s), s)):
        dim = len(subset) - 1
        complex_.labels.setdefault(dim, [])
        complex_.attach.setdefault(dim, [])
        for stratum in table[subset]:
            fm = stratum.face_map()
            faces = []
            for drop in subset:  # omitted vertex in ascending order
                sub = tuple(s for s in subset if s != drop)
                faces.append(position[(sub, fm[sub])])
            idx = len(complex_.labels[dim])
            complex_.labels[dim].append(stratum.name)
            complex_.attach[dim].append(tuple(faces))
            position[(subset, stratum.name)] = idx
    complex_.verify_chain_complex()
    return complex_


@dataclass(frozen=True)
class HomologySummary:
    reduced: Tuple[int, ...]
    euler: int

    def __iter__(self):
        return iter(self.reduced)


def reduced_homology_dims(complex_: DeltaComplex) -> HomologySummary:
    """Reduced rational homology dimensions plus the Euler characteristic."""
    dims = complex_.dims()
    if not dims and complex_.count(0) == 0:
        return HomologySummary((), 0)
    top = max(dims)
    counts = [complex_.count(k) for k in range(top + 1)]
    ranks = [0] * (top + 2)
    for k in range(1, top + 1):
        rows = complex_.boundary_matrix(k)
        ranks[k] = matrix_rank([list(r) for r in rows]) if rows else 0
    homology = []
    for k in range(top + 1):
        homology.append(counts[k] - ranks[k] - ranks[k + 1])
    reduced = list(homology)
    reduced[0] -= 1
    euler = sum((-1) ** k * c for k, c in enumerate(counts))
    check = sum((-1) ** k * h for k, h in enumerate(homology))
    if euler != check:
        raise InternalInvariantError("Euler characteristic mismatch")
    return HomologySummary(tuple(reduced), euler)


def simplex_boundary_input(n: int) -> StrataInput:
    """Strata of n+1 coordinate hyperplanes in projective n-space: every
    intersection of up to n of them is nonempty and connected."""
    if n < 1:
        raise ValidationError("dimension must be positive")
    components = [f"Y{i}" for i in range(n + 1)]
    strata: Dict[Subset, List] = {}
    for size in range(2, n + 1):
        for subset in itertools.combinations(range(n + 1), size):
            faces = {}
            for drop in subset:
                sub = tuple(s for s in subset if s != drop)
                faces[sub] = _stratum_name(components, sub)
            strata[subset] = [(_stratum_name(components, subset), faces)]
    return StrataInput.build(components, strata)


def _stratum_name(components: List[str], subset: Subset) -> str:
    if len(subset) == 1:
        return components[subset[0]]
    return "Y" + "".join(str(i) for i in subset)


# ---------------------------------------------------------------------------
# closed-form calculators


def curve_rank(branch_numbers: Sequence[Tuple[str, int]], k: int) -> int:
    """Rank of a connected plane curve from its local branch counts."""
    if k <= 0:
        raise ValidationError("component count must be positive")
    total = 0
    for label, r in branch_numbers:
        if r < 1:
            raise ValidationError(f"branch number at {label!r} must be >= 1")
        total += r - 1
    return total - (k - 1)


def curve_rank_relative(cr_curve: int, s: int) -> int:
    """Relative rank with s marked points on the curve."""
    if s < 0:
        raise ValidationError("point count cannot be negative")
    if s == 0:
        raise PreconditionError(
            "no marked points: the absolute rank applies unchanged"
        )
    return cr_curve + s - 1


def genus_plane_curve(degree: int, deltas: Sequence[int]) -> int:
    """Geometric genus of a plane curve from its delta invariants."""
    if degree < 1:
        raise ValidationError("degree must be positive")
    if any(d < 0 for d in deltas):
        raise ValidationError("delta invariants cannot be negative")
    g = (degree - 1) * (degree - 2) // 2 - sum(deltas)
    if g < 0:
        raise ValidationError(
            "delta invariants exceed the arithmetic genus: inconsistent input"
        )
    return g


def genus_smooth_hypersurface(n: int, degree: int) -> int:
    """Genus of a smooth degree-d hypersurface in projective n-space."""
    if n < 1 or degree < 1:
        raise ValidationError("dimension and degree must be positive")
    return math.comb(degree - 1, n)


def logforms_dim_ncd(n: int, degree: int) -> int:
    """Combinatorial rank of a degree-d normal crossing divisor in
    projective n-space."""
    if n < 1 or degree < 1:
        raise ValidationError("dimension and degree must be positive")
    return math.comb(degree - 1, n)
