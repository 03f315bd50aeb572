"""Oriented regions and faces of a real arrangement with signed boundaries.

A region is a full-dimensional open cell given by a sign vector plus an
orientation relative to the standard chart orientation.  Faces are
tracked by the index set cutting out their support flat, the inherited
sign data, and an ordered basis of the flat's direction space.

The boundary operator follows the outward-normal-first convention: the
induced basis b of a facet is chosen so that (outward normal, b) agrees
with the face's orientation.  A facet exists exactly when the closed
face meets the hyperplane in dimension one less, which is decided by an
exact strict-feasibility test on the smaller flat; hyperplanes vanishing
identically on that flat impose no constraint there.  Iterated
boundaries compose single steps in decreasing index order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .arrangement import (
    Arrangement,
    Restriction,
    cell_is_bounded,
    restriction,
    sign_vector_at,
)
from .errors import PreconditionError, ValidationError
from .exact import LinearFunctional, Vector, det, frac, solve_affine
from .linprog import strict_interior_point

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class Region:
    """Closure of one full-dimensional open cell, with an orientation."""

    arrangement: Arrangement
    signs: Tuple[int, ...]
    witness: Point
    orientation: int = 1

    def __post_init__(self) -> None:
        arr = self.arrangement
        if self.orientation not in (1, -1):
            raise ValidationError("orientation must be +-1")
        if len(self.signs) != arr.size:
            raise ValidationError("sign vector length mismatch")
        if any(s not in (1, -1) for s in self.signs):
            raise ValidationError("sign entries must be +-1")
        pt = tuple(frac(x) for x in self.witness)
        object.__setattr__(self, "witness", pt)
        for i in arr.indices():
            value = arr.functional(i).evaluate(pt)
            if value == 0 or (value > 0) != (self.signs[i - 1] > 0):
                raise ValidationError(
                    f"witness does not satisfy the sign vector at hyperplane {i}"
                )

    def sign(self, index: int) -> int:
        return self.signs[index - 1]

    def reversed(self) -> "Region":
        return Region(self.arrangement, self.signs, self.witness, -self.orientation)


def region_from_point(arr: Arrangement, point: Sequence, orientation: int = 1) -> Region:
    """Region containing the given point; orientation defaults to +1."""
    sv = sign_vector_at(arr, tuple(frac(x) for x in point))
    return Region(arr, sv.entries, sv.witness, orientation)


@dataclass(frozen=True)
class OrientedFace:
    """Closed cell on the flat cut out by ``zero_indices``.

    ``signs`` carries the inherited sign for every other hyperplane;
    entries whose hyperplane happens to contain the support flat are
    inert.  For zero-dimensional faces the orientation lives in
    ``point_sign``; otherwise it lives in the basis order.
    """

    arrangement: Arrangement
    zero_indices: Tuple[int, ...]
    signs: Tuple[Tuple[int, int], ...]
    orientation_basis: Tuple[Vector, ...]
    witness: Point
    point_sign: int = 1

    @property
    def dim(self) -> int:
        return self.arrangement.ambient_dim - len(self.zero_indices)

    def sign_of(self, index: int) -> int:
        for j, s in self.signs:
            if j == index:
                return s
        raise ValidationError(f"hyperplane {index} not constrained on this face")


@lru_cache(maxsize=None)
def _flat_data(arr: Arrangement, indices: Tuple[int, ...]):
    """(basepoint, canonical direction basis) of an affine flat, or None."""
    if not indices:
        n = arr.ambient_dim
        origin = (Fraction(0),) * n
        eye = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
            for i in range(n)
        )
        return origin, eye
    rows = [arr.functional(i).gradient for i in indices]
    rhs = [-arr.functional(i).constant for i in indices]
    data = solve_affine(rows, rhs)
    if data is None:
        return None
    basepoint, dirs = data
    return basepoint, tuple(dirs)


def _coords_in_basis(basis: Sequence[Vector], v: Vector) -> Tuple[Fraction, ...]:
    if not basis:
        raise ValidationError("empty basis")
    rows = [tuple(b[t] for b in basis) for t in range(len(v))]
    data = solve_affine(rows, list(v))
    if data is None:
        raise ValidationError("vector outside the span of the basis")
    particular, kernel = data
    if kernel:
        raise ValidationError("basis is linearly dependent")
    return particular


def region_face(region: Region) -> OrientedFace:
    """The region itself as a top-dimensional oriented face."""
    arr = region.arrangement
    n = arr.ambient_dim
    eye = [
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    ]
    if region.orientation == -1:
        if n == 1:
            eye = [(-Fraction(1),)]
        else:
            eye[0], eye[1] = eye[1], eye[0]
    signs = tuple((i, region.sign(i)) for i in arr.indices())
    return OrientedFace(arr, (), signs, tuple(eye), region.witness)


def partial_boundary(face: OrientedFace, index: int) -> Optional[OrientedFace]:
    """The facet of ``face`` on hyperplane ``index`` with the induced
    orientation, or None when the intersection drops dimension by more
    than one."""
    arr = face.arrangement
    n = arr.ambient_dim
    if not 1 <= index <= arr.size:
        raise ValidationError(f"hyperplane index {index} out of range")
    current = _flat_data(arr, face.zero_indices)
    if current is None:
        raise ValidationError("face has an empty support flat")
    basepoint, dirs = current
    f = arr.functional(index)
    if index in face.zero_indices:
        raise PreconditionError(
            f"hyperplane {index} contains the support flat of the face"
        )
    pair = [sum(a * b for a, b in zip(f.gradient, d)) for d in dirs]
    const = f.evaluate(basepoint)
    if all(p == 0 for p in pair):
        if const == 0:
            raise PreconditionError(
                f"hyperplane {index} contains the support flat of the face"
            )
        return None  # parallel to the flat: no facet
    new_zero = tuple(sorted(face.zero_indices + (index,)))
    sub = _flat_data(arr, new_zero)
    if sub is None:
        return None
    bp, sub_dirs = sub
    m = len(sub_dirs)

    # strict feasibility of the inherited signs on the smaller flat;
    # hyperplanes containing that flat are inert there
    constraints = []
    for j, s in face.signs:
        if j == index:
            continue
        g = arr.functional(j)
        grad_t = tuple(
            s * sum(a * b for a, b in zip(g.gradient, d)) for d in sub_dirs
        )
        c = s * g.evaluate(bp)
        if all(x == 0 for x in grad_t):
            if c == 0:
                continue  # contains the flat: inert
            if c < 0:
                return None
            continue
        constraints.append((grad_t, c))
    t = _strict_point(constraints, m)
    if t is None:
        return None
    witness = tuple(
        b + sum(ta * d[k] for ta, d in zip(t, sub_dirs)) for k, b in enumerate(bp)
    )

    # outward vector: moves off the facet against the face's sign of f
    s_index = face.sign_of(index)
    anchor = next(
        (b for b in face.orientation_basis
         if sum(a * x for a, x in zip(f.gradient, b)) != 0),
        None,
    )
    if anchor is None:
        raise ValidationError("degenerate orientation basis")
    scale = -Fraction(s_index) / sum(a * x for a, x in zip(f.gradient, anchor))
    outward = tuple(scale * x for x in anchor)

    new_signs = tuple((j, s) for j, s in face.signs if j != index)
    if m == 0:
        coeff = _coords_in_basis(face.orientation_basis, outward)[0]
        sign = 1 if coeff > 0 else -1
        return OrientedFace(arr, new_zero, new_signs, (), witness, sign)
    stacked = [_coords_in_basis(face.orientation_basis, outward)]
    for d in sub_dirs:
        stacked.append(_coords_in_basis(face.orientation_basis, d))
    orient = det(stacked)
    basis = list(sub_dirs)
    if orient < 0:
        basis[0] = tuple(-x for x in basis[0])
    return OrientedFace(arr, new_zero, new_signs, tuple(basis), witness)


def _strict_point(constraints, nvars: int):
    return strict_interior_point(constraints, nvars=nvars)


def face_sign_ratio(a: OrientedFace, b: OrientedFace) -> Optional[int]:
    """+1 or -1 when the faces are the same cell up to orientation,
    None when they are different cells."""
    if a.arrangement is not b.arrangement and a.arrangement != b.arrangement:
        return None
    if a.zero_indices != b.zero_indices:
        return None
    if a.dim == 0:
        if a.witness != b.witness:
            return None
        return a.point_sign * b.point_sign
    if set(a.signs) != set(b.signs):
        return None
    rows = [_coords_in_basis(b.orientation_basis, v) for v in a.orientation_basis]
    d = det(rows)
    if d == 0:
        return None
    return 1 if d > 0 else -1


def iterated_boundary(region: Region, index_set: Sequence[int]):
    """Compose single-hyperplane boundaries, largest index first.

    For an index set of full size n the result is the integer
    coefficient of the final point; shorter walks return the final
    oriented face, or None when some step has no facet.
    """
    arr = region.arrangement
    n = arr.ambient_dim
    idx = tuple(sorted(set(index_set)))
    if len(idx) != len(tuple(index_set)):
        raise PreconditionError("boundary index set has repeated entries")
    if not idx:
        raise PreconditionError("boundary index set is empty")
    for i in idx:
        if not 1 <= i <= arr.size:
            raise ValidationError(f"hyperplane index {i} out of range")
    if arr.grad_rank(idx) != len(idx):
        raise PreconditionError("boundary index set is linearly dependent")
    if not arr.intersects_affinely(idx):
        raise PreconditionError("boundary index set has empty intersection")
    face: Optional[OrientedFace] = region_face(region)
    for i in sorted(idx, reverse=True):
        face = partial_boundary(face, i)
        if face is None:
            return 0 if len(idx) == n else None
    if len(idx) == n:
        return face.point_sign
    return face


def vertex_sign_shortcut(region: Region, index_set: Sequence[int]) -> int:
    """Determinant shortcut for the boundary coefficient at a simple vertex.

    Requires the index set to cut out a vertex of the region at which
    exactly those hyperplanes vanish.
    """
    arr = region.arrangement
    n = arr.ambient_dim
    idx = tuple(sorted(set(index_set)))
    if len(idx) != n:
        raise PreconditionError("vertex shortcut needs exactly n hyperplanes")
    data = _flat_data(arr, idx)
    if data is None or len(data[1]) != 0:
        raise PreconditionError("index set does not cut out a single point")
    vertex = data[0]
    active = []
    for j in arr.indices():
        value = arr.functional(j).evaluate(vertex)
        if value == 0:
            active.append(j)
        elif (value > 0) != (region.sign(j) > 0):
            raise PreconditionError("point is not a vertex of the region")
    if tuple(active) != idx:
        raise PreconditionError(
            f"vertex is not simple: hyperplanes {active} all pass through it"
        )
    rows = [
        tuple(region.sign(i) * g for g in arr.functional(i).gradient) for i in idx
    ]
    d = det(rows)
    sign = (-1) ** (n * (n + 1) // 2)
    return region.orientation * sign * (1 if d > 0 else -1)


def region_vertices(region: Region) -> Tuple[Tuple[Point, FrozenSet[int]], ...]:
    """All vertices of the closed region with their active index sets."""
    arr = region.arrangement
    n = arr.ambient_dim
    seen: Dict[Point, FrozenSet[int]] = {}
    for combo in itertools.combinations(arr.indices(), n):
        if arr.grad_rank(combo) != n:
            continue
        data = _flat_data(arr, combo)
        if data is None:
            continue
        point, dirs = data
        if dirs:
            continue
        if point in seen:
            continue
        ok = True
        active = []
        for j in arr.indices():
            value = arr.functional(j).evaluate(point)
            if value == 0:
                active.append(j)
            elif (value > 0) != (region.sign(j) > 0):
                ok = False
                break
        if ok:
            seen[point] = frozenset(active)
    return tuple(sorted(seen.items()))


def facet_indices(region: Region) -> Tuple[int, ...]:
    """Hyperplanes supporting a facet of the region."""
    base = region_face(region)
    out = []
    for i in region.arrangement.indices():
        if partial_boundary(base, i) is not None:
            out.append(i)
    return tuple(out)


def facet_region(region: Region, index: int) -> Optional[Region]:
    """The facet on hyperplane ``index`` as an oriented region of the
    restricted arrangement, or None when there is no facet.

    The facet's orientation is the boundary-induced one, read in the
    restricted chart whose parametrization the restriction provides.
    """
    face = partial_boundary(region_face(region), index)
    if face is None:
        return None
    arr = region.arrangement
    r: Restriction = restriction(arr, index)
    keep = [j for j in range(arr.ambient_dim) if j != r.pivot]
    chart_point = tuple(face.witness[q] for q in keep)
    sub_signs = sign_vector_at(r.arrangement, chart_point)
    rows = [tuple(v[q] for q in keep) for v in face.orientation_basis]
    orient = 1 if det(rows) > 0 else -1
    return Region(r.arrangement, sub_signs.entries, chart_point, orient)


def cut_region(
    region: Region, cut: LinearFunctional
) -> Tuple[Region, Region, Arrangement]:
    """Split a region by a hyperplane through its interior.

    The cut joins the arrangement as the last index; both halves inherit
    the orientation.  The first returned region is the positive side.
    """
    arr = region.arrangement
    if cut.dim != arr.ambient_dim:
        raise ValidationError("cut functional arity mismatch")
    halves = []
    for side in (1, -1):
        constraints = [
            (
                tuple(region.sign(i) * g for g in arr.functional(i).gradient),
                region.sign(i) * arr.functional(i).constant,
            )
            for i in arr.indices()
        ]
        constraints.append(
            (tuple(side * g for g in cut.gradient), side * cut.constant)
        )
        witness = _strict_point(constraints, arr.ambient_dim)
        if witness is None:
            raise PreconditionError("cut hyperplane misses the region interior")
        halves.append(witness)
    name = f"H{arr.size + 1}"
    while name in arr.names:
        name += "x"
    extended = Arrangement(
        ambient_dim=arr.ambient_dim,
        hyperplanes=arr.hyperplanes + (cut,),
        infinity_mode=arr.infinity_mode,
        infinity_functional=arr.infinity_functional,
        variables=arr.variables,
        names=arr.names + (name,),
    )
    plus = Region(
        extended, region.signs + (1,), halves[0], region.orientation
    )
    minus = Region(
        extended, region.signs + (-1,), halves[1], region.orientation
    )
    return plus, minus, extended
