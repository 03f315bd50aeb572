"""Exact linear programming over the rationals.

A small two-phase simplex on dense Fraction tableaus.  Bland's smallest
index rule is used for both the entering and the leaving variable, which
guarantees termination without any perturbation, and every pivot is
exact, so feasibility answers are decisions, not estimates.

The driver ``lp_max`` handles free (sign-unrestricted) variables by the
usual split ``x = u - v``.  Problem sizes in this package are tiny
(never more than a few dozen constraints), so no sparsity or revised
simplex machinery is warranted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import InternalInvariantError, ValidationError

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: Optional[Tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None


def _pivot(tab: List[List[Fraction]], basis: List[int], row: int, col: int) -> None:
    pv = tab[row][col]
    tab[row] = [a / pv for a in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
    basis[row] = col


def _simplex(tab: List[List[Fraction]], basis: List[int], cost: List[Fraction]) -> str:
    """Maximize cost.x on the tableau in place; Bland's rule throughout.

    ``tab`` rows are constraint rows [coeffs | rhs]; ``basis[i]`` is the
    column currently basic in row i.  ``cost`` has one entry per column
    (no rhs).  Returns OPTIMAL or UNBOUNDED.
    """
    ncols = len(cost)
    while True:
        # reduced costs: cost - cost_B . B^-1 A, computed directly
        reduced = list(cost)
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb != 0:
                row = tab[i]
                reduced = [r - cb * a for r, a in zip(reduced, row[:ncols])]
        enter = next((j for j in range(ncols) if reduced[j] > 0), None)
        if enter is None:
            return OPTIMAL
        leave_row = None
        best_ratio: Optional[Fraction] = None
        for i in range(len(tab)):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best_ratio is None or ratio < best_ratio or (
                    ratio == best_ratio
                    and leave_row is not None
                    and basis[i] < basis[leave_row]
                ):
                    best_ratio = ratio
                    leave_row = i
        if leave_row is None:
            return UNBOUNDED
        _pivot(tab, basis, leave_row, enter)


def lp_max(
    objective: Sequence[Fraction],
    a_ub: Sequence[Sequence[Fraction]],
    b_ub: Sequence[Fraction],
) -> LPResult:
    """Maximize objective.x subject to A x <= b with x free."""
    nvars = len(objective)
    rows = [list(map(Fraction, r)) for r in a_ub]
    rhs = [Fraction(b) for b in b_ub]
    if any(len(r) != nvars for r in rows):
        raise ValidationError("constraint arity mismatch")
    m = len(rows)

    # split free variables, add slacks
    nsplit = 2 * nvars
    ncols = nsplit + m
    tab: List[List[Fraction]] = []
    for i, (row, b) in enumerate(zip(rows, rhs)):
        line = [ZERO] * ncols + [b]
        for j, a in enumerate(row):
            line[j] = a
            line[nvars + j] = -a
        line[nsplit + i] = ONE
        tab.append(line)
    basis = [nsplit + i for i in range(m)]

    # phase 1 when some rhs is negative
    neg = [i for i in range(m) if tab[i][-1] < 0]
    if neg:
        art_cols = {}
        for i in neg:
            tab[i] = [-a for a in tab[i]]
        for k, i in enumerate(neg):
            col = ncols + k
            art_cols[i] = col
            for r in range(m):
                tab[r].insert(-1, ONE if r == i else ZERO)
            basis[i] = col
        total_cols = ncols + len(neg)
        phase1_cost = [ZERO] * total_cols
        for i in neg:
            phase1_cost[art_cols[i]] = Fraction(-1)
        status = _simplex(tab, basis, phase1_cost)
        if status != OPTIMAL:
            raise InternalInvariantError("phase-1 simplex cannot be unbounded")
        value = ZERO
        for i, b in enumerate(basis):
            if phase1_cost[b] != 0:
                value += phase1_cost[b] * tab[i][-1]
        if value != 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificials out of the basis when possible
        for i in range(m):
            if basis[i] >= ncols:
                col = next((j for j in range(ncols) if tab[i][j] != 0), None)
                if col is not None:
                    _pivot(tab, basis, i, col)
        # drop artificial columns
        keep = list(range(ncols)) + [total_cols]
        tab = [[row[j] for j in keep] for row in tab]
        drop_rows = [i for i in range(len(tab)) if basis[i] >= ncols]
        for i in reversed(drop_rows):
            tab.pop(i)
            basis.pop(i)

    cost = [Fraction(c) for c in objective] + [-Fraction(c) for c in objective] + [
        ZERO
    ] * (len(tab[0]) - 1 - nsplit if tab else m)
    status = _simplex(tab, basis, cost)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    xsplit = [ZERO] * (len(cost))
    for i, b in enumerate(basis):
        xsplit[b] = tab[i][-1]
    x = tuple(xsplit[j] - xsplit[nvars + j] for j in range(nvars))
    value = sum(c * v for c, v in zip(objective, x))
    return LPResult(OPTIMAL, x, value)


def strict_interior_point(
    strict: Sequence[Tuple[Sequence[Fraction], Fraction]],
    equalities: Sequence[Tuple[Sequence[Fraction], Fraction]] = (),
    nvars: Optional[int] = None,
) -> Optional[Tuple[Fraction, ...]]:
    """A rational point with g.x + c > 0 for every (g, c) in ``strict``
    and g.x + c = 0 on ``equalities``; None when there is none.

    Solved as: maximize t subject to g.x + c >= t, t <= 1.  The strict
    set is nonempty exactly when the optimum is positive.
    """
    if nvars is None:
        pool = list(strict) + list(equalities)
        if not pool:
            raise ValidationError("cannot infer variable count")
        nvars = len(pool[0][0])
    a_ub: List[List[Fraction]] = []
    b_ub: List[Fraction] = []
    for g, c in strict:
        # g.x + c >= t  ->  -g.x + t <= c
        a_ub.append([-Fraction(v) for v in g] + [ONE])
        b_ub.append(Fraction(c))
    for g, c in equalities:
        a_ub.append([Fraction(v) for v in g] + [ZERO])
        b_ub.append(-Fraction(c))
        a_ub.append([-Fraction(v) for v in g] + [ZERO])
        b_ub.append(Fraction(c))
    a_ub.append([ZERO] * nvars + [ONE])
    b_ub.append(ONE)
    objective = [ZERO] * nvars + [ONE]
    res = lp_max(objective, a_ub, b_ub)
    if res.status != OPTIMAL:
        return None
    if res.value is None or res.value <= 0:
        return None
    return res.x[:nvars]


def cone_has_nonzero_point(
    rows: Sequence[Sequence[Fraction]],
) -> Optional[Tuple[Fraction, ...]]:
    """A nonzero direction d with row.d >= 0 for every row, or None.

    Decides whether the polyhedral cone {d : R d >= 0} is trivial by
    maximizing each +-coordinate over the cone boxed to [-1, 1]^n.
    """
    if not rows:
        raise ValidationError("empty cone description")
    n = len(rows[0])
    a_ub: List[List[Fraction]] = []
    b_ub: List[Fraction] = []
    for r in rows:
        a_ub.append([-Fraction(v) for v in r])
        b_ub.append(ZERO)
    for j in range(n):
        e = [ZERO] * n
        e[j] = ONE
        a_ub.append(list(e))
        b_ub.append(ONE)
        a_ub.append([-v for v in e])
        b_ub.append(ONE)
    for j in range(n):
        for sgn in (1, -1):
            objective = [ZERO] * n
            objective[j] = Fraction(sgn)
            res = lp_max(objective, a_ub, b_ub)
            if res.status == OPTIMAL and res.value is not None and res.value > 0:
                return res.x
    return None
