"""Exact linear algebra and linear-programming feasibility over the rationals.

Everything here is dense and small: the callers are polyhedron computations in
at most six dimensions with a few dozen points, so a plain two-phase simplex
with Bland's rule (lowest-index pivoting, hence no cycling and deterministic
output) is both simple and fast enough.  All arithmetic is Fraction-exact.

Conventions: decision variables are implicitly non-negative; constraints are
given as (coefficients, rhs) pairs, either equalities or >= inequalities.
Callers encode free variables by splitting into differences and strict
positivity by shifting, both of which are done where needed in the newton
module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = Sequence[Fraction]
Constraint = tuple[Sequence[Fraction], Fraction]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def rank(rows: Iterable[Row]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col] * inv
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows: Iterable[Row], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : A x = 0} via reduced row echelon form."""
    m = [list(map(Fraction, row)) for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -m[i][f]
        basis.append(tuple(vec))
    return basis


class _Tableau:
    """Dense simplex tableau: constraint rows [A | rhs] plus an objective row
    of reduced costs, pivoted together."""

    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows
        self.basis = basis

    def pivot(self, row: int, col: int, obj: list[Fraction]):
        r = self.rows[row]
        inv = 1 / r[col]
        self.rows[row] = r = [a * inv for a in r]
        for i, other in enumerate(self.rows):
            if i != row and other[col]:
                factor = other[col]
                self.rows[i] = [a - factor * b for a, b in zip(other, r)]
        if obj[col]:
            factor = obj[col]
            obj[:] = [a - factor * b for a, b in zip(obj, r)]
        self.basis[row] = col

    def run(self, obj: list[Fraction], ncols: int) -> str:
        """Minimize: pivot until no reduced cost is negative (Bland's rule)."""
        while True:
            col = next((j for j in range(ncols) if obj[j] < 0), None)
            if col is None:
                return OPTIMAL
            best_row = None
            best_ratio = None
            for i, row in enumerate(self.rows):
                if row[col] > 0:
                    ratio = row[-1] / row[col]
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best_row])
                    ):
                        best_ratio = ratio
                        best_row = i
            if best_row is None:
                return UNBOUNDED
            self.pivot(best_row, col, obj)


def _standardize(
    nvars: int, eqs: list[Constraint], ges: list[Constraint]
) -> tuple[list[list[Fraction]], int]:
    """Build [A | rhs] rows with slack columns for >= constraints, rhs >= 0."""
    nslack = len(ges)
    width = nvars + nslack
    rows: list[list[Fraction]] = []
    for coeffs, rhs in eqs:
        row = [Fraction(c) for c in coeffs] + [Fraction(0)] * nslack + [Fraction(rhs)]
        rows.append(row)
    for k, (coeffs, rhs) in enumerate(ges):
        row = [Fraction(c) for c in coeffs] + [Fraction(0)] * nslack + [Fraction(rhs)]
        row[nvars + k] = Fraction(-1)
        rows.append(row)
    for row in rows:
        if row[-1] < 0:
            row[:] = [-a for a in row]
    return rows, width


def _phase1(rows: list[list[Fraction]], width: int) -> _Tableau | None:
    m = len(rows)
    full = []
    basis = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        full.append(row[:-1] + art + [row[-1]])
        basis.append(width + i)
    ncols = width + m
    obj = [Fraction(0)] * (ncols + 1)
    for j in range(width):
        obj[j] = -sum(row[j] for row in full)
    obj[-1] = -sum(row[-1] for row in full)
    tab = _Tableau(full, basis)
    tab.run(obj, ncols)
    if -obj[-1] != 0:
        return None  # minimal artificial mass is positive: infeasible
    # Drive leftover artificials out of the basis, dropping redundant rows.
    keep = []
    for i in range(len(tab.rows)):
        if tab.basis[i] >= width:
            col = next((j for j in range(width) if tab.rows[i][j]), None)
            if col is None:
                continue  # redundant constraint
            tab.pivot(i, col, obj)
        keep.append(i)
    tab.rows = [tab.rows[i][:width] + [tab.rows[i][-1]] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]
    return tab


def minimize(
    nvars: int,
    eqs: list[Constraint],
    ges: list[Constraint],
    cost: Sequence[Fraction],
) -> tuple[str, tuple[Fraction, ...] | None, Fraction | None]:
    """Minimize cost . x over {A_eq x = b, A_ge x >= b, x >= 0}.

    Returns (status, point, value); point and value are None unless optimal.
    """
    rows, width = _standardize(nvars, eqs, ges)
    tab = _phase1(rows, width)
    if tab is None:
        return INFEASIBLE, None, None
    full_cost = [Fraction(c) for c in cost] + [Fraction(0)] * (width - nvars)
    nrows = len(tab.rows)
    obj = [Fraction(0)] * (width + 1)
    for j in range(width):
        obj[j] = full_cost[j] - sum(
            full_cost[tab.basis[i]] * tab.rows[i][j] for i in range(nrows)
        )
    obj[-1] = -sum(full_cost[tab.basis[i]] * tab.rows[i][-1] for i in range(nrows))
    status = tab.run(obj, width)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    point = [Fraction(0)] * width
    for i, b in enumerate(tab.basis):
        point[b] = tab.rows[i][-1]
    value = sum(c * x for c, x in zip(full_cost, point))
    return OPTIMAL, tuple(point[:nvars]), value


def feasible_point(
    nvars: int, eqs: list[Constraint], ges: list[Constraint]
) -> tuple[Fraction, ...] | None:
    """A point of {A_eq x = b, A_ge x >= b, x >= 0}, or None if empty."""
    rows, width = _standardize(nvars, eqs, ges)
    tab = _phase1(rows, width)
    if tab is None:
        return None
    point = [Fraction(0)] * width
    for i, b in enumerate(tab.basis):
        point[b] = tab.rows[i][-1]
    return tuple(point[:nvars])
