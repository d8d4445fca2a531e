"""Independent oracles used to pin expected values in the tests.

The main one is the truncated-jet colength: the dimension of the local
quotient ring is recomputed as (number of monomials of degree <= D) minus the
rank of the span of all truncated monomial multiples of the generators.  It
shares no code with the standard-basis engine: plain integer Gaussian
elimination on a dense Macaulay-style matrix.

For an ideal known to contain the pure powers x_i^{a_i}, every monomial of
degree above sum(a_i - 1) is in the ideal, so D = sum(a_i - 1) is an exact
truncation degree.  Without that knowledge, ``stable=True`` raises D until
two consecutive counts agree, which is how the hand-pinned fixture values
were frozen.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from icis_mu import Polynomial


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    return [
        exp
        for exp in itertools.product(range(degree + 1), repeat=nvars)
        if sum(exp) <= degree
    ]


def _int_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [int(v * den) for v in row]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def int_rank(rows: list[list[int]]) -> int:
    """Rank by integer elimination with content stripping."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                a, b = pv, rows[i][col]
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[rank])]
                g = 0
                for v in rows[i]:
                    g = gcd(g, abs(v))
                if g > 1:
                    rows[i] = [v // g for v in rows[i]]
        rank += 1
        rows = [r for r in rows if any(r)]
        if rank >= len(rows):
            break
    return rank


def jet_quotient_dimension(gens: list[Polynomial], degree: int) -> int:
    """dim of (jets of degree <= D) modulo (jets of the ideal)."""
    nvars = len(gens[0].vars)
    monos = monomials_upto(nvars, degree)
    index = {m: i for i, m in enumerate(monos)}
    rows: list[list[Fraction]] = []
    for g in gens:
        order = g.order_at_origin()
        if order is None:
            continue
        for shift in monomials_upto(nvars, degree - order):
            row = [Fraction(0)] * len(monos)
            nonzero = False
            for exp, c in g.terms.items():
                moved = tuple(a + b for a, b in zip(exp, shift))
                if sum(moved) <= degree:
                    row[index[moved]] += c
                    nonzero = True
            if nonzero:
                rows.append(row)
    return len(monos) - int_rank(_int_rows(rows))


def macaulay_colength(gens: list[Polynomial], degree: int | None = None, stable: bool = False) -> int:
    """Local colength by jet truncation.

    With ``degree`` given, it must satisfy m^(degree+1) inside the ideal (for
    example degree = sum(a_i - 1) when the pure powers x_i^(a_i) are present).
    With ``stable=True`` the degree is raised until two consecutive counts
    agree (a practical fixture-pinning mode, not a proof).
    """
    if degree is not None and not stable:
        return jet_quotient_dimension(gens, degree)
    d = degree if degree is not None else 2
    prev = jet_quotient_dimension(gens, d)
    while True:
        d += 1
        cur = jet_quotient_dimension(gens, d)
        if cur == prev:
            return cur
        prev = cur
        if d > 24:
            raise RuntimeError("jet colength did not stabilize by degree 24")
