"""Standard/Groebner basis engine for local and global monomial orders.

For local orders the reducer discipline is Mora's tangent-cone normal form:
among the basis elements whose leading monomial divides the current lead, pick
one of minimal ecart, and when every candidate has larger ecart than the work
polynomial, add a snapshot of the work polynomial itself to the reducer pool.
That snapshot step is what makes division terminate in the local ring, where
naive tail chasing can run forever.  Under a global order every ecart as
computed here is zero and the same loop degenerates to ordinary Buchberger
division, so one code path serves both cases.

Colength (the vector-space dimension of the quotient) is read off the
staircase of leading exponents after basis completion; INFINITE is decided
from the staircase, never from a timeout.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf
from typing import Iterable

from .errors import ComputationLimitError, InputError
from .polyring import (
    GLOBAL_DEG,
    Exponent,
    MonomialOrder,
    Polynomial,
    exponent_divides,
    exponent_lcm,
)

#: Sentinel for an infinite colength / Milnor number.  Only ever compared,
#: never used in arithmetic.
INFINITE = inf


def is_finite(value) -> bool:
    return value != INFINITE


@dataclass(frozen=True)
class Budget:
    """Reduction-step and wall-clock limits for one engine invocation."""

    max_steps: int = 1_000_000
    max_seconds: float = 60.0


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal together with the order used to process them.

    Zero generators are dropped at construction; if every generator is zero
    the ideal is the zero ideal and ``is_zero_ideal`` is set.
    """

    generators: tuple[Polynomial, ...]
    vars: tuple[str, ...]
    order: MonomialOrder

    @classmethod
    def make(cls, generators: Iterable[Polynomial], order: MonomialOrder) -> "IdealBasis":
        gens = tuple(generators)
        if not gens:
            raise InputError("an ideal needs at least one generator")
        vars = gens[0].vars
        for g in gens:
            if g.vars != vars:
                raise InputError("ideal generators have mismatched ambients")
        if order.weights is not None and len(order.weights) != len(vars):
            raise InputError("order weights do not match the ambient size")
        nonzero = tuple(g for g in gens if not g.is_zero)
        return cls(nonzero, vars, order)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators


@dataclass(frozen=True)
class StandardBasis:
    basis: tuple[Polynomial, ...]
    order: MonomialOrder
    staircase: tuple[Exponent, ...]
    vars: tuple[str, ...]
    steps: int

    def contains_unit(self) -> bool:
        zero_exp = (0,) * len(self.vars)
        return zero_exp in self.staircase


class _Clock:
    """Shared step/time accounting for one engine invocation."""

    __slots__ = ("budget", "steps", "t0", "_tick")

    def __init__(self, budget: Budget):
        self.budget = budget
        self.steps = 0
        self.t0 = time.monotonic()
        self._tick = 0

    def charge(self, context: str, **extra):
        self.steps += 1
        if self.steps > self.budget.max_steps:
            raise ComputationLimitError(
                f"reduction step budget exceeded during {context}",
                {"steps": self.steps, **extra},
            )
        self._tick += 1
        if self._tick >= 512:
            self._tick = 0
            if time.monotonic() - self.t0 > self.budget.max_seconds:
                raise ComputationLimitError(
                    f"time budget exceeded during {context}",
                    {"steps": self.steps, "seconds": self.budget.max_seconds, **extra},
                )


class _Keys:
    """Memoized order keys and weighted degrees for one ambient."""

    __slots__ = ("order", "_key", "_deg")

    def __init__(self, order: MonomialOrder):
        self.order = order
        self._key: dict[Exponent, tuple] = {}
        self._deg: dict[Exponent, Fraction | int] = {}

    def key(self, exp: Exponent):
        k = self._key.get(exp)
        if k is None:
            k = self.order.key(exp)
            self._key[exp] = k
        return k

    def nkey(self, exp: Exponent):
        head, tail = self.key(exp)
        return (-head, tuple(-x for x in tail))

    def deg(self, exp: Exponent):
        d = self._deg.get(exp)
        if d is None:
            d = self.order.weighted_degree(exp)
            self._deg[exp] = d
        return d


class _Reducer:
    """A basis element prepared for division: terms, lead data and ecart."""

    __slots__ = ("terms", "lm", "lc", "ecart", "index")

    def __init__(self, terms: dict[Exponent, Fraction], keys: _Keys, index: int):
        self.terms = terms
        self.lm = max(terms, key=keys.key)
        self.lc = terms[self.lm]
        top = max(keys.deg(e) for e in terms)
        self.ecart = top - keys.deg(self.lm)
        self.index = index


def _content_normalized(terms: dict[Exponent, Fraction], keys: _Keys) -> dict[Exponent, Fraction]:
    """Scale to coprime integer coefficients with positive leading coefficient."""
    den = 1
    for c in terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    num = 0
    for c in terms.values():
        num = gcd(num, abs(c.numerator * (den // c.denominator)))
    factor = Fraction(den, num)
    lm = max(terms, key=keys.key)
    if terms[lm] < 0:
        factor = -factor
    return {e: c * factor for e, c in terms.items()}


class _Work:
    """Mutable polynomial under reduction: term map plus a lazy-deletion heap
    that yields the leading exponent without rescanning all terms."""

    __slots__ = ("terms", "heap", "keys")

    def __init__(self, terms: dict[Exponent, Fraction], keys: _Keys):
        self.keys = keys
        self.terms = dict(terms)
        self.heap = [(keys.nkey(e), e) for e in self.terms]
        heapq.heapify(self.heap)

    def lead(self) -> Exponent | None:
        while self.heap:
            exp = self.heap[0][1]
            if exp in self.terms:
                return exp
            heapq.heappop(self.heap)
        return None

    def ecart(self, lm: Exponent):
        deg = self.keys.deg
        return max(deg(e) for e in self.terms) - deg(lm)

    def sub_scaled(self, coeff: Fraction, shift: Exponent, g_terms: dict[Exponent, Fraction]):
        """Subtract coeff * x^shift * g from self."""
        terms = self.terms
        moved = any(shift)
        for exp, c in g_terms.items():
            ne = tuple(a + b for a, b in zip(exp, shift)) if moved else exp
            v = terms.get(ne)
            if v is None:
                terms[ne] = -coeff * c
                heapq.heappush(self.heap, (self.keys.nkey(ne), ne))
            else:
                v = v - coeff * c
                if v:
                    terms[ne] = v
                else:
                    del terms[ne]


def _mora_normal_form(
    terms: dict[Exponent, Fraction],
    basis: list[_Reducer],
    keys: _Keys,
    clock: _Clock,
    *,
    reduce_tails: bool,
) -> dict[Exponent, Fraction]:
    """Weak normal form (Mora); with ``reduce_tails`` strips each irreducible
    lead into the result and keeps dividing, yielding a remainder none of whose
    terms is divisible by a basis leading monomial."""
    work = _Work(terms, keys)
    pool = list(basis)
    local_index = itertools.count(len(pool) + 10**9)
    result: dict[Exponent, Fraction] = {}
    while True:
        lm = work.lead()
        if lm is None:
            return result
        best = None
        for g in pool:
            if exponent_divides(g.lm, lm):
                if best is None or (g.ecart, g.index) < (best.ecart, best.index):
                    best = g
        if best is None:
            if not reduce_tails:
                result.update(work.terms)
                return result
            result[lm] = work.terms.pop(lm)
            continue
        if best.ecart > work.ecart(lm):
            snapshot = _Reducer(dict(work.terms), keys, next(local_index))
            pool.append(snapshot)
        coeff = work.terms[lm] / best.lc
        shift = tuple(a - b for a, b in zip(lm, best.lm))
        work.sub_scaled(coeff, shift, best.terms)
        clock.charge("normal form", basis_size=len(basis))


def _spoly(a: _Reducer, b: _Reducer, keys: _Keys) -> dict[Exponent, Fraction]:
    lcm = exponent_lcm(a.lm, b.lm)
    work = _Work({}, keys)
    work.sub_scaled(Fraction(-1, 1) / a.lc, tuple(x - y for x, y in zip(lcm, a.lm)), a.terms)
    work.sub_scaled(Fraction(1, 1) / b.lc, tuple(x - y for x, y in zip(lcm, b.lm)), b.terms)
    return work.terms


def _minimal_exponents(exps: Iterable[Exponent]) -> list[Exponent]:
    exps = sorted(set(exps), key=lambda e: (sum(e), e))
    kept: list[Exponent] = []
    for e in exps:
        if not any(exponent_divides(k, e) for k in kept):
            kept.append(e)
    return kept


def compute_standard_basis(ideal: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> StandardBasis:
    """Complete the generators to a standard basis under the ideal's order.

    Deterministic given the generator order: S-pairs are processed by
    ascending (weighted degree of lcm, order key of lcm, i, j), and pairs with
    coprime leading monomials are skipped (product criterion).  The returned
    basis is minimal: one element per minimal staircase exponent,
    content-normalized to coprime integer coefficients with positive lead.
    """
    keys = _Keys(ideal.order)
    clock = _Clock(budget)
    if ideal.is_zero_ideal:
        return StandardBasis((), ideal.order, (), ideal.vars, 0)

    basis: list[_Reducer] = []
    for g in ideal.generators:
        basis.append(_Reducer(_content_normalized(dict(g.terms), keys), keys, len(basis)))

    def pair_entry(i: int, j: int):
        lcm = exponent_lcm(basis[i].lm, basis[j].lm)
        return (keys.deg(lcm), keys.key(lcm), i, j)

    pairs = [pair_entry(i, j) for j in range(len(basis)) for i in range(j)]
    heapq.heapify(pairs)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        gi, gj = basis[i], basis[j]
        lcm = exponent_lcm(gi.lm, gj.lm)
        if lcm == tuple(a + b for a, b in zip(gi.lm, gj.lm)):
            continue  # coprime leads: S-polynomial reduces to zero
        clock.charge("S-pair reduction", basis_size=len(basis), pending=len(pairs))
        s = _spoly(gi, gj, keys)
        h = _mora_normal_form(s, basis, keys, clock, reduce_tails=False)
        if h:
            new = _Reducer(_content_normalized(h, keys), keys, len(basis))
            basis.append(new)
            for k in range(new.index):
                heapq.heappush(pairs, pair_entry(k, new.index))

    staircase = _minimal_exponents(g.lm for g in basis)
    stair_set = set(staircase)
    minimal = [g for g in basis if g.lm in stair_set]
    minimal.sort(key=lambda g: keys.key(g.lm), reverse=True)
    polys = tuple(Polynomial._make(ideal.vars, dict(g.terms)) for g in minimal)
    ordered_staircase = tuple(g.lm for g in minimal)
    return StandardBasis(polys, ideal.order, ordered_staircase, ideal.vars, clock.steps)


def normal_form(p: Polynomial, sb: StandardBasis, budget: Budget = DEFAULT_BUDGET) -> Polynomial:
    """Remainder of p with no term divisible by a staircase leading monomial.

    For a local order the result is a normal form up to multiplication by a
    unit of the local ring, which is exactly what ideal-membership tests need:
    the remainder is zero iff p lies in the ideal (in the localized sense).
    """
    if p.vars != sb.vars:
        raise InputError("polynomial ambient does not match the basis ambient")
    if not sb.basis:
        return p
    keys = _Keys(sb.order)
    clock = _Clock(budget)
    basis = [_Reducer(dict(g.terms), keys, i) for i, g in enumerate(sb.basis)]
    out = _mora_normal_form(dict(p.terms), basis, keys, clock, reduce_tails=True)
    return Polynomial._make(p.vars, out)


#: Guard for the staircase box enumeration inside colength().
_MAX_BOX = 2_000_000


def colength(ideal: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> int | float:
    """Dimension of the quotient by the ideal as a rational vector space.

    Counts the lattice points under the staircase; INFINITE iff some
    coordinate axis carries no pure power in the leading ideal.  This decision
    is made from the completed staircase, never from a timeout (a timeout
    raises ComputationLimitError instead).
    """
    sb = compute_standard_basis(ideal, budget)
    return staircase_colength(sb.staircase, len(ideal.vars))


def staircase_colength(staircase: tuple[Exponent, ...], nvars: int) -> int | float:
    if not staircase:
        return INFINITE
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in staircase if all(x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    box = 1
    for b in bounds:
        box *= b
    if box > _MAX_BOX:
        raise ComputationLimitError(
            "staircase box too large to enumerate", {"box": box, "bounds": bounds}
        )
    count = 0
    stairs = sorted(staircase, key=sum)
    for exp in itertools.product(*(range(b) for b in bounds)):
        if not any(exponent_divides(s, exp) for s in stairs):
            count += 1
    return count


def is_unit_ideal(ideal: IdealBasis, budget: Budget = DEFAULT_BUDGET) -> bool:
    """True iff 1 lies in the ideal.  Requires a global order."""
    if ideal.order.kind != GLOBAL_DEG:
        raise InputError("unit-ideal test requires a global order")
    if ideal.is_zero_ideal:
        return False
    sb = compute_standard_basis(ideal, budget)
    return sb.contains_unit()
