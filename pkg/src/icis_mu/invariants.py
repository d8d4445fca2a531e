"""Milnor numbers on isolated complete intersection singularities.

The relative Milnor number of a function germ f on the complete intersection
X = phi^-1(0) is computed as the colength of the ideal generated by phi
together with the maximal minors of the Jacobian matrix of (f, phi) taken with
respect to the space variables.  The Milnor number of X itself comes from the
Le-Greuel recursion over prefix tuples of phi, and the two are tied together
by the identity  mu(f|X) = mu(X) + mu(X meet f^-1(0)),  which this module also
uses as an internal consistency trap.

Constancy of mu in a one-parameter family is decided by exact specialization:
the deformation parameter is replaced by a handful of seeded random rationals
and the resulting Milnor numbers are compared with the value at 0.  Finitely
many samples cannot prove constancy, so the verdict is labeled as generically
certified; conclusive certificates live in the newton module.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import HypothesisFailureError, InputError, InternalConsistencyError
from .polyring import PolyMatrix, Polynomial, jacobian, local_order, maximal_minors, substitute, with_ambient
from .standard_basis import (
    Budget,
    DEFAULT_BUDGET,
    IdealBasis,
    INFINITE,
    colength,
    is_finite,
)

CONSTANT_LABEL = "CONSTANT (generically certified by specialization)"
NOT_CONSTANT_LABEL = "NOT CONSTANT"

#: Bounded retries for the generator-mixing fallback in the Le-Greuel chain.
MAX_CHAIN_RETRIES = 5


@dataclass(frozen=True)
class MapGerm:
    """A map germ phi: (C^n, 0) -> (C^p, 0) with n > p >= 0, defining X."""

    phi: tuple[Polynomial, ...]
    vars: tuple[str, ...]

    @classmethod
    def make(cls, phi: Iterable[Polynomial], vars: Iterable[str]) -> "MapGerm":
        vars = tuple(vars)
        phi = tuple(with_ambient(p, vars) for p in phi)
        if len(phi) >= len(vars):
            raise InputError("a complete intersection germ needs more variables than equations")
        for p in phi:
            if p.is_zero:
                raise InputError("zero component in the defining map germ")
            if p.constant_term():
                raise InputError("map germ components must vanish at the origin")
        return cls(phi, vars)

    @property
    def p(self) -> int:
        return len(self.phi)

    @property
    def n(self) -> int:
        return len(self.vars)


@dataclass(frozen=True)
class FunctionOnGerm:
    """A function germ f: (X, 0) -> (C, 0) on the germ defined by phi."""

    f: Polynomial
    germ: MapGerm

    @classmethod
    def make(cls, f: Polynomial, germ: MapGerm) -> "FunctionOnGerm":
        f = with_ambient(f, germ.vars)
        if f.is_zero:
            raise InputError("the function germ is identically zero")
        if f.constant_term():
            raise InputError("function germs must vanish at the origin")
        return cls(f, germ)


@dataclass(frozen=True)
class FamilyFixedX:
    """One-parameter deformation F(t, x) of f = F(0, x) on a fixed germ X.

    ``split`` holds (f, g) whenever F = f + t*g, the shape required by the
    polyhedral certificate; it is detected automatically.
    """

    germ: MapGerm
    F: Polynomial
    t: str
    split: tuple[Polynomial, Polynomial] | None

    @classmethod
    def make(cls, germ: MapGerm, F: Polynomial, t: str) -> "FamilyFixedX":
        if t in germ.vars:
            raise InputError(f"deformation parameter {t!r} collides with a space variable")
        ambient = germ.vars + (t,)
        F = with_ambient(F, ambient)
        if F.is_zero:
            raise InputError("the deformation is identically zero")
        if F.constant_term():
            raise InputError("the deformation must vanish at the origin")
        f0 = substitute(F, {t: 0})
        if f0.constant_term():
            raise InputError("the t=0 member must vanish at the origin")
        if F.degree_in(t) <= 1:
            f = with_ambient(F.coefficient_of_power(t, 0), germ.vars)
            g = with_ambient(F.coefficient_of_power(t, 1), germ.vars)
            split = None if g.is_zero else (f, g)
        else:
            split = None
        return cls(germ, F, t, split)

    @classmethod
    def from_split(cls, germ: MapGerm, f: Polynomial, g: Polynomial, t: str) -> "FamilyFixedX":
        ambient = germ.vars + (t,)
        tv = Polynomial.variable(ambient, t)
        F = with_ambient(f, ambient) + tv * with_ambient(g, ambient)
        return cls.make(germ, F, t)

    def member(self, value: Fraction | int) -> Polynomial:
        """The germ f_t for a concrete parameter value, over the space variables."""
        return with_ambient(substitute(self.F, {self.t: Fraction(value)}), self.germ.vars)


@dataclass(frozen=True)
class FamilyDeformedX:
    """One-parameter deformation Phi(t, x) of the germ itself, with f fixed."""

    Phi: tuple[Polynomial, ...]
    f: Polynomial
    vars: tuple[str, ...]
    t: str

    @classmethod
    def make(cls, Phi: Iterable[Polynomial], f: Polynomial, vars: Iterable[str], t: str) -> "FamilyDeformedX":
        vars = tuple(vars)
        if t in vars:
            raise InputError(f"deformation parameter {t!r} collides with a space variable")
        ambient = vars + (t,)
        Phi = tuple(with_ambient(p, ambient) for p in Phi)
        if len(Phi) >= len(vars):
            raise InputError("a complete intersection germ needs more variables than equations")
        for p in Phi:
            if p.is_zero:
                raise InputError("zero component in the deformed map germ")
            at_origin = substitute(p, {v: 0 for v in vars})
            if not at_origin.is_zero:
                raise InputError("deformed germ components must vanish at the origin for every t")
        f = with_ambient(f, vars)
        if f.is_zero or f.constant_term():
            raise InputError("the function germ must be nonzero and vanish at the origin")
        return cls(Phi, f, vars, t)

    def germ_at(self, value: Fraction | int) -> MapGerm:
        phi = tuple(
            with_ambient(substitute(p, {self.t: Fraction(value)}), self.vars) for p in self.Phi
        )
        return MapGerm.make(phi, self.vars)


@dataclass(frozen=True)
class MilnorReport:
    """mu(f|X), mu(X, 0) and mu(X meet f^-1(0), 0), tied by Le-Greuel."""

    mu_rel: int
    mu_X: int
    mu_section: int
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class SampleValue:
    t: Fraction
    mu: int | float


@dataclass(frozen=True)
class FamilyVerdict:
    mu0: int
    mu_gen: int | float
    samples: tuple[SampleValue, ...]
    constant: bool
    label: str
    seed: int
    warnings: tuple[str, ...] = ()


def relative_jacobian_ideal(f: Polynomial, phi: tuple[Polynomial, ...], vars: tuple[str, ...]) -> list[Polynomial]:
    """Generators phi_1..phi_p together with the maximal minors of J(f, phi),
    derivatives taken with respect to the space variables only."""
    f = with_ambient(f, vars)
    phi = tuple(with_ambient(p, vars) for p in phi)
    minors = maximal_minors(jacobian([f, *phi], vars))
    return [*phi, *minors]


def _colength_of(gens: list[Polynomial], vars: tuple[str, ...], budget: Budget) -> int | float:
    nonzero = [g for g in gens if not g.is_zero]
    if not nonzero:
        return INFINITE
    return colength(IdealBasis.make(nonzero, local_order()), budget)


def mu_rel(fg: FunctionOnGerm, budget: Budget = DEFAULT_BUDGET) -> int | float:
    """Relative Milnor number mu(f|X) as a colength; INFINITE signals a
    non-isolated singularity (finite determinacy failure)."""
    gens = relative_jacobian_ideal(fg.f, fg.germ.phi, fg.germ.vars)
    return _colength_of(gens, fg.germ.vars, budget)


def _mixed_stage_minors(
    row_minors: dict[tuple[int, ...], list[Polynomial]],
    mix: list[list[Fraction]] | None,
    k: int,
    p: int,
    vars: tuple[str, ...],
) -> list[Polynomial]:
    """Maximal minors of the Jacobian of the first k mixed maps.

    With psi = M . phi the Jacobian rows mix the same way, so by Cauchy-Binet
    every k-minor of J(psi_1..psi_k) is the sum over k-row-subsets S of
    det(M[:k, S]) times the corresponding minor of J(phi).  Combining the
    pre-expanded sparse minors of the original maps avoids expanding dense
    products of mixed rows.
    """
    if mix is None:
        return list(row_minors[tuple(range(k))])
    ncols = len(next(iter(row_minors.values())))
    combined = [Polynomial.zero(vars) for _ in range(ncols)]
    for S in itertools.combinations(range(p), k):
        coeff = _det([[mix[i][j] for j in S] for i in range(k)])
        if not coeff:
            continue
        for c, minor in enumerate(row_minors[S]):
            if not minor.is_zero:
                combined[c] = combined[c] + coeff * minor
    return combined


def _chain_colengths(
    polys: tuple[Polynomial, ...],
    vars: tuple[str, ...],
    budget: Budget,
    mix: list[list[Fraction]] | None = None,
) -> list[int | float]:
    """Colengths c_k = colength(<psi_1..k-1> + k-minors of J(psi_1..k)) for
    the (optionally mixed) generators, stopping at the first INFINITE value."""
    p = len(polys)
    full = jacobian(list(polys), vars)
    row_minors: dict[tuple[int, ...], list[Polynomial]] = {}
    for k in range(1, p + 1):
        subsets = [tuple(range(k))] if mix is None else list(itertools.combinations(range(p), k))
        for S in subsets:
            if S not in row_minors:
                rows = tuple(full.entries[i] for i in S)
                row_minors[S] = maximal_minors(PolyMatrix(rows))
    if mix is None:
        psis = list(polys)
    else:
        psis = [
            sum((mix[i][j] * polys[j] for j in range(p)), Polynomial.zero(vars))
            for i in range(p)
        ]
    out: list[int | float] = []
    for k in range(1, p + 1):
        prefix = psis[: k - 1]
        minors = _mixed_stage_minors(row_minors, mix, k, p, vars)
        c = _colength_of(prefix + minors, vars, budget)
        out.append(c)
        if not is_finite(c):
            break
    return out


def _mix_matrix(p: int, rng: random.Random) -> list[list[Fraction]]:
    """Random invertible integer mixing matrix (kept small for sparse combines)."""
    while True:
        rows = [[Fraction(rng.randint(-5, 5)) for _ in range(p)] for _ in range(p)]
        if _det(rows) != 0:
            return rows


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [row[:] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det


def _block_mix(p: int, fixed_tail: int, rng: random.Random) -> list[list[Fraction]]:
    """Invertible mix of the leading block only; the last ``fixed_tail``
    generators stay unmixed.  Keeping a low-order function germ out of the mix
    avoids flooding every generator with a linear part and a deep tail, which
    is what makes the subsequent eliminations expensive."""
    head = p - fixed_tail
    block = _mix_matrix(head, rng)
    rows = [block[i] + [Fraction(0)] * fixed_tail for i in range(head)]
    for i in range(fixed_tail):
        row = [Fraction(0)] * p
        row[head + i] = Fraction(1)
        rows.append(row)
    return rows


def _mu_chain(
    polys: tuple[Polynomial, ...],
    vars: tuple[str, ...],
    seed: int,
    budget: Budget,
    fixed_tail: int = 0,
) -> int | float:
    """Milnor number of the complete intersection V(polys) by the Le-Greuel
    chain, mixing generators when a prefix fails to be an ICIS.

    The attempt ladder is: the given order, then block mixes keeping the last
    ``fixed_tail`` generators in place, then fully generic mixes.
    """
    p = len(polys)
    if p == 0:
        return 0
    rng = random.Random(seed)
    mixes: list[list[list[Fraction]] | None] = [None]
    if p >= 2:
        n_block = 3 if fixed_tail > 0 and p - fixed_tail >= 2 else 0
        for _ in range(n_block):
            mixes.append(_block_mix(p, fixed_tail, rng))
        while len(mixes) < 1 + MAX_CHAIN_RETRIES:
            mixes.append(_mix_matrix(p, rng))
    cs: list[int | float] = []
    for mix in mixes:
        cs = _chain_colengths(polys, vars, budget, mix)
        if len(cs) == p and is_finite(cs[-1]):
            mu = 0
            for c in cs:
                mu = c - mu
            return mu
    # Retries exhausted: classify by where the last attempt broke down.
    if len(cs) == p:
        return INFINITE  # the germ itself has a non-isolated singularity
    raise HypothesisFailureError("prefix chain not ICIS after randomization")


def mu_icis(m: MapGerm, seed: int = 0, budget: Budget = DEFAULT_BUDGET) -> int | float:
    """Milnor number of the complete intersection germ X = phi^-1(0)."""
    return _mu_chain(m.phi, m.vars, seed, budget)


def milnor_report(fg: FunctionOnGerm, seed: int = 0, budget: Budget = DEFAULT_BUDGET) -> MilnorReport:
    """Full report (mu_rel, mu_X, mu_section) with an internal cross-check:
    mu_section is recomputed as the Milnor number of the extended tuple
    (phi, f) and the two values must agree exactly."""
    mr = mu_rel(fg, budget)
    if not is_finite(mr):
        raise HypothesisFailureError("mu(f|X) is infinite: the singularity is not isolated")
    mx = mu_icis(fg.germ, seed, budget)
    if not is_finite(mx):
        raise HypothesisFailureError("mu(X) is infinite: X is not an ICIS")
    section = mr - mx
    extended = fg.germ.phi + (fg.f,)
    cross = _mu_chain(extended, fg.germ.vars, seed, budget, fixed_tail=1)
    if cross != section:
        raise InternalConsistencyError(
            f"mu_section disagreement: Le-Greuel difference gives {section}, "
            f"extended-tuple chain gives {cross}"
        )
    return MilnorReport(mr, mx, section)


def _draw_parameters(samples: int, seed: int) -> list[Fraction]:
    """Distinct nonzero rationals a/b with 1 <= a, b <= 1000, seeded."""
    rng = random.Random(seed)
    values: list[Fraction] = []
    while len(values) < samples:
        v = Fraction(rng.randint(1, 1000), rng.randint(1, 1000))
        if v not in values:
            values.append(v)
    return values


def _specialization_verdict(
    mu0: int | float,
    sample_values: list[SampleValue],
    seed: int,
) -> FamilyVerdict:
    if not is_finite(mu0):
        raise HypothesisFailureError("mu at t=0 is infinite: the family has no finite baseline")
    warnings = []
    finite = [s.mu for s in sample_values if is_finite(s.mu)]
    discarded = len(sample_values) - len(finite)
    if discarded:
        warnings.append(f"{discarded} sample(s) had infinite mu and were discarded")
    if not finite:
        warnings.append("all samples were discarded; generic value is unknown")
        mu_gen: int | float = INFINITE
    else:
        mu_gen = min(finite)
    constant = bool(finite) and discarded == 0 and all(m == mu0 for m in finite)
    label = CONSTANT_LABEL if constant else NOT_CONSTANT_LABEL
    return FamilyVerdict(
        mu0=mu0,
        mu_gen=mu_gen,
        samples=tuple(sample_values),
        constant=constant,
        label=label,
        seed=seed,
        warnings=tuple(warnings),
    )


def family_mu_check(
    fam: FamilyFixedX,
    samples: int = 3,
    seed: int = 0,
    budget: Budget = DEFAULT_BUDGET,
) -> FamilyVerdict:
    """Decide mu-constancy of F(t, x) on fixed X by exact specialization of t.

    The generic value is the minimum over the sampled parameters; the verdict
    is CONSTANT only when every sample is finite and equals mu at t=0.
    """
    if samples < 1:
        raise InputError("at least one specialization sample is required")
    vars = fam.germ.vars
    mu0 = _colength_of(relative_jacobian_ideal(fam.member(0), fam.germ.phi, vars), vars, budget)
    results = []
    for tv in _draw_parameters(samples, seed):
        mu_t = _colength_of(relative_jacobian_ideal(fam.member(tv), fam.germ.phi, vars), vars, budget)
        results.append(SampleValue(tv, mu_t))
    return _specialization_verdict(mu0, results, seed)


def family_mu_check_deformed(
    fam: FamilyDeformedX,
    samples: int = 3,
    seed: int = 0,
    budget: Budget = DEFAULT_BUDGET,
) -> FamilyVerdict:
    """Same specialization scheme with the roles of f and phi swapped: the
    parameter lives in the defining equations and f stays fixed."""
    if samples < 1:
        raise InputError("at least one specialization sample is required")
    vars = fam.vars

    def mu_at(value: Fraction | int) -> int | float:
        phi = tuple(
            with_ambient(substitute(p, {fam.t: Fraction(value)}), vars) for p in fam.Phi
        )
        if any(p.is_zero for p in phi):
            return INFINITE
        return _colength_of(relative_jacobian_ideal(fam.f, phi, vars), vars, budget)

    mu0 = mu_at(0)
    results = [SampleValue(tv, mu_at(tv)) for tv in _draw_parameters(samples, seed)]
    return _specialization_verdict(mu0, results, seed)
