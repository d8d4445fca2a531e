"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a finite map from exponent vectors to nonzero ``Fraction``
coefficients, together with an ordered tuple of variable names (the ambient).
All arithmetic is exact; no floating point appears anywhere in this package's
core.  Values are immutable after construction, so every operation here is a
pure function and safe to share between threads.

Exponent vectors are plain tuples of non-negative ints whose length equals the
ambient size.  Monomial orders are small frozen configuration objects; the
comparison key they produce is used by the standard-basis engine and by the
canonical printing order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import InputError

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

LOCAL_NEGDEG = "local-negdeg"
GLOBAL_DEG = "global-deg"


def exponent_divides(a: Exponent, b: Exponent) -> bool:
    """True iff the monomial x^a divides x^b (componentwise a <= b)."""
    return all(x <= y for x, y in zip(a, b))


def exponent_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class MonomialOrder:
    """A total order on exponent vectors.

    ``local-negdeg`` ranks lower (weighted) total degree first, so the leading
    term of a germ is its lowest-order part; ``global-deg`` ranks higher degree
    first.  Ties are broken reverse-lexicographically in both cases.  Both
    kinds are compatible with monomial multiplication, which is what the
    standard-basis theory requires.
    """

    kind: str
    weights: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.kind not in (LOCAL_NEGDEG, GLOBAL_DEG):
            raise InputError(f"unknown monomial order kind {self.kind!r}")
        if self.weights is not None:
            if not self.weights or any(w <= 0 for w in self.weights):
                raise InputError("order weights must be positive")

    @property
    def is_local(self) -> bool:
        return self.kind == LOCAL_NEGDEG

    def weighted_degree(self, exp: Exponent):
        if self.weights is None:
            return sum(exp)
        if len(self.weights) != len(exp):
            raise InputError("weight vector length does not match exponent length")
        return sum(w * e for w, e in zip(self.weights, exp))

    def key(self, exp: Exponent):
        """Sort key: larger key means the monomial leads.

        The second component realises the reverse-lexicographic tie-break:
        among equal degrees, x^a leads x^b iff the last nonzero entry of
        a - b is negative.
        """
        deg = self.weighted_degree(exp)
        head = -deg if self.kind == LOCAL_NEGDEG else deg
        return (head, tuple(-e for e in reversed(exp)))


def local_order(weights: Iterable[Scalar] | None = None) -> MonomialOrder:
    w = None if weights is None else tuple(Fraction(x) for x in weights)
    return MonomialOrder(LOCAL_NEGDEG, w)


def global_order(weights: Iterable[Scalar] | None = None) -> MonomialOrder:
    w = None if weights is None else tuple(Fraction(x) for x in weights)
    return MonomialOrder(GLOBAL_DEG, w)


def compare_monomials(a: Exponent, b: Exponent, order: MonomialOrder) -> int:
    """Return +1 if a leads b, -1 if b leads a, 0 if equal."""
    if len(a) != len(b):
        raise InputError("exponent vectors have different lengths")
    ka, kb = order.key(a), order.key(b)
    if ka > kb:
        return 1
    if ka < kb:
        return -1
    return 0


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[Exponent, Scalar]):
        vars = tuple(vars)
        n = len(vars)
        if len(set(vars)) != n:
            raise InputError("duplicate variable names in ambient")
        norm: dict[Exponent, Fraction] = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise InputError(f"exponent {exp} does not match ambient of size {n}")
            if any(e < 0 for e in exp):
                raise InputError(f"negative exponent in {exp}")
            c = Fraction(coeff)
            if c:
                norm[exp] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", norm)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, vars: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "Polynomial":
        # Internal fast path: terms must already be normalized.
        self = object.__new__(cls)
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str]) -> "Polynomial":
        return cls._make(tuple(vars), {})

    @classmethod
    def constant(cls, vars: Iterable[str], value: Scalar) -> "Polynomial":
        vars = tuple(vars)
        c = Fraction(value)
        return cls._make(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def variable(cls, vars: Iterable[str], name: str) -> "Polynomial":
        vars = tuple(vars)
        if name not in vars:
            raise InputError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in vars)
        return cls._make(vars, {exp: Fraction(1)})

    @classmethod
    def variables(cls, vars: Iterable[str]) -> tuple["Polynomial", ...]:
        """Convenience: one generator polynomial per ambient variable."""
        vars = tuple(vars)
        return tuple(cls.variable(vars, v) for v in vars)

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def support(self) -> tuple[Exponent, ...]:
        return tuple(sorted(self.terms))

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order_at_origin(self) -> int | None:
        """Minimal total degree of a term; None for the zero polynomial."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient_of_power(self, var: str, k: int) -> "Polynomial":
        """Coefficient of var^k, as a polynomial in the remaining variables."""
        i = self._index(var)
        rest = tuple(v for v in self.vars if v != var)
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i] == k:
                out[exp[:i] + exp[i + 1:]] = c
        return Polynomial._make(rest, out)

    def leading_exponent(self, order: MonomialOrder) -> Exponent | None:
        if not self.terms:
            return None
        return max(self.terms, key=order.key)

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise InputError(f"unknown variable {var!r}") from None

    # -- ring operations ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise InputError("ambient mismatch; align variables first")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            v = out.get(exp)
            s = c if v is None else v + c
            if s:
                out[exp] = s
            elif v is not None:
                del out[exp]
        return Polynomial._make(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.vars)
            return Polynomial._make(self.vars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(exp)
                s = ca * cb if v is None else v + ca * cb
                if s:
                    out[exp] = s
                elif v is not None:
                    del out[exp]
        return Polynomial._make(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be non-negative integers")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structural equality ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        deg_order = MonomialOrder(GLOBAL_DEG)
        parts = []
        for exp in sorted(self.terms, key=deg_order.key, reverse=True):
            coeff = self.terms[exp]
            factors = []
            for v, e in zip(self.vars, exp):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mono = "*".join(factors)
            c = abs(coeff)
            if mono and c == 1:
                body = mono
            elif mono:
                body = f"{c}*{mono}"
            else:
                body = str(c)
            parts.append(("-" if coeff < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={self.vars!r})"


def with_ambient(p: Polynomial, vars: Iterable[str]) -> Polynomial:
    """Re-embed p into a (super)set of variables, preserving the polynomial."""
    vars = tuple(vars)
    if vars == p.vars:
        return p
    try:
        idx = [vars.index(v) for v in p.vars]
    except ValueError:
        missing = [v for v in p.vars if v not in vars]
        raise InputError(f"target ambient is missing variables {missing}") from None
    n = len(vars)
    out: dict[Exponent, Fraction] = {}
    for exp, c in p.terms.items():
        new = [0] * n
        for pos, e in zip(idx, exp):
            new[pos] = e
        out[tuple(new)] = c
    return Polynomial._make(vars, out)


def differentiate(p: Polynomial, var: str) -> Polynomial:
    """Formal partial derivative with exact coefficients."""
    i = p._index(var)
    out: dict[Exponent, Fraction] = {}
    for exp, c in p.terms.items():
        e = exp[i]
        if e:
            new = exp[:i] + (e - 1,) + exp[i + 1:]
            out[new] = out.get(new, Fraction(0)) + c * e
    return Polynomial._make(p.vars, {e: c for e, c in out.items() if c})


@dataclass(frozen=True)
class PolyMatrix:
    """Rectangular matrix of polynomials sharing one ambient."""

    entries: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise InputError("matrix must be non-empty")
        width = len(self.entries[0])
        vars = self.entries[0][0].vars
        for row in self.entries:
            if len(row) != width:
                raise InputError("matrix rows have unequal lengths")
            for p in row:
                if p.vars != vars:
                    raise InputError("matrix entries have mismatched ambients")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    @property
    def vars(self) -> tuple[str, ...]:
        return self.entries[0][0].vars


def jacobian(maps: Iterable[Polynomial], vars: Iterable[str]) -> PolyMatrix:
    """Jacobian matrix: row i, column j holds the derivative of maps[i] by vars[j]."""
    maps = tuple(maps)
    vars = tuple(vars)
    if not maps or not vars:
        raise InputError("jacobian needs at least one map and one variable")
    ambient = maps[0].vars
    for m in maps:
        if m.vars != ambient:
            raise InputError("jacobian maps have mismatched ambients")
    for v in vars:
        if v not in ambient:
            raise InputError(f"unknown variable {v!r}")
    rows = tuple(tuple(differentiate(m, v) for v in vars) for m in maps)
    return PolyMatrix(rows)


def maximal_minors(m: PolyMatrix) -> list[Polynomial]:
    """All maximal (nrows x nrows) minors, indexed by ascending column subsets.

    Sign convention: determinant of the selected submatrix in the given row
    order.  Expansion is exact cofactor expansion; sub-determinants are cached
    across column subsets.
    """
    r, c = m.nrows, m.ncols
    if r > c:
        raise InputError("matrix has more rows than columns; no maximal minors")
    zero = Polynomial.zero(m.vars)
    cache: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def det(row: int, cols: tuple[int, ...]) -> Polynomial:
        if not cols:
            return Polynomial.constant(m.vars, 1)
        key = (row, cols)
        got = cache.get(key)
        if got is not None:
            return got
        acc = zero
        sign = 1
        for j, col in enumerate(cols):
            entry = m.entries[row][col]
            if not entry.is_zero:
                sub = det(row + 1, cols[:j] + cols[j + 1:])
                term = entry * sub
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        cache[key] = acc
        return acc

    return [det(0, cols) for cols in itertools.combinations(range(c), r)]


def substitute(p: Polynomial, assignment: Mapping[str, Polynomial | Scalar]) -> Polynomial:
    """Exact composition: replace assigned variables, retain the rest.

    The result ambient is the first-appearance union, scanning p's variables in
    order, of each assigned variable's target ambient and each retained
    variable itself.  Assignments for variables absent from p are ignored.
    """
    targets: dict[str, Polynomial] = {}
    result_vars: list[str] = []
    seen = set()

    def admit(v: str):
        if v not in seen:
            seen.add(v)
            result_vars.append(v)

    for v in p.vars:
        if v in assignment:
            t = assignment[v]
            if isinstance(t, (int, Fraction)):
                t = Polynomial.constant((), t)
            for w in t.vars:
                admit(w)
            targets[v] = t
        else:
            admit(v)
    rv = tuple(result_vars)
    aligned = {v: with_ambient(t, rv) for v, t in targets.items()}
    for v in p.vars:
        if v not in aligned:
            aligned[v] = Polynomial.variable(rv, v)

    powers: dict[tuple[str, int], Polynomial] = {}

    def power(v: str, e: int) -> Polynomial:
        got = powers.get((v, e))
        if got is None:
            got = aligned[v] ** e
            powers[(v, e)] = got
        return got

    result = Polynomial.zero(rv)
    for exp, c in p.terms.items():
        part = Polynomial.constant(rv, c)
        for v, e in zip(p.vars, exp):
            if e:
                part = part * power(v, e)
        result = result + part
    return result
