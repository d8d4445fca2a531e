"""Arc and valuation calculus: refuting integral-closure conditions on curves.

An arc is a parametrized curve germ through the origin, one polynomial in a
single parameter per ambient coordinate (the deformation parameter first, then
the space variables).  Composing a germ with an arc and reading off the order
of vanishing realizes the valuation side of the integral-closure criterion:
if some arc gamma inside C x X has

    nu(dF/dt o gamma)  <  inf_i nu(B_i o gamma)

for the maximal minors B_i of the family Jacobian, then dF/dt lies outside
the integral closure of the ideal they generate, and the corresponding
valuation conditions are refuted.  Finitely many arcs can only refute, never
prove, so the global verdict is either REFUTED or NO-REFUTATION-FOUND.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .invariants import FamilyFixedX
from .polyring import Polynomial, differentiate, jacobian, maximal_minors, substitute, with_ambient
from .standard_basis import INFINITE, is_finite

REFUTED = "REFUTED"
NO_REFUTATION_FOUND = "NO-REFUTATION-FOUND"


@dataclass(frozen=True)
class Arc:
    """Curve germ s -> (t(s), x_1(s), ..., x_n(s)) with polynomial coordinates.

    Every coordinate must vanish at s = 0 (the arc passes through the origin)
    and at least one coordinate must be nonzero.
    """

    names: tuple[str, ...]
    coords: tuple[Polynomial, ...]
    svar: str

    @classmethod
    def make(cls, names: Iterable[str], coords: Iterable[Polynomial], svar: str = "s") -> "Arc":
        names = tuple(names)
        coords = tuple(with_ambient(c, (svar,)) for c in coords)
        if len(names) != len(coords):
            raise InputError("arc needs exactly one coordinate polynomial per ambient name")
        if len(set(names)) != len(names):
            raise InputError("duplicate coordinate names in arc")
        if all(c.is_zero for c in coords):
            raise InputError("arc coordinates are all identically zero")
        for name, c in zip(names, coords):
            if c.constant_term():
                raise InputError(f"arc coordinate {name!r} does not vanish at s = 0")
        return cls(names, coords, svar)

    def assignment(self) -> dict[str, Polynomial]:
        return dict(zip(self.names, self.coords))


def valuation(p: Polynomial, arc: Arc) -> int | float:
    """Order of vanishing at s = 0 of p composed with the arc; INFINITE when
    the composition is identically zero."""
    missing = [v for v in p.vars if v not in arc.names]
    if missing:
        raise InputError(f"arc does not bind variables {missing}")
    composed = substitute(p, arc.assignment())
    order = composed.order_at_origin()
    return INFINITE if order is None else order


def arc_on_variety(arc: Arc, phi: Iterable[Polynomial]) -> bool:
    """True iff every defining equation composes to exactly zero on the arc."""
    return all(not is_finite(valuation(p, arc)) for p in phi)


@dataclass(frozen=True)
class ValuationReport:
    """Valuations of dF/dt and of the family Jacobian minors along one arc."""

    arc: Arc
    nu_dFdt: int | float
    per_generator: tuple[int | float, ...]
    nu_JX: int | float
    refutes_strict: bool  # condition with ">": refuted when nu(dF/dt) <= nu(J_X)
    refutes_weak: bool    # condition with ">=": refuted when nu(dF/dt) < nu(J_X)
    degenerate: bool      # both sides identically zero along the arc


@dataclass(frozen=True)
class ArcTestReport:
    reports: tuple[ValuationReport, ...]
    rejected: tuple[tuple[Arc, str], ...]
    verdict_strict: str   # condition (2_X)
    verdict_weak: str     # condition (3_X)
    verdict_closure: str  # condition (4_X), equivalent to the weak condition


def _judge(nu_dfdt: int | float, nu_jx: int | float) -> tuple[bool, bool, bool]:
    degenerate = not is_finite(nu_dfdt) and not is_finite(nu_jx)
    if degenerate:
        # Both compositions vanish identically: the conditions hold trivially
        # along this arc, so nothing is refuted.
        return False, False, True
    refutes_weak = nu_dfdt < nu_jx
    refutes_strict = nu_dfdt <= nu_jx
    return refutes_strict, refutes_weak, False


def test_conditions_on_arcs(fam: FamilyFixedX, arcs: Iterable[Arc]) -> ArcTestReport:
    """Evaluate the strict and weak valuation conditions on the given arcs.

    Arcs that do not land inside C x X are rejected with a diagnosis.  The
    strict condition demands nu(dF/dt o gamma) > inf nu(B_i o gamma) for all
    curves, so one arc with <= refutes it; the weak condition uses >= and is
    refuted by strict <.  A refutation of the weak condition also refutes the
    integral-closure condition, which is equivalent to it.
    """
    arcs = tuple(arcs)
    vars = fam.germ.vars
    ambient = (fam.t,) + vars
    F = with_ambient(fam.F, ambient)
    dFdt = differentiate(F, fam.t)
    phi_ext = tuple(with_ambient(p, ambient) for p in fam.germ.phi)
    if phi_ext:
        minors = maximal_minors(jacobian([F, *phi_ext], vars))
    else:
        minors = maximal_minors(jacobian([F], vars))
    generators = [m for m in minors if not m.is_zero]

    reports = []
    rejected = []
    for arc in arcs:
        if arc.names != ambient:
            rejected.append(
                (arc, f"arc coordinates {arc.names} do not match the ambient {ambient}")
            )
            continue
        if not arc_on_variety(arc, phi_ext):
            rejected.append((arc, "arc does not lie on the variety of phi"))
            continue
        nu_top = valuation(dFdt, arc)
        per_gen = tuple(valuation(b, arc) for b in generators)
        nu_jx = min(per_gen) if per_gen else INFINITE
        strict, weak, degenerate = _judge(nu_top, nu_jx)
        reports.append(ValuationReport(arc, nu_top, per_gen, nu_jx, strict, weak, degenerate))

    verdict_strict = REFUTED if any(r.refutes_strict for r in reports) else NO_REFUTATION_FOUND
    verdict_weak = REFUTED if any(r.refutes_weak for r in reports) else NO_REFUTATION_FOUND
    return ArcTestReport(tuple(reports), tuple(rejected), verdict_strict, verdict_weak, verdict_weak)
