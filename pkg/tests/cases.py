"""Shared fixtures: germs, families and arcs used across the test suite.

Every family fixture carries the exactly-known values (or verdicts) asserted
in the tests; entries marked oracle-pinned are confirmed independently by the
truncated-jet colength oracle in oracles.py.
"""

from __future__ import annotations

from dataclasses import dataclass

from icis_mu import Arc, FamilyDeformedX, FamilyFixedX, MapGerm, Polynomial

V2 = ("x", "y")
V3 = ("x", "y", "z")
X2, Y2 = Polynomial.variables(V2)
X3, Y3, Z3 = Polynomial.variables(V3)
S = Polynomial.variable(("s",), "s")
ZS = Polynomial.zero(("s",))


@dataclass(frozen=True)
class FamilyCase:
    name: str
    family: FamilyFixedX
    mu0: int | None = None
    mu_gen: int | None = None
    constant: bool | None = None
    arcs: tuple[Arc, ...] = ()
    problem_file: str | None = None


def _surface_xy() -> FamilyCase:
    germ = MapGerm.make([X3**5 + Y3**3 + Z3**2], V3)
    fam = FamilyFixedX.from_split(germ, X3 * Y3, -Z3, "t")
    arc = Arc.make(("t", "x", "y", "z"), [ZS, -(S**2), ZS, S**5])
    return FamilyCase(
        "surface_xy", fam, mu0=17, mu_gen=16, constant=False, arcs=(arc,),
        problem_file="problems/surface_xy_family.prob",
    )


def pq_family(p: int, q: int) -> FamilyCase:
    """x deformed along y on the plane curve x^p - y^q = 0."""
    germ = MapGerm.make([X2**p - Y2**q], V2)
    fam = FamilyFixedX.from_split(germ, X2, Y2, "t")
    arc = Arc.make(("t", "x", "y"), [ZS, S**q, S**p])
    constant = p > q
    return FamilyCase(
        f"pq_{p}_{q}", fam,
        mu0=p * q - p,
        mu_gen=(p * q - p) if constant else (p * q - q),
        constant=constant,
        arcs=(arc,),
    )


def _cusp_linear() -> FamilyCase:
    case = pq_family(2, 3)
    return FamilyCase(
        "cusp_linear", case.family, case.mu0, case.mu_gen, case.constant, case.arcs,
        problem_file="problems/cusp_linear_family.prob",
    )


def _quartic_cusp() -> FamilyCase:
    case = pq_family(4, 3)
    return FamilyCase(
        "quartic_cusp", case.family, case.mu0, case.mu_gen, case.constant, case.arcs,
        problem_file="problems/quartic_cusp_family.prob",
    )


def _even_branch(q: int = 2) -> FamilyCase:
    germ = MapGerm.make([X2 ** (2 * q) - Y2**q], V2)
    fam = FamilyFixedX.from_split(germ, X2 ** (2 * q) + Y2**q, X2 ** (4 * q - 3), "t")
    arc = Arc.make(("t", "x", "y"), [ZS, S, S**2])
    return FamilyCase(
        "even_branch", fam, arcs=(arc,),
        problem_file="problems/even_branch_family.prob",
    )


def _space_curve() -> FamilyCase:
    germ = MapGerm.make([X3 * Y3, X3**15 + Y3**10 + Z3**6], V3)
    fam = FamilyFixedX.from_split(germ, X3 + Z3, X3 * Y3, "t")
    return FamilyCase(
        "space_curve", fam, constant=True,
        problem_file="problems/space_curve_family.prob",
    )


def _cubic_surface() -> FamilyCase:
    germ = MapGerm.make([X3**3 + Y3**3 + Z3**4 + X3 * Y3 * Z3], V3)
    fam = FamilyFixedX.from_split(germ, X3 * Y3 + Z3**2, X3**3, "t")
    return FamilyCase(
        "cubic_surface", fam, constant=True,
        problem_file="problems/cubic_surface_family.prob",
    )


SURFACE_XY = _surface_xy()
CUSP_LINEAR = _cusp_linear()
QUINTIC_PAIR = pq_family(3, 5)
QUARTIC_CUSP = _quartic_cusp()
EVEN_BRANCH = _even_branch()
SPACE_CURVE = _space_curve()
CUBIC_SURFACE = _cubic_surface()

ALL_FIXED_FAMILIES = (
    SURFACE_XY,
    CUSP_LINEAR,
    QUINTIC_PAIR,
    QUARTIC_CUSP,
    EVEN_BRANCH,
    SPACE_CURVE,
    CUBIC_SURFACE,
)


def deformed_cusp_to_node() -> FamilyDeformedX:
    W = ("x", "y", "t")
    xw, yw, tw = Polynomial.variables(W)
    return FamilyDeformedX.make([xw**2 - yw**3 - tw * yw**2], X2, V2, "t")
