"""Newton polyhedra of ideals, non-degeneracy, and mu-constancy certificates.

The Newton polyhedron of a set of generators is the convex hull of the union
of their supports plus the positive orthant.  It is represented exactly: the
vertex set, and the complete list of facet inequalities <a, x> >= b with
componentwise non-negative integer normals.  Facets are found by enumerating
candidate active sets (vertex subsets plus coordinate rays) and solving for
the supporting hyperplane over the rationals; membership through the facet
list is cross-checked in the test suite against an independent exact
linear-feasibility route.

Two sufficient certificates for mu-constancy of a family F = f + t*g are
implemented:

* newton-inclusion: the ideal <phi> + J(f, phi) is Newton non-degenerate and
  the supports of g and of the deformation minors of J(g, phi) lie inside its
  Newton polyhedron.  This places dF/dt in the integral closure of the family
  Jacobian ideal, which forces constancy.
* weighted-nonnegative: phi and f are weighted homogeneous with common
  weights and every deformation term has initial weighted degree at least
  that of f.

Both are sufficient only: FAILED never proves that a family is not
mu-constant, and the certificates say so in their notes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .errors import ComputationLimitError, InputError
from .invariants import FamilyFixedX, relative_jacobian_ideal
from .polyring import (
    Exponent,
    Polynomial,
    global_order,
    jacobian,
    local_order,
    maximal_minors,
    with_ambient,
)
from .ratlp import OPTIMAL, feasible_point, minimize, nullspace, rank
from .standard_basis import Budget, DEFAULT_BUDGET, IdealBasis, colength, is_finite, is_unit_ideal

#: Documented caps: ambient dimension and support size for polyhedron work.
MAX_DIMENSION = 6
MAX_SUPPORT = 40
MAX_FACE_VERTICES = 18

CERTIFIED = "CERTIFIED"
NOT_APPLICABLE = "NOT-APPLICABLE"
FAILED = "FAILED"

KIND_NEWTON = "newton-inclusion"
KIND_WEIGHTED = "weighted-nonnegative"


@dataclass(frozen=True)
class Facet:
    """Half-space <normal, x> >= offset with primitive integer data."""

    normal: tuple[int, ...]
    offset: int


@dataclass(frozen=True)
class NewtonPolyhedron:
    dim: int
    support: tuple[Exponent, ...]
    vertices: tuple[Exponent, ...]
    facets: tuple[Facet, ...]


@dataclass(frozen=True)
class CompactFace:
    """A compact face: witness normal w > 0, the support points achieving the
    minimum of <w, .>, and that minimum value."""

    witness: tuple[int, ...]
    points: tuple[Exponent, ...]
    value: int


@dataclass(frozen=True)
class FaceCheck:
    face: CompactFace
    restricted: tuple[Polynomial, ...]
    unit_ideal: bool


@dataclass(frozen=True)
class NondegeneracyResult:
    """Outcome of the torus-zero test over all compact faces.

    ``applicable`` is False when the ideal has infinite colength; the notion
    is only defined for finite-colength ideals and no verdict is given then.
    """

    applicable: bool
    nondegenerate: bool | None
    ideal_colength: int | float
    polyhedron: NewtonPolyhedron | None
    checks: tuple[FaceCheck, ...]


@dataclass(frozen=True)
class CertificateCheck:
    label: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Certificate:
    kind: str
    verdict: str
    checks: tuple[CertificateCheck, ...] = ()
    note: str = ""

    def __post_init__(self):
        if self.verdict == CERTIFIED and not all(c.passed for c in self.checks):
            raise InputError("a certificate cannot be CERTIFIED with failing checks")


@dataclass(frozen=True)
class WeightAssignment:
    """Positive coprime integer weights plus one weighted degree per input."""

    weights: tuple[int, ...]
    degrees: tuple[int, ...]


def _primitive(vec: Iterable[Fraction]) -> tuple[int, ...]:
    vec = list(vec)
    den = 1
    for v in vec:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def newton_polyhedron(gens: Iterable[Polynomial]) -> NewtonPolyhedron:
    """Exact vertex and facet description of conv(union of supports) + R^n_+."""
    gens = tuple(gens)
    if not gens:
        raise InputError("newton_polyhedron needs at least one generator")
    vars = gens[0].vars
    for g in gens:
        if g.vars != vars:
            raise InputError("generators have mismatched ambients")
        if g.is_zero:
            raise InputError("zero generator has no Newton polyhedron")
    n = len(vars)
    if n > MAX_DIMENSION:
        raise ComputationLimitError(
            f"ambient dimension {n} exceeds the polyhedron cap of {MAX_DIMENSION}",
            {"dimension": n},
        )
    support: set[Exponent] = set()
    for g in gens:
        support.update(g.terms)
    if len(support) > MAX_SUPPORT:
        raise ComputationLimitError(
            f"support size {len(support)} exceeds the cap of {MAX_SUPPORT}",
            {"support": len(support)},
        )
    points = sorted(support)
    vertices = tuple(p for p in points if _is_vertex(p, points))
    facets = _enumerate_facets(points, vertices, n)
    return NewtonPolyhedron(n, tuple(points), vertices, facets)


def _dominates(a: Exponent, b: Exponent) -> bool:
    """a >= b componentwise (so a lies in b + R^n_+)."""
    return all(x >= y for x, y in zip(a, b))


def _is_vertex(p: Exponent, points: list[Exponent]) -> bool:
    others = [q for q in points if q != p]
    if any(_dominates(p, q) for q in others):
        return False
    if not others:
        return True
    return not _point_in_hull_plus_orthant(p, others)


def _point_in_hull_plus_orthant(k: Exponent, points: list[Exponent]) -> bool:
    """Exact feasibility of k in conv(points) + R^n_+."""
    m = len(points)
    n = len(k)
    eqs = [([Fraction(1)] * m, Fraction(1))]
    ges = []
    for i in range(n):
        ges.append(([Fraction(-q[i]) for q in points], Fraction(-k[i])))
    return feasible_point(m, eqs, ges) is not None


def _enumerate_facets(points: list[Exponent], vertices: tuple[Exponent, ...], n: int) -> tuple[Facet, ...]:
    """All facets, by solving for supporting hyperplanes of candidate active
    sets: |T| vertices plus |R| coordinate rays with |T| + |R| = n, |T| >= 1.

    The polyhedron is pointed and full-dimensional, so every facet has such an
    affinely independent active set and the enumeration is complete.
    """
    candidates = sum(
        _binomial(len(vertices), k) * _binomial(n, n - k) for k in range(1, n + 1)
    )
    if candidates > 200_000:
        raise ComputationLimitError(
            "facet enumeration budget exceeded", {"candidates": candidates}
        )
    found: set[Facet] = set()
    axes = list(range(n))
    for k in range(1, n + 1):
        for T in itertools.combinations(vertices, k):
            for R in itertools.combinations(axes, n - k):
                facet = _facet_from_active_set(T, R, points, n)
                if facet is not None:
                    found.add(facet)
    return tuple(sorted(found, key=lambda f: (f.normal, f.offset)))


def _binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _facet_from_active_set(
    T: tuple[Exponent, ...], R: tuple[int, ...], points: list[Exponent], n: int
) -> Facet | None:
    # Unknowns (a_1..a_n, b): <a, t> - b = 0 on T, a_r = 0 on R.
    rows = [[Fraction(x) for x in t] + [Fraction(-1)] for t in T]
    for r in R:
        row = [Fraction(0)] * (n + 1)
        row[r] = Fraction(1)
        rows.append(row)
    basis = nullspace(rows, n + 1)
    if len(basis) != 1:
        return None
    a, b = list(basis[0][:n]), basis[0][n]
    if all(x == 0 for x in a):
        return None
    vals = [sum(ai * pi for ai, pi in zip(a, p)) - b for p in points]
    if all(v >= 0 for v in vals):
        pass
    elif all(v <= 0 for v in vals):
        a, b, vals = [-x for x in a], -b, [-v for v in vals]
    else:
        return None
    if any(x < 0 for x in a):
        return None
    # Facet check: active generators must span an (n-1)-dimensional set.
    active_points = [p for p, v in zip(points, vals) if v == 0]
    active_rays = [i for i in range(n) if a[i] == 0]
    if not active_points:
        return None
    p0 = active_points[0]
    span_rows = [[Fraction(x - y) for x, y in zip(p, p0)] for p in active_points[1:]]
    for i in active_rays:
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        span_rows.append(row)
    if rank(span_rows) != n - 1:
        return None
    prim = _primitive([Fraction(x) for x in a] + [Fraction(b)])
    return Facet(prim[:n], prim[n])


def polyhedron_contains(np: NewtonPolyhedron, k: Exponent) -> bool:
    """Membership through the facet inequalities."""
    if len(k) != np.dim:
        raise InputError("point dimension does not match the polyhedron")
    return all(
        sum(a * x for a, x in zip(f.normal, k)) >= f.offset for f in np.facets
    )


def contains_by_feasibility(np: NewtonPolyhedron, k: Exponent) -> bool:
    """Independent membership route: exact linear feasibility of
    k in conv(support) + R^n_+.  Used to cross-check the facet route."""
    if len(k) != np.dim:
        raise InputError("point dimension does not match the polyhedron")
    return _point_in_hull_plus_orthant(tuple(k), list(np.support))


def compact_faces(np: NewtonPolyhedron) -> list[CompactFace]:
    """Every compact face, each with a strictly positive witness normal.

    A vertex subset V' spans a compact face iff some w > 0 is constant on V'
    and strictly larger on the remaining vertices; the face's point set is
    then every support point achieving the minimum.  Enumeration is over
    vertex subsets, which is complete because the extreme points of a face
    are extreme points of the polyhedron.
    """
    V = np.vertices
    if len(V) > MAX_FACE_VERTICES:
        raise ComputationLimitError(
            "compact-face enumeration budget exceeded", {"vertices": len(V)}
        )
    n = np.dim
    faces: dict[tuple[Exponent, ...], CompactFace] = {}
    for size in range(1, len(V) + 1):
        for sub in itertools.combinations(V, size):
            w = _face_witness(sub, V, n)
            if w is None:
                continue
            value = min(sum(a * x for a, x in zip(w, p)) for p in np.support)
            pts = tuple(
                p for p in np.support if sum(a * x for a, x in zip(w, p)) == value
            )
            faces.setdefault(pts, CompactFace(w, pts, value))
    return sorted(faces.values(), key=lambda f: (len(f.points), f.points))


def _face_witness(
    sub: tuple[Exponent, ...], vertices: tuple[Exponent, ...], n: int
) -> tuple[int, ...] | None:
    v0 = sub[0]
    eqs = []
    for v in sub[1:]:
        eqs.append(([Fraction(v[i] - v0[i]) for i in range(n)], Fraction(0)))
    ges = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        ges.append((row, Fraction(1)))
    for u in vertices:
        if u in sub:
            continue
        ges.append(([Fraction(u[i] - v0[i]) for i in range(n)], Fraction(1)))
    w = feasible_point(n, eqs, ges)
    if w is None:
        return None
    prim = _primitive(w)
    assert all(x > 0 for x in prim)
    return prim


def face_restriction(g: Polynomial, face: CompactFace) -> Polynomial:
    """Sum of the terms of g whose exponents lie on the face; zero if none.

    A point is on the compact face iff it achieves the witness minimum and
    lies in the convex hull of the face's points.
    """
    n = len(face.witness)
    if len(g.vars) != n:
        raise InputError("polynomial ambient does not match the face dimension")
    kept = {}
    for exp, c in g.terms.items():
        if sum(a * x for a, x in zip(face.witness, exp)) != face.value:
            continue
        if _in_convex_hull(exp, face.points):
            kept[exp] = c
    return Polynomial(g.vars, kept)


def _in_convex_hull(k: Exponent, points: tuple[Exponent, ...]) -> bool:
    if k in points:
        return True
    m = len(points)
    n = len(k)
    eqs = [([Fraction(1)] * m, Fraction(1))]
    for i in range(n):
        eqs.append(([Fraction(p[i]) for p in points], Fraction(k[i])))
    return feasible_point(m, eqs, []) is not None


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def is_newton_nondegenerate(
    gens: Iterable[Polynomial], budget: Budget = DEFAULT_BUDGET
) -> NondegeneracyResult:
    """Torus-zero test: for every compact face, the face-restricted generators
    must have no common zero with all coordinates nonzero.

    Defined only for ideals of finite colength; that hypothesis is verified
    first with the standard-basis engine and the result is flagged not
    applicable otherwise.  The torus condition is decided by adjoining one
    Rabinowitsch polynomial u * x_1...x_n - 1, which inverts every coordinate
    at once, and testing for the unit ideal under a global order.
    """
    gens = tuple(g for g in gens if not g.is_zero)
    if not gens:
        raise InputError("non-degeneracy test needs nonzero generators")
    vars = gens[0].vars
    c = colength(IdealBasis.make(gens, local_order()), budget)
    if not is_finite(c):
        return NondegeneracyResult(False, None, c, None, ())
    np = newton_polyhedron(gens)
    faces = compact_faces(np)
    uname = _fresh_name("u", vars)
    ext = vars + (uname,)
    torus = Polynomial.variable(ext, uname)
    for v in vars:
        torus = torus * Polynomial.variable(ext, v)
    torus = torus - 1
    checks = []
    all_unit = True
    for face in faces:
        restricted = tuple(face_restriction(g, face) for g in gens)
        system = [with_ambient(r, ext) for r in restricted if not r.is_zero]
        unit = is_unit_ideal(IdealBasis.make(system + [torus], global_order()), budget)
        all_unit = all_unit and unit
        checks.append(FaceCheck(face, restricted, unit))
    return NondegeneracyResult(True, all_unit, c, np, tuple(checks))


def certify_newton(fam: FamilyFixedX, budget: Budget = DEFAULT_BUDGET) -> Certificate:
    """Polyhedral sufficient certificate for mu-constancy of F = f + t*g.

    Verifies that I = <phi> + J(f, phi) is Newton non-degenerate and that the
    support of g and of every deformation minor C_i of J(g, phi) lies inside
    the Newton polyhedron of I.  The deformation minors appear because each
    family minor splits as B_i = B_i0 + t*C_i by multilinearity of the
    determinant.  The certificate is sufficient only: FAILED does not mean
    the family is not mu-constant.
    """
    if fam.split is None:
        return Certificate(
            KIND_NEWTON,
            NOT_APPLICABLE,
            note="the deformation is not linear in t, so no split F = f + t*g exists",
        )
    f, g = fam.split
    vars = fam.germ.vars
    phi = fam.germ.phi
    ideal_gens = [p for p in relative_jacobian_ideal(f, phi, vars) if not p.is_zero]
    if not ideal_gens:
        return Certificate(KIND_NEWTON, NOT_APPLICABLE, note="the family ideal is zero")
    nondeg = is_newton_nondegenerate(ideal_gens, budget)
    if not nondeg.applicable:
        return Certificate(
            KIND_NEWTON,
            NOT_APPLICABLE,
            note="the ideal <phi> + J(f,phi) has infinite colength",
        )
    checks = [
        CertificateCheck(
            "newton non-degeneracy of <phi> + J(f,phi)",
            bool(nondeg.nondegenerate),
            f"{sum(1 for c in nondeg.checks if c.unit_ideal)}/{len(nondeg.checks)} faces pass",
        )
    ]
    np = nondeg.polyhedron
    assert np is not None
    for exp in g.support():
        checks.append(
            CertificateCheck(
                "supp(g) inside Newton polyhedron",
                polyhedron_contains(np, exp),
                f"point {exp}",
            )
        )
    if phi:
        deformation_minors = maximal_minors(jacobian([g, *phi], vars))
    else:
        deformation_minors = maximal_minors(jacobian([g], vars))
    for i, ci in enumerate(deformation_minors):
        for exp in ci.support():
            checks.append(
                CertificateCheck(
                    f"supp(C_{i + 1}) inside Newton polyhedron",
                    polyhedron_contains(np, exp),
                    f"point {exp}",
                )
            )
    verdict = CERTIFIED if all(c.passed for c in checks) else FAILED
    note = (
        "sufficient certificate only: FAILED does not refute mu-constancy"
        if verdict == FAILED
        else ""
    )
    return Certificate(KIND_NEWTON, verdict, tuple(checks), note)


def find_weights(polys: Iterable[Polynomial]) -> WeightAssignment | None:
    """Common positive weights making every input weighted homogeneous.

    Solves the exact feasibility problem <w, k> constant on each polynomial's
    support with w > 0, and returns the lexicographically smallest solution of
    the scale-normalized problem as coprime positive integers, together with
    the weighted degree of each input.  None when no such weights exist.
    """
    polys = tuple(polys)
    if not polys:
        raise InputError("find_weights needs at least one polynomial")
    vars = polys[0].vars
    n = len(vars)
    eqs: list[tuple[list[Fraction], Fraction]] = []
    anchors = []
    for p in polys:
        if p.vars != vars:
            raise InputError("polynomials have mismatched ambients")
        if p.is_zero:
            raise InputError("zero polynomial has no weighted degree")
        supp = p.support()
        anchors.append(supp[0])
        for k in supp[1:]:
            eqs.append(([Fraction(k[i] - supp[0][i]) for i in range(n)], Fraction(0)))
    ges = []
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        ges.append((row, Fraction(1)))
    # Lexicographically minimize w_1, then w_2, ... over the shifted cone.
    fixed = list(eqs)
    w: list[Fraction] = []
    for i in range(n):
        cost = [Fraction(0)] * n
        cost[i] = Fraction(1)
        status, point, value = minimize(n, fixed, ges, cost)
        if status != OPTIMAL:
            return None
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        fixed.append((row, value))
        w.append(value)
    weights = _primitive(w)
    degrees = tuple(sum(a * x for a, x in zip(weights, k)) for k in anchors)
    return WeightAssignment(weights, degrees)


def min_weighted_degree(p: Polynomial, weights: tuple[int, ...]) -> int:
    """Weighted degree of the initial part (the lowest weighted-degree piece)."""
    if p.is_zero:
        raise InputError("zero polynomial has no initial part")
    return min(sum(a * x for a, x in zip(weights, exp)) for exp in p.terms)


def certify_weighted_nonnegative(fam: FamilyFixedX, budget: Budget = DEFAULT_BUDGET) -> Certificate:
    """Weighted-homogeneity certificate: X and f weighted homogeneous with the
    same weights, and every deformation term alpha_i (the coefficient of t^i
    in F) has initial weighted degree at least that of f.  Any polynomial
    dependence on t is accepted.  NOT-APPLICABLE when no common weights exist.
    """
    vars = fam.germ.vars
    deg_t = fam.F.degree_in(fam.t)
    f = with_ambient(fam.F.coefficient_of_power(fam.t, 0), vars)
    alphas = []
    for k in range(1, deg_t + 1):
        ck = with_ambient(fam.F.coefficient_of_power(fam.t, k), vars)
        if not ck.is_zero:
            alphas.append((k, ck))
    if f.is_zero:
        return Certificate(KIND_WEIGHTED, NOT_APPLICABLE, note="the family has no t=0 member")
    wa = find_weights(fam.germ.phi + (f,))
    if wa is None:
        return Certificate(
            KIND_WEIGHTED,
            NOT_APPLICABLE,
            note="phi and f admit no common positive weights",
        )
    d_f = wa.degrees[-1]
    checks = [
        CertificateCheck(
            "common weights for (phi, f)",
            True,
            f"weights {wa.weights}, degrees {wa.degrees}",
        )
    ]
    for k, alpha in alphas:
        d_alpha = min_weighted_degree(alpha, wa.weights)
        checks.append(
            CertificateCheck(
                f"deformation term at t^{k} is non-negative",
                d_alpha >= d_f,
                f"initial weighted degree {d_alpha} vs wt(f) = {d_f}",
            )
        )
    verdict = CERTIFIED if all(c.passed for c in checks) else FAILED
    note = (
        "sufficient certificate only: FAILED does not refute mu-constancy"
        if verdict == FAILED
        else ""
    )
    return Certificate(KIND_WEIGHTED, verdict, tuple(checks), note)
