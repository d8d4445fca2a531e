"""Exact-arithmetic toolkit for Milnor numbers of function germs on isolated
complete intersection singularities and for mu-constancy of their
deformations: colength computations through local standard bases, valuation
tests along arcs, and polyhedral / weighted-homogeneity certificates.

The core works with polynomial representatives of germs; all the arithmetic
is exact over the rationals.
"""

from .arcs import Arc, ArcTestReport, ValuationReport, arc_on_variety, test_conditions_on_arcs, valuation
from .errors import (
    ComputationLimitError,
    HypothesisFailureError,
    InputError,
    InternalConsistencyError,
    ParseError,
)
from .invariants import (
    FamilyDeformedX,
    FamilyFixedX,
    FamilyVerdict,
    FunctionOnGerm,
    MapGerm,
    MilnorReport,
    family_mu_check,
    family_mu_check_deformed,
    milnor_report,
    mu_icis,
    mu_rel,
)
from .newton import (
    Certificate,
    CompactFace,
    NewtonPolyhedron,
    certify_newton,
    certify_weighted_nonnegative,
    compact_faces,
    face_restriction,
    find_weights,
    is_newton_nondegenerate,
    newton_polyhedron,
    polyhedron_contains,
)
from .polyring import (
    MonomialOrder,
    Polynomial,
    PolyMatrix,
    compare_monomials,
    differentiate,
    global_order,
    jacobian,
    local_order,
    maximal_minors,
    substitute,
    with_ambient,
)
from .problems import ProblemFile, parse_polynomial, parse_problem
from .standard_basis import (
    Budget,
    INFINITE,
    IdealBasis,
    StandardBasis,
    colength,
    compute_standard_basis,
    is_finite,
    is_unit_ideal,
    normal_form,
)

__version__ = "0.1.0"
