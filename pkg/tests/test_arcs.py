"""Arc valuations and refutation of the valuation conditions."""

import pytest
from hypothesis import given, settings, strategies as st

from icis_mu import (
    Arc,
    INFINITE,
    InputError,
    Polynomial,
    arc_on_variety,
    is_finite,
    substitute,
    test_conditions_on_arcs,
    valuation,
    with_ambient,
)
from icis_mu.arcs import NO_REFUTATION_FOUND, REFUTED

import cases
from cases import CUSP_LINEAR, EVEN_BRANCH, QUARTIC_CUSP, SURFACE_XY, V2, V3, X2, Y2, S, ZS


def _arc_polys(data, max_terms=3):
    terms = data.draw(
        st.dictionaries(
            st.tuples(st.integers(1, 5)),
            st.integers(-5, 5),
            min_size=1,
            max_size=max_terms,
        )
    )
    return Polynomial(("s",), terms)


class TestArcBasics:
    def test_surface_arc_on_variety(self):
        arc = SURFACE_XY.arcs[0]
        phi = [with_ambient(p, ("t",) + V3) for p in SURFACE_XY.family.germ.phi]
        assert arc_on_variety(arc, phi)

    def test_cusp_arc_on_variety(self):
        arc = Arc.make(("t", "x", "y"), [ZS, S**3, S**2])
        phi = [with_ambient(X2**2 - Y2**3, ("t",) + V2)]
        assert arc_on_variety(arc, phi)

    def test_diagonal_arc_not_on_cusp(self):
        arc = Arc.make(("t", "x", "y"), [ZS, S, S])
        phi = [with_ambient(X2**2 - Y2**3, ("t",) + V2)]
        assert not arc_on_variety(arc, phi)

    def test_arc_must_vanish_at_origin(self):
        with pytest.raises(InputError):
            Arc.make(("x",), [S + 1])

    def test_arc_must_not_be_identically_zero(self):
        with pytest.raises(InputError):
            Arc.make(("x", "y"), [ZS, ZS])


class TestValuation:
    def test_deformation_derivative(self):
        arc = SURFACE_XY.arcs[0]
        mz = with_ambient(-Polynomial.variable(V3, "z"), ("t",) + V3)
        assert valuation(mz, arc) == 5

    def test_family_jacobian_generator(self):
        W = ("t", "x", "y", "z")
        tw, xw, yw, zw = Polynomial.variables(W)
        gen = -2 * xw * zw - 3 * tw * yw**2
        assert valuation(gen, SURFACE_XY.arcs[0]) == 7

    def test_zero_composition(self):
        arc = Arc.make(("x", "y"), [S**3, S**2])
        assert valuation(X2**2 - Y2**3, arc) == INFINITE

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_multiplicativity(self, data):
        a = _arc_polys(data)
        b = _arc_polys(data)
        arc = Arc.make(("x", "y"), [a, b])
        p = Polynomial(V2, data.draw(_poly_terms()))
        q = Polynomial(V2, data.draw(_poly_terms()))
        vp, vq = valuation(p, arc), valuation(q, arc)
        if is_finite(vp) and is_finite(vq):
            assert valuation(p * q, arc) == vp + vq

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_ultrametric_bound(self, data):
        a = _arc_polys(data)
        b = _arc_polys(data)
        arc = Arc.make(("x", "y"), [a, b])
        p = Polynomial(V2, data.draw(_poly_terms()))
        q = Polynomial(V2, data.draw(_poly_terms()))
        if (p + q).is_zero:
            return
        assert valuation(p + q, arc) >= min(valuation(p, arc), valuation(q, arc))

    @pytest.mark.parametrize("m", [2, 3])
    def test_reparametrization_covariance(self, m):
        arc = Arc.make(("x", "y"), [S**2 + S**3, S])
        rep = Arc.make(("x", "y"), [substitute(c, {"s": S**m}) for c in arc.coords])
        for p in (X2, Y2, X2 * Y2 + Y2**5, X2**2 - Y2**3):
            v = valuation(p, arc)
            if is_finite(v):
                assert valuation(p, rep) == m * v


def _poly_terms():
    return st.dictionaries(
        st.tuples(st.integers(0, 3), st.integers(0, 3)),
        st.integers(-5, 5),
        min_size=1,
        max_size=3,
    )


class TestConditionTests:
    def test_surface_family_refutes_weak_condition(self):
        rep = test_conditions_on_arcs(SURFACE_XY.family, SURFACE_XY.arcs)
        r = rep.reports[0]
        assert r.nu_dFdt == 5 and r.nu_JX == 7
        assert rep.verdict_strict == REFUTED
        assert rep.verdict_weak == REFUTED
        assert rep.verdict_closure == REFUTED

    def test_cusp_family_refutes_both(self):
        rep = test_conditions_on_arcs(CUSP_LINEAR.family, CUSP_LINEAR.arcs)
        r = rep.reports[0]
        assert r.nu_dFdt == 2 and r.nu_JX == 4  # p and (q - 1) p for (2, 3)
        assert rep.verdict_weak == REFUTED

    def test_even_branch_refutes_only_strict(self):
        rep = test_conditions_on_arcs(EVEN_BRANCH.family, EVEN_BRANCH.arcs)
        r = rep.reports[0]
        assert r.nu_dFdt == 5 and r.nu_JX == 5  # 4q - 3 with q = 2
        assert rep.verdict_strict == REFUTED
        assert rep.verdict_weak == NO_REFUTATION_FOUND
        assert rep.verdict_closure == NO_REFUTATION_FOUND

    def test_quartic_cusp_separates_constancy_from_closure(self):
        # The family is mu-constant (weighted certificate) yet the arc refutes
        # both valuation conditions: constancy does not imply them.
        rep = test_conditions_on_arcs(QUARTIC_CUSP.family, QUARTIC_CUSP.arcs)
        r = rep.reports[0]
        assert r.nu_dFdt == 4 and r.nu_JX == 8  # p and (q - 1) p for (4, 3)
        assert rep.verdict_strict == REFUTED and rep.verdict_weak == REFUTED
        from icis_mu import family_mu_check

        assert family_mu_check(QUARTIC_CUSP.family, samples=3, seed=0).constant

    def test_off_variety_arc_is_rejected_with_diagnosis(self):
        bad = Arc.make(("t", "x", "y"), [ZS, S, S])
        rep = test_conditions_on_arcs(CUSP_LINEAR.family, [bad])
        assert not rep.reports
        assert rep.rejected and "variety" in rep.rejected[0][1]
        assert rep.verdict_strict == NO_REFUTATION_FOUND

    def test_wrong_arity_arc_is_rejected(self):
        bad = Arc.make(("t", "x"), [ZS, S])
        rep = test_conditions_on_arcs(CUSP_LINEAR.family, [bad])
        assert rep.rejected and "ambient" in rep.rejected[0][1]

    def test_degenerate_arc_refutes_nothing(self):
        # Along t = s, x = y = 0 both dF/dt and J_X pull back to zero for the
        # product family below; the conditions hold trivially on such an arc.
        from icis_mu import FamilyFixedX, MapGerm

        germ = MapGerm.make([X2**2 - Y2**3], V2)
        W = V2 + ("t",)
        xw, yw, tw = Polynomial.variables(W)
        fam = FamilyFixedX.make(germ, xw * yw + tw * xw * yw, "t")
        arc = Arc.make(("t", "x", "y"), [S, ZS, ZS])
        rep = test_conditions_on_arcs(fam, [arc])
        assert rep.reports[0].degenerate
        assert rep.verdict_strict == NO_REFUTATION_FOUND
        assert rep.verdict_weak == NO_REFUTATION_FOUND
