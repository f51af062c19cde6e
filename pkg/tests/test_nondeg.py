import pytest
from hypothesis import assume, given, settings, strategies as st

from possing.localalg import INFINITY, milnor, tjurina
from possing.newton import cpolytope_from_poly
from possing.nondeg import (
    detect_qh,
    innd_check,
    saito_check,
    sqh_check,
    weighted_initial_form,
)
from possing.poly import Ring, poly_from_string

RQ = Ring(0, ("x", "y"))


def P(ring, text):
    return poly_from_string(ring, text)


class TestDetectQH:
    def test_space_singularity(self):
        R = Ring(0, ("x", "y", "z"))
        qh = detect_qh(P(R, "x^2*z+y^3+z^4"))
        assert qh.weights == (9, 8, 6) and qh.degree == 24

    def test_cusp_family(self):
        R = Ring(0, ("x", "y", "z"))
        qh = detect_qh(P(R, "x^3+x*y^3+z^2"))
        assert qh.weights == (6, 4, 9) and qh.degree == 18

    def test_two_facet_support_is_not_qh(self):
        f = RQ.poly([((4, 0), 1), ((2, 2), 1), ((0, 5), 1)])
        assert detect_qh(f) is None

    def test_single_monomial_minimal_weights(self):
        qh = detect_qh(P(RQ, "x^3"))
        assert qh.weights == (1, 1) and qh.degree == 3

    def test_gcd_normalized(self):
        qh = detect_qh(P(RQ, "x^2+y^2"))
        assert qh.weights == (1, 1) and qh.degree == 2


class TestSQH:
    def test_right_product_formula(self):
        R = Ring(0, ("x", "y", "z"))
        rep = sqh_check(P(R, "x^2*z+y^3+z^4"), (9, 8, 6), "right")
        assert rep.semi
        assert rep.principal_invariant == 10
        assert rep.product_formula == 10
        assert rep.formula_consistent

    def test_contact_but_not_right(self):
        R7 = Ring(7, ("x", "y"))
        f = P(R7, "x^7+x^6*y+y^4")
        contact = sqh_check(f, (4, 7), "contact")
        right = sqh_check(f, (4, 7), "right")
        assert contact.semi and contact.principal_invariant == 21
        assert not right.semi and right.principal_invariant == INFINITY

    def test_qh_input_is_its_own_principal_part(self):
        f = P(RQ, "x^3+y^3")
        rep = sqh_check(f, (1, 1), "right")
        assert rep.principal_part == f
        assert rep.semi and rep.principal_invariant == milnor(f)

    def test_weighted_initial_form(self):
        R7 = Ring(7, ("x", "y"))
        assert weighted_initial_form(P(R7, "x^7+x^6*y+y^4"), (4, 7)) == P(
            R7, "x^7+y^4"
        )


class TestINND:
    def test_cusp_sum(self):
        R5 = Ring(5, ("x", "y"))
        f = P(R5, "x^3+y^3")
        assert innd_check(f, cpolytope_from_poly(f)).nondegenerate

    def test_vanishing_jacobian_fails(self):
        R2 = Ring(2, ("x", "y"))
        f = P(R2, "x^2+y^2")
        rep = innd_check(f, cpolytope_from_poly(f))
        assert not rep.nondegenerate
        assert rep.failing is not None

    def test_t45_char7(self):
        R7 = Ring(7, ("x", "y"))
        f = P(R7, "x^5+x^2*y^2+y^4")
        assert innd_check(f, cpolytope_from_poly(f)).nondegenerate

    def test_t45_char2_fails(self):
        R2 = Ring(2, ("x", "y"))
        f = P(R2, "x^5+x^2*y^2+y^4")
        assert not innd_check(f, cpolytope_from_poly(f)).nondegenerate


class TestSaito:
    def test_quasihomogeneous_cases(self):
        assert saito_check(P(RQ, "x^3+y^3"))
        assert saito_check(P(RQ, "x^2+y^7"))

    def test_non_quasihomogeneous(self):
        f = P(RQ, "x^5+y^5+x^3*y^3")
        # frozen from the standard-basis engine: mu=16, tau=15
        assert milnor(f) == 16 and tjurina(f) == 15
        assert not saito_check(f)

    def test_positive_characteristic_rejected(self):
        R5 = Ring(5, ("x", "y"))
        with pytest.raises(ValueError):
            saito_check(P(R5, "x^3+y^3"))

    def test_requires_isolated(self):
        with pytest.raises(ValueError):
            saito_check(P(RQ, "x^2"))


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7]),
    st.integers(1, 3),
    st.integers(1, 3),
    st.integers(6, 12),
    st.integers(0, 255),
)
def test_sqh_tau_bounded_by_principal(char, w1, w2, d, mask):
    """Perturbing above the weight level never raises the Tjurina number."""
    ring = Ring(char, ("x", "y"))
    w = (w1, w2)
    base = [
        (a, b)
        for a in range(d + 1)
        for b in range(d + 1)
        if a * w1 + b * w2 == d and a + b >= 2
    ]
    assume(base)
    f0 = ring.poly([(m, 1) for m in base])
    assume(not f0.is_zero())
    rep = sqh_check(f0, w, "contact")
    assume(rep.semi)
    tail_monos = [
        (a, b)
        for a in range(7)
        for b in range(7)
        if a * w1 + b * w2 > d and 0 < a + b <= 6
    ]
    tail = ring.poly(
        [(m, 1) for i, m in enumerate(tail_monos) if mask & (1 << (i % 8))][:3]
    )
    f = f0 + tail
    assert weighted_initial_form(f, w) == f0
    assert tjurina(f) <= rep.principal_invariant
