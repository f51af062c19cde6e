from fractions import Fraction

import pytest

from possing.grading import Grading, regular_basis
from possing.localalg import milnor, tjurina
from possing.newton import cpolytope_from_poly, cpolytope_from_weights, initial_form
from possing.normalform import (
    NormalFormRefusal,
    determinacy_filtered,
    determinacy_generic,
    normal_form,
    precondition_constant,
    reduce_step,
    replay_matches,
)
from possing.poly import Ring, poly_from_string

RQ = Ring(0, ("x", "y"))


def P(ring, text):
    return poly_from_string(ring, text)


def q10_setup():
    ring = Ring(2, ("x", "y", "z"))
    f = P(ring, "x^2*z+y^3+z^4")
    Pw = cpolytope_from_weights([(Fraction(9, 24), Fraction(8, 24), Fraction(6, 24))])
    return ring, f, Pw


class TestDeterminacyGeneric:
    def test_e33(self):
        R3 = Ring(3, ("x", "y"))
        assert determinacy_generic(P(R3, "x^12+x^3*y^2+y^3"), "contact") == 41

    def test_node_right(self):
        assert determinacy_generic(P(RQ, "x^2+y^2"), "right") == 2

    def test_t45_contact(self):
        R2 = Ring(2, ("x", "y"))
        # order of x^5+x^2*y^2+y^4 is 4, so the bound is 2*16-4+2
        assert determinacy_generic(P(R2, "x^5+x^2*y^2+y^4"), "contact") == 30

    def test_infinite_refused(self):
        R2 = Ring(2, ("x", "y"))
        with pytest.raises(Exception):
            determinacy_generic(P(R2, "x^5+x^2*y^2+y^4"), "right")  # mu infinite


class TestDeterminacyFiltered:
    def test_q10(self):
        ring, f, Pw = q10_setup()
        rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
        rep = determinacy_filtered(Pw, f, rb, "contact")
        assert rep.max_valuation == 35
        assert rep.filtered_bound == 5

    def test_e33(self):
        R3 = Ring(3, ("x", "y"))
        f = P(R3, "x^12+x^3*y^2+y^3")
        Pw = cpolytope_from_poly(f)
        rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
        rep = determinacy_filtered(Pw, f, rb, "contact")
        assert rep.max_valuation == 112
        assert rep.filtered_bound == 18
        assert rep.filtered_bound <= rep.generic_bound

    def test_tpq_max(self):
        for p, q, char in ((4, 5, 0), (5, 6, 0), (5, 7, 11)):
            ring = Ring(char, ("x", "y"))
            f = ring.poly([((p, 0), 1), ((2, 2), 1), ((0, q), 1)])
            Pw = cpolytope_from_poly(f)
            rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
            rep = determinacy_filtered(Pw, f, rb, "contact")
            assert rep.filtered_bound == max(p, q)


class TestNormalForm:
    def test_right_cusp_with_tail(self):
        f = P(RQ, "x^3+y^3+x^2*y^2")
        Pw = cpolytope_from_poly(f)
        nf = normal_form(Pw, f, "right")
        assert nf.polynomial() == P(RQ, "x^3+y^3")
        assert nf.tail == {}
        assert replay_matches(Pw, f, nf)

    def test_q10_tail(self):
        ring, f, Pw = q10_setup()
        g = f + P(ring, "y*z^3+x*y*z^2+z^5")
        nf = normal_form(Pw, g, "contact")
        assert set(nf.tail_support()) <= {(1, 1, 2), (1, 0, 3), (0, 1, 3), (1, 1, 3)}
        assert replay_matches(Pw, g, nf)
        assert tjurina(nf.polynomial()) == tjurina(g)

    def test_refusal_carries_witness(self):
        R2 = Ring(2, ("x", "y"))
        f = P(R2, "x^5+x^2*y^2+y^4")
        Pw = cpolytope_from_poly(f)
        with pytest.raises(NormalFormRefusal) as info:
            normal_form(Pw, f, "contact", scan_bound=24)
        assert info.value.witness.direction == (0, 1)

    def test_tail_valuations_exceed_principal(self):
        R3 = Ring(3, ("x", "y"))
        f = P(R3, "x^12+x^3*y^2+y^3")
        Pw = cpolytope_from_poly(f)
        g = f + P(R3, "x*y^3")
        nf = normal_form(Pw, g, "contact")
        vf = 72
        assert all(Pw.value(m) > vf for m in nf.tail_support())

    def test_monotone_progress_and_candidates(self):
        ring, f, Pw = q10_setup()
        g = f + P(ring, "x*y*z^2")
        nf = normal_form(Pw, g, "contact")
        assert nf.tail == {(1, 1, 2): 1}
        assert (1, 1, 2) in nf.candidates


class TestReduceStep:
    def test_identity_on_principal_part(self):
        ring, f, Pw = q10_setup()
        nxt, phi = reduce_step(Pw, f, f, 29, "contact")
        assert nxt == f and phi.is_identity()

    def test_single_elimination(self):
        # x^2*y^2 at level 4 under the (1,1)-filtration dies into the Jacobian image
        f = P(RQ, "x^3+y^3")
        Pw = cpolytope_from_weights([(Fraction(1, 3), Fraction(1, 3))])
        current = f + P(RQ, "x^2*y^2")
        nxt, phi = reduce_step(Pw, f, current, 4, "right", cutoff=8)
        diff = nxt - f
        assert diff.is_zero() or Pw.value(min(diff.terms, key=Pw.value)) > 4
        offsets = [g for g in phi.offsets if not g.is_zero()]
        assert offsets  # a genuine coordinate change happened

    def test_wrong_degree_rejected(self):
        ring, f, Pw = q10_setup()
        with pytest.raises(ValueError):
            reduce_step(Pw, f, f + P(ring, "x*y*z^2"), 31, "contact")


class TestPreconditionConstant:
    def test_cusp_right(self):
        assert precondition_constant(P(RQ, "x^3+y^3+x^2*y^2"), "right") == 2

    def test_contact_no_larger_than_right(self):
        f = P(RQ, "x^3+y^4")
        right = precondition_constant(f, "right")
        contact = precondition_constant(f, "contact")
        assert contact <= right
