from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from possing.grading import (
    GradedAlgebra,
    Grading,
    check_condition,
    graded_piece,
    plain_graded_dims,
    ray_criterion,
    regular_basis,
    vanishes_in_gr,
)
from possing.localalg import INFINITY, milnor, tjurina
from possing.newton import cpolytope_from_poly, cpolytope_from_weights
from possing.poly import Ring, poly_from_string

R2 = Ring(2, ("x", "y"))
R3 = Ring(3, ("x", "y"))


def P(ring, text):
    return poly_from_string(ring, text)


def q10():
    ring = Ring(2, ("x", "y", "z"))
    f = P(ring, "x^2*z+y^3+z^4")
    Pw = cpolytope_from_weights([(Fraction(9, 24), Fraction(8, 24), Fraction(6, 24))])
    return ring, f, Pw


def e33():
    f = P(R3, "x^12+x^3*y^2+y^3")
    return R3, f, cpolytope_from_poly(f)


def t45():
    f = P(R2, "x^5+x^2*y^2+y^4")
    return R2, f, cpolytope_from_poly(f)


class TestGradedPiece:
    def test_degree_zero_survivor(self):
        ring, f, Pw = q10()
        piece = graded_piece(Pw, f, 0, Grading.TJURINA_EXPECTED)
        assert piece.quotient_basis == ((0, 0, 0),)

    def test_principal_level_fully_covered(self):
        ring, f, Pw = q10()
        piece = graded_piece(Pw, f, 24, Grading.TJURINA_EXPECTED)
        assert piece.quotient_basis == ()

    def test_qh_expected_equals_plain(self):
        ring = Ring(5, ("x", "y"))
        f = P(ring, "x^3+y^3")
        Pw = cpolytope_from_poly(f)
        dims_plain = plain_graded_dims(Pw, f, Grading.MILNOR, 14)
        alg = GradedAlgebra(Pw, f, Grading.MILNOR_EXPECTED)
        assert dims_plain == [alg.piece(d).dimension for d in range(15)]

    def test_negative_degree_rejected(self):
        ring, f, Pw = q10()
        with pytest.raises(ValueError):
            graded_piece(Pw, f, -1, Grading.TJURINA_EXPECTED)

    def test_t45_high_survivors(self):
        ring, f, Pw = t45()
        alg = GradedAlgebra(Pw, f, Grading.TJURINA_EXPECTED)
        for n in (4, 5, 6):
            piece = alg.piece(20 * n)
            assert (0, 4 * n) in piece.quotient_basis


class TestRegularBasis:
    def test_q10_sixteen(self):
        ring, f, Pw = q10()
        rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
        assert rb.finite and rb.dimension == 16
        assert rb.max_valuation() == 35
        assert (1, 1, 3) in rb.monomials()  # xyz^3 at the top

    def test_e33_twentytwo(self):
        ring, f, Pw = e33()
        rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
        assert rb.finite and rb.dimension == 22
        monos = set(rb.monomials())
        assert (12, 0) in monos and (2, 4) in monos and (13, 0) not in monos

    def test_t45_infinite_with_witness(self):
        ring, f, Pw = t45()
        rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
        assert not rb.finite
        assert rb.dimension == INFINITY
        assert rb.witness_ray.direction == (0, 1)


class TestVanishes:
    def test_e33_vanishing_monomials(self):
        ring, f, Pw = e33()
        for m in ((15, 0), (0, 15), (9, 6)):
            assert vanishes_in_gr(Pw, f, m, Grading.TJURINA_EXPECTED)

    def test_e33_surviving_monomial(self):
        ring, f, Pw = e33()
        assert not vanishes_in_gr(Pw, f, (1, 3), Grading.TJURINA_EXPECTED)

    def test_tpq_char_divides_p(self):
        # char 5 divides p=5: x^2y^2 = scalar * x * d/dx(f) at expected valuation
        ring = Ring(5, ("x", "y"))
        f = ring.poly([((5, 0), 1), ((2, 2), 1), ((0, 7), 1)])
        Pw = cpolytope_from_poly(f)
        assert vanishes_in_gr(Pw, f, (2, 2), Grading.TJURINA_EXPECTED)

    def test_cone_propagation_consistent(self):
        ring = Ring(5, ("x", "y"))
        f = ring.poly([((5, 0), 1), ((2, 2), 1), ((0, 7), 1)])
        Pw = cpolytope_from_poly(f)
        alg = GradedAlgebra(Pw, f, Grading.TJURINA_EXPECTED)
        assert alg.vanishes((2, 2), use_cone=False)
        alg.record_kill((2, 2))
        # alpha = beta = (2,2) share the vertex cone
        assert alg.cone_killed((4, 4))
        assert alg.vanishes((4, 4), use_cone=False)

    def test_tpq_x_power_depends_on_minor(self):
        # x^p falls into the graded ideal iff char does not divide pq-2(p+q)
        for char, expect in ((0, True), (11, False)):
            ring = Ring(char, ("x", "y"))
            f = ring.poly([((5, 0), 1), ((2, 2), 1), ((0, 7), 1)])
            Pw = cpolytope_from_poly(f)
            assert vanishes_in_gr(Pw, f, (5, 0), Grading.TJURINA_EXPECTED) == expect


class TestRayCriterion:
    def test_e33_witness_points(self):
        ring, f, Pw = e33()
        rc = ray_criterion(Pw, f, Grading.TJURINA_EXPECTED)
        assert rc.all_vanish
        hits = {r.direction: r.first_vanishing for r in rc.rays}
        # the scan returns first kills; the known zero classes x^15, y^15,
        # (x^3y^2)^3 bound them from above
        assert hits[(1, 0)][0] <= 15
        assert hits[(0, 1)][1] <= 15
        assert hits[(3, 2)][0] <= 9

    def test_t45_failing_ray(self):
        ring, f, Pw = t45()
        rc = ray_criterion(Pw, f, Grading.TJURINA_EXPECTED, scan_bound=24)
        assert not rc.all_vanish
        assert rc.witness().direction == (0, 1)


class TestConditions:
    def test_e33_contact_pair(self):
        ring, f, Pw = e33()
        finite = check_condition(Pw, f, "contact", strict=False)
        exact = check_condition(Pw, f, "contact", strict=True)
        assert finite.holds and not exact.holds
        assert finite.graded_dimension == 22 and finite.local_dimension == 21

    def test_qh_exactness(self):
        ring = Ring(5, ("x", "y"))
        f = P(ring, "x^3+y^3")
        Pw = cpolytope_from_poly(f)
        for mode in ("right", "contact"):
            rep = check_condition(Pw, f, mode, strict=True)
            assert rep.holds, mode

    def test_t45_contact_fails(self):
        ring, f, Pw = t45()
        rep = check_condition(Pw, f, "contact", strict=False, scan_bound=24)
        assert not rep.holds
        assert rep.witness_ray.direction == (0, 1)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3, 5]),
    st.integers(2, 4),
    st.integers(2, 4),
    st.lists(
        st.tuples(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(1, 4)),
        max_size=2,
    ),
)
def test_graded_product_rule(char, a, b, extra):
    """class(x^u) * class(x^v) is class(x^(u+v)) when valuations add, else zero."""
    ring = Ring(char, ("x", "y"))
    f = ring.monomial((a, 0)) + ring.monomial((0, b)) + ring.poly(
        [(m, c) for m, c in extra if sum(m) >= 1]
    )
    assume(not f.is_zero() and not f.constant_term())
    try:
        Pw = cpolytope_from_poly(f)
    except Exception:
        assume(False)
    alg = GradedAlgebra(Pw, f, Grading.TJURINA_EXPECTED)
    u, v = (1, 1), (a - 1, 1)
    s = tuple(x + y for x, y in zip(u, v))
    if Pw.value(s) == Pw.value(u) + Pw.value(v):
        # vanishing propagates along the product when valuations add
        if alg.vanishes(u, use_cone=False):
            assert alg.vanishes(s, use_cone=False)


def test_expected_image_inside_plain_image():
    """The expected-valuation image never exceeds the plain one, piecewise."""
    ring, f, Pw = e33()
    alg = GradedAlgebra(Pw, f, Grading.TJURINA_EXPECTED)
    dims_plain = plain_graded_dims(Pw, f, Grading.TJURINA, 130)
    for d in range(131):
        assert dims_plain[d] <= alg.piece(d).dimension


def test_graded_dimension_bounds_local_one():
    # finite graded dimension always dominates the local invariant
    ring, f, Pw = e33()
    rb = regular_basis(Pw, f, Grading.TJURINA_EXPECTED)
    assert tjurina(f) <= rb.dimension
