from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swdegree.exactnum import (
    CycNum,
    LaurentPoly,
    cyc_is_zero,
    cyc_root,
    cyclotomic_poly,
    euler_phi,
    parse_cycnum,
    render_cycnum,
)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15]


@st.composite
def cycnums(draw, conductors=CONDUCTORS):
    n = draw(st.sampled_from(conductors))
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), max_size=n))
    return CycNum(n, coeffs)


# --- examples ---------------------------------------------------------------


def test_root_of_trivial_conductor_is_one():
    assert cyc_root(1, 0) == 1


def test_cube_roots_sum_to_minus_one():
    assert cyc_root(3, 1) + cyc_root(3, 2) == -1


def test_exponents_add_mod_n():
    assert cyc_root(5, 2) * cyc_root(5, 4) == cyc_root(5, 1)


def test_conj_of_cube_root():
    assert cyc_root(3, 1).conj() == cyc_root(3, 2)


def test_mixed_conductor_product():
    assert cyc_root(2, 1) * cyc_root(3, 1) == cyc_root(6, 5)


def test_product_over_cube_roots():
    assert (1 + cyc_root(3, 1)) * (1 + cyc_root(3, 2)) == 1


def test_zero_tests():
    assert cyc_is_zero(1 + cyc_root(3, 1) + cyc_root(3, 2))
    assert not cyc_is_zero(1 + cyc_root(3, 1) ** 2)
    assert cyc_is_zero(cyc_root(4, 1) ** 2 + 1)


def test_conductor_shrinks():
    assert cyc_root(4, 2).conductor in (1, 2)
    assert cyc_root(4, 2) == -1
    assert cyc_root(9, 3) == cyc_root(3, 1)
    assert cyc_root(9, 3).conductor == 3


def test_conductor_two_mod_four_is_normalized():
    # zeta_10 = -zeta_5^3
    z = cyc_root(10, 1)
    assert z.conductor == 5
    assert z == -cyc_root(5, 3)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    # first coefficient outside {-1, 0, 1}
    assert -2 in cyclotomic_poly(105)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15, 21, 30, 105])
def test_cyclotomic_degree_is_phi(n):
    assert len(cyclotomic_poly(n)) - 1 == euler_phi(n)


def test_division_and_inverse():
    a = 1 + cyc_root(5, 1) * 2
    assert a * a.inverse() == 1
    assert (a / a) == 1
    with pytest.raises(ZeroDivisionError):
        CycNum.rational(0).inverse()


def test_norm_of_one_plus_root():
    # N(1 + zeta_p) = 1 for odd p
    assert (1 + cyc_root(7, 1)).norm() == 1


def test_rational_collapse_and_fraction():
    x = cyc_root(3, 1) + cyc_root(3, 2) + Fraction(1, 3)
    assert x.is_rational()
    assert x.to_fraction() == Fraction(-2, 3)
    with pytest.raises(ValueError):
        cyc_root(3, 1).to_fraction()


def test_render_examples():
    assert render_cycnum(CycNum.rational(0)) == "0"
    assert render_cycnum(cyc_root(3, 1)) == "z3^1"
    assert render_cycnum(Fraction(1, 3) + 2 * cyc_root(5, 2) - cyc_root(5, 3)) == "1/3 + 2*z5^2 - z5^3"


def test_parse_examples():
    assert parse_cycnum("z7^1 + z7^2 + z7^4") == cyc_root(7, 1) + cyc_root(7, 2) + cyc_root(7, 4)
    assert parse_cycnum("-1/2") == Fraction(-1, 2)
    assert parse_cycnum("z4") == cyc_root(4, 1)
    assert parse_cycnum("3*z3^-1") == 3 * cyc_root(3, 2)


@pytest.mark.parametrize("bad", ["", "z", "1 +", "2 z3", "1 1", "*z3", "z0^1"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_cycnum(bad)


def test_parse_error_has_column():
    with pytest.raises(ValueError, match="column 5"):
        parse_cycnum("1 + @")


def test_hash_consistent_across_conductors():
    a = cyc_root(3, 1)
    b = cyc_root(15, 5)
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b, CycNum(15, [0, 0, 0, 0, 0, 1])}) == 1


def test_bad_conductor():
    with pytest.raises(ValueError):
        CycNum(0, [1])
    with pytest.raises(ValueError):
        cyc_root(0, 1)


# --- Laurent polynomials ----------------------------------------------------


def test_laurent_examples():
    w = LaurentPoly.z_plus_zinv()
    assert w ** 0 == LaurentPoly.constant(1)
    assert w ** 2 == LaurentPoly({2: 1, 0: 2, -2: 1})
    one_minus_z = LaurentPoly({0: 1, 1: -1})
    one_minus_zinv = LaurentPoly({0: 1, -1: -1})
    assert one_minus_z * one_minus_zinv == LaurentPoly({0: 2, 1: -1, -1: -1})


def test_laurent_prunes_zeros():
    p = LaurentPoly({1: 1}) - LaurentPoly({1: 1})
    assert p.is_zero()
    assert p.coeffs == {}
    assert LaurentPoly({3: 0, 0: 1}).coeffs == {0: 1}


def test_laurent_negative_power_rejected():
    with pytest.raises(ValueError):
        LaurentPoly.z_plus_zinv() ** -1


def test_laurent_cyclotomic_coefficients():
    eps = cyc_root(3, 1)
    p = LaurentPoly.constant(1 + eps * eps) - LaurentPoly.z_plus_zinv() * eps
    assert not p.is_zero()
    assert p.coeff(1) == -eps
    assert p.coeff(5) == 0


# --- properties ---------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(cycnums(), cycnums())
def test_addition_commutes(a, b):
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(cycnums(), cycnums())
def test_multiplication_commutes(a, b):
    assert a * b == b * a


@settings(max_examples=40, deadline=None)
@given(cycnums(), cycnums(), cycnums())
def test_multiplication_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(cycnums(), cycnums(), cycnums())
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(cycnums())
def test_conj_is_involution(a):
    assert a.conj().conj() == a


@settings(max_examples=60, deadline=None)
@given(cycnums())
def test_norm_form_is_self_conjugate(a):
    x = a * a.conj()
    assert x.conj() == x


@settings(max_examples=60, deadline=None)
@given(cycnums(), st.sampled_from([1, 3, 4, 5]))
def test_lift_round_trip(a, mult):
    m = a.conductor * mult
    lifted = a.lift(m)
    back = CycNum(m if m % 4 != 2 else m // 2, lifted)
    assert back == a
    assert back.conductor == a.conductor


@settings(max_examples=60, deadline=None)
@given(cycnums())
def test_inverse_round_trip(a):
    if a.is_zero():
        return
    assert a * a.inverse() == 1


@settings(max_examples=60, deadline=None)
@given(cycnums())
def test_render_parse_round_trip(a):
    assert parse_cycnum(render_cycnum(a)) == a


@settings(max_examples=60, deadline=None)
@given(cycnums(), cycnums())
def test_equal_values_hash_equal(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(a + b - b) == hash(a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(-100, 100), st.integers(-100, 100))
def test_root_exponent_law(n, j, k):
    assert cyc_root(n, j) * cyc_root(n, k) == cyc_root(n, j + k)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 30))
def test_roots_sum_to_zero(n):
    total = CycNum.rational(0)
    for k in range(n):
        total = total + cyc_root(n, k)
    assert total == (1 if n == 1 else 0)


@pytest.mark.parametrize("n", range(1, 100, 2))
def test_odd_product_of_one_plus_roots(n):
    acc = CycNum.rational(1)
    for k in range(1, n):
        acc = acc * (1 + cyc_root(n, k))
    assert acc == 1
