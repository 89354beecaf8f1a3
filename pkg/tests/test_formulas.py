from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swdegree.errors import PreconditionError
from swdegree.formulas import (
    CoveringData,
    bryan_degree,
    covering_invariants,
    furuta_degree,
    is_prime,
    odd_sum_alpha0,
    odd_sum_coefficient,
    z6_abc,
    z6_constraints,
    z6_solve,
    zp_closed_form,
    zp_degree,
)
from swdegree.groups import Embedding, TabledGroup, make_abelian_group, parse_character_table
from swdegree.reprings import EquivElem, Pin2Elem, VirtualRep, equiv_decompose, regular_rep, restrict_equiv

GRID = [(2 * k + 1 + g, k) for k in (0, 1, 2) for g in range(5)]
ONE_MINUS_C = Pin2Elem.one_minus_c()


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_covering_invariants():
    assert covering_invariants(3, 1, 6) == (23, 6)
    assert covering_invariants(4, 2, 1) == (4, 2)
    assert covering_invariants(3, 1, 3) == (11, 3)
    with pytest.raises(PreconditionError):
        covering_invariants(3, 1, 0)


def test_covering_data():
    d = CoveringData(make_abelian_group([3]), 3, 1)
    assert (d.m_X, d.k_X) == (11, 3)
    with pytest.raises(PreconditionError):
        CoveringData(make_abelian_group([3]), 0, 0)
    with pytest.raises(PreconditionError):
        CoveringData(make_abelian_group([3]), 3, -1)


def test_furuta_degree():
    assert furuta_degree(3, 1) == ONE_MINUS_C
    assert furuta_degree(5, 1) == Pin2Elem.one_minus_c(4)
    with pytest.raises(PreconditionError, match=r"non-integral Furuta coefficient \(m-2k-1 = -1\)"):
        furuta_degree(2, 1)


def test_zp_closed_form_example():
    form = zp_closed_form(3, 3, 1)
    assert (form.l2, form.triv) == (5, 1)
    assert str(form) == "([5·L2(Z3)] + rho_triv)(1 - c)"


def test_zp_degree_expansion():
    x = zp_degree(3, 3, 1)
    assert x.terms == {(0,): Pin2Elem.one_minus_c(6), (1,): Pin2Elem.one_minus_c(5), (2,): Pin2Elem.one_minus_c(5)}


def test_zp_degree_z5():
    form = zp_closed_form(5, 4, 1)
    assert (form.l2, form.triv) == (1638, 2)
    form = zp_closed_form(5, 3, 1)
    assert (form.l2, form.triv) == (51, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_zp_minimal_exponent_has_unit_trivial_part(p):
    for k in range(3):
        assert zp_closed_form(p, 2 * k + 1, k).triv == 1


@pytest.mark.parametrize("p,m,k", [(2, 3, 1), (9, 3, 1), (1, 3, 1), (3, 2, 1)])
def test_zp_preconditions(p, m, k):
    with pytest.raises(PreconditionError):
        zp_degree(p, m, k)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("e", range(7))
def test_fermat_integrality(p, e):
    for k in range(3):
        m = 2 * k + 1 + e
        num = 2 ** ((m - 2 * k + 1) * p - 2) - 2 ** (m - 2 * k - 1)
        assert num % p == 0
        assert zp_closed_form(p, m, k).l2 * p == num


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("m,k", GRID)
def test_zp_restricts_to_furuta_of_cover(p, m, k):
    x = zp_degree(p, m, k)
    e = Embedding.cyclic(1, x.group, (0,))
    m_X, k_X = covering_invariants(m, k, p)
    assert restrict_equiv(e, x)[(0,)] == furuta_degree(m_X, k_X)


def test_zp_restriction_worked_example():
    x = zp_degree(3, 3, 1)
    total = Pin2Elem()
    for v in x.terms.values():
        total = total + v
    assert total == Pin2Elem.one_minus_c(16)


@pytest.mark.parametrize("p", [3, 5, 7, 11])
@pytest.mark.parametrize("m,k", GRID)
def test_zp_structure_and_odd_sum(p, m, k):
    x = zp_degree(p, m, k)
    a0, at, ak = equiv_decompose(x)
    assert a0 == at
    assert all(a.is_zero() for a in ak)
    assert a0 + at == odd_sum_alpha0(make_abelian_group([p]), m, k)


def test_bryan_degree():
    G2 = make_abelian_group([2])
    assert bryan_degree(1, 3, 1) == EquivElem.tensor(regular_rep(G2), Pin2Elem.one_minus_c(2))
    G22 = make_abelian_group([2, 2])
    assert bryan_degree(2, 3, 1) == EquivElem.tensor(regular_rep(G22), Pin2Elem.one_minus_c(16))
    with pytest.raises(PreconditionError):
        bryan_degree(0, 3, 1)
    with pytest.raises(PreconditionError):
        bryan_degree(1, 0, 1)


def test_odd_sum_examples():
    Z3 = make_abelian_group([3])
    assert odd_sum_alpha0(Z3, 3, 1) == regular_rep(Z3) * 10 + VirtualRep.trivial(Z3, 2)
    G1 = make_abelian_group([])
    assert odd_sum_alpha0(G1, 5, 1) == VirtualRep.trivial(G1, 8)
    Z9 = make_abelian_group([9])
    assert odd_sum_coefficient(9, 4, 1) == Fraction(2 ** 24 - 1, 9)
    assert odd_sum_alpha0(Z9, 4, 1)[(0,)] == (2 ** 24 - 1) // 9 * 4 + 4


def test_odd_sum_non_integral_reports_coefficient():
    Z9 = make_abelian_group([9])
    with pytest.raises(PreconditionError, match="inconsistent covering data") as info:
        odd_sum_alpha0(Z9, 3, 1)
    assert "21845/3" in str(info.value)


def test_odd_sum_z15_needs_even_exponent():
    Z15 = make_abelian_group([15])
    odd_sum_alpha0(Z15, 3, 0)
    with pytest.raises(PreconditionError):
        odd_sum_alpha0(Z15, 2, 0)


def test_odd_sum_rejects_even_order():
    with pytest.raises(PreconditionError):
        odd_sum_alpha0(make_abelian_group([6]), 3, 1)


def test_odd_sum_tabled_group(f21_text):
    G = TabledGroup(parse_character_table(f21_text))
    # 21 | 2^(20 d) - 1 needs 6 | 20 d, i.e. 3 | d
    r = odd_sum_alpha0(G, 2, 0)
    assert r.character((0,)) == 2 ** (20 * 3) * 4
    assert r.character((3,)) == 4


@pytest.mark.parametrize("n", [3, 5, 7, 9, 15, 21])
def test_odd_sum_integrality_pattern(n):
    # integral exactly when the multiplicative order of 2 mod n divides (n-1) d
    order = next(t for t in range(1, n + 1) if pow(2, t, n) == 1)
    for d in range(1, 7):
        integral = odd_sum_coefficient(n, d, 0).denominator == 1
        assert integral == ((n - 1) * (d + 1) % order == 0)


def test_z6_abc():
    A, B, C = z6_abc(23, 6)
    assert (A, B, C) == (Pin2Elem.one_minus_c(512), Pin2Elem.one_minus_c(344), Pin2Elem.one_minus_c(340))


@pytest.mark.parametrize("mx,kx", [(10, 1), (11, 1), (5, 6), (23, -6)])
def test_z6_rejects_bad_data(mx, kx):
    with pytest.raises(PreconditionError, match="not Z6 covering data"):
        z6_abc(mx, kx)


def test_z6_solve_zero():
    betas = z6_solve(23, 6, Pin2Elem(), Pin2Elem())
    assert betas == tuple(Pin2Elem.one_minus_c(v) for v in (172, 344, 340, 168))


def test_z6_solve_kills_beta3_beta4():
    A, B, C = z6_abc(23, 6)
    _, b3, b4, _ = z6_solve(23, 6, B, C)
    assert b3.is_zero() and b4.is_zero()


def test_z6_has_six_constraints():
    betas = (Pin2Elem(), Pin2Elem(), *z6_solve(23, 6, Pin2Elem(), Pin2Elem()))
    assert len(z6_constraints(23, 6, betas)) == 6


pin2s = st.builds(Pin2Elem, st.lists(st.integers(-50, 50), max_size=4), st.integers(-50, 50))


@settings(max_examples=40, deadline=None)
@given(pin2s, pin2s, st.sampled_from([(23, 6), (5, 0), (11, 0), (17, 0), (35, 12)]))
def test_z6_constraints_hold_identically(b0, b1, data):
    mx, kx = data
    betas = (b0, b1, *z6_solve(mx, kx, b0, b1))
    for name, lhs, rhs in z6_constraints(mx, kx, betas):
        assert lhs == rhs, name


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(0, 3), st.integers(0, 5))
def test_zp_degree_virtual_dimension(p, k, e):
    m = 2 * k + 1 + e
    x = zp_degree(p, m, k)
    a0, _, _ = equiv_decompose(x)
    m_X, k_X = covering_invariants(m, k, p)
    assert a0.dim == 2 ** (m_X - 2 * k_X - 1)
