import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from basehurwitz.opalgebra import (
    DHbar, DxXPow, EulerX, ExpLaurent, MulX, Shift, XSeries, apply, build_P, build_Q,
    closed_form_Z, closed_form_expanded, commutator_grid, commutator_residual,
    convergence_gap, diagonal_partition_function, expansion_solution, p1_report,
    pz_report, qz_report, shift_conjugation_holds, sphere_P, verify_commutator,
    verify_P1_identity, verify_PZ, verify_QZ, z_match, ONE,
)

halves = st.fractions(min_value=-3, max_value=3, max_denominator=2)
laurent = st.dictionaries(st.integers(-2, 2), st.fractions(max_denominator=3).filter(bool), max_size=3)
elts = st.dictionaries(halves, laurent, max_size=3).map(ExpLaurent)


@settings(max_examples=60, deadline=None)
@given(elts, elts, elts)
def test_ring_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a) == ExpLaurent()


@settings(max_examples=60, deadline=None)
@given(elts, elts)
def test_d_hbar_is_a_derivation(a, b):
    assert (a * b).d_hbar() == a * b.d_hbar() + b * a.d_hbar()


def test_canonical_form():
    x = ExpLaurent({1: {0: 1, 1: 0}, 2: {3: 0}})
    assert x.terms == {Fraction(1): {0: Fraction(1)}}
    assert ExpLaurent({0: {0: 1}}) + ExpLaurent({0: {0: -1}}) == ExpLaurent()


def test_generator_actions():
    s = XSeries.basis(0, 0, 3, 5)
    assert apply(EulerX(), s)[3] == ExpLaurent.const(3)
    assert apply(Shift(), s)[3] == ExpLaurent.monomial(0, 3)
    assert apply(MulX(), s)[4] == ONE
    assert apply(DxXPow(-1), s)[3] == ExpLaurent.const(Fraction(1, 4))
    t = XSeries.basis(2, 3, 1, 2)
    assert apply(DHbar(), t)[1] == ExpLaurent({3: {1: 2, 2: 3}})


def test_closed_form_examples():
    assert closed_form_Z(1, 4)[0] == ONE
    assert closed_form_Z(1, 4)[2] == ExpLaurent.monomial(2, 1, 2)
    assert closed_form_Z(0, 4)[3] == ExpLaurent.monomial(-3, 3, Fraction(1, 6))
    with pytest.raises(ValueError):
        closed_form_Z(1, -1)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_operator_identities(h):
    for M in (1, 6, 8):
        assert verify_PZ(h, M) and verify_QZ(h, M) and verify_P1_identity(h, M)
    assert pz_report(h, 8).excluded_layer == 8
    assert p1_report(h, 8).excluded_layer == 8
    assert qz_report(h, 8).excluded_layer is None


def test_P_kills_constants():
    for h in range(3):
        assert not apply(build_P(h), XSeries([ONE], 4))[0]


def test_sphere_form_of_P():
    for j, a, m in commutator_grid(ms=range(8)):
        s = XSeries.basis(j, a, m, 9)
        assert apply(build_P(0), s) == apply(sphere_P(), s)


@pytest.mark.parametrize("h", [0, 1, 2])
def test_commutator(h):
    assert commutator_residual(h, 0, 0, 0).is_zero()
    assert commutator_residual(h, 0, 0, 1).is_zero()
    assert verify_commutator(h, commutator_grid())
    with pytest.raises(ValueError):
        verify_commutator(h, [])


def test_commutator_detects_a_wrong_sign():
    # [P, Q] = -P/hbar, so +P/hbar must be the residual of the sign-flipped relation
    from basehurwitz.opalgebra import Compose, MulHbarPow
    P, Q = build_P(1), build_Q(1)
    s = XSeries.basis(0, 0, 2, 3)
    wrong = apply(P @ Q, s) - apply(Q @ P, s) - apply(Compose((MulHbarPow(-1), P)), s)
    assert not wrong.is_zero()


def test_shift_conjugation():
    for j, a, m in commutator_grid():
        assert shift_conjugation_holds(j, a, m)


@pytest.mark.parametrize("h,m", [(0, 3), (1, 0), (1, 4), (2, 5)])
def test_expansion_lemma(h, m):
    c = Fraction(math.factorial(m)) ** (2 * h - 1)
    assert expansion_solution(h, m, c) == closed_form_Z(h, m)[m]


def test_diagonal_partition_function_examples():
    z = diagonal_partition_function(1, 2, 2)
    assert z[(0, 0)] == 1 and z[(1, 1)] == 1 and z[(2, 2)] == 2


@pytest.mark.parametrize("h,M,K", [(1, 5, 6), (2, 4, 8), (0, 5, 4)])
def test_closed_form_match(h, M, K):
    rep = z_match(h, M, K)
    assert rep.ok and rep.compared > 0


def test_sphere_needs_genus_zero_terms():
    assert not z_match(0, 3, 2, genus_floor=1).ok


def test_convergence_smoke():
    for h in (1, 2):
        assert convergence_gap(h, 20, 25) < 1e-10
        # early partial sums are visibly different, so the comparison is not vacuous
        assert convergence_gap(h, 1, 3) > 1e-6
