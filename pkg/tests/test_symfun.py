from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from basehurwitz.partitions import Partition, enumerate_partitions, partitions_up_to
from basehurwitz.symfun import DegreeBoundError, SymFun, cut_and_join, schur, shifted_p2

p = SymFun.p


def test_schur_examples():
    assert schur(Partition([1]), 3) == p(1, degree_bound=3)
    assert schur(Partition([2]), 3).terms == {Partition([1, 1]): Fraction(1, 2), Partition([2]): Fraction(1, 2)}
    assert schur(Partition([1, 1]), 3).terms == {Partition([1, 1]): Fraction(1, 2), Partition([2]): Fraction(-1, 2)}
    with pytest.raises(DegreeBoundError):
        schur(Partition([3, 1]), 3)


def test_cut_and_join_examples():
    assert not cut_and_join(p(1))
    assert cut_and_join(p(2)) == p(1, 1)
    assert cut_and_join(p(1, 1)) == p(2)


def test_shifted_power_sum_examples():
    assert shifted_p2([]) == 0
    for m in range(1, 8):
        assert shifted_p2([m]) == m * (m - 1)
    assert shifted_p2([2, 1]) == 0


def test_shifted_power_sum_matches_half_integer_form():
    for lam in partitions_up_to(7):
        direct = sum((Fraction(2 * m - 2 * i + 1, 2)) ** 2 - Fraction(-2 * i + 1, 2) ** 2
                     for i, m in enumerate(lam, start=1))
        assert direct == shifted_p2(lam)


@pytest.mark.parametrize("d", range(1, 7))
def test_schur_functions_are_eigenfunctions(d):
    for lam in enumerate_partitions(d):
        s = schur(lam, 6)
        assert cut_and_join(s) == s.scale(Fraction(shifted_p2(lam), 2))


def test_product_of_schur_functions_littlewood_richardson():
    # s_1 * s_1 = s_2 + s_11
    one = schur(Partition([1]), 4)
    assert one * one == schur(Partition([2]), 4) + schur(Partition([1, 1]), 4)


monomials = st.integers(1, 4).flatmap(lambda d: st.sampled_from(enumerate_partitions(d)))
small = st.dictionaries(monomials, st.fractions(max_denominator=5).filter(bool), max_size=4)


@settings(max_examples=40, deadline=None)
@given(small, small, small)
def test_ring_axioms(a, b, c):
    A, B, C = SymFun(a, 6), SymFun(b, 6), SymFun(c, 6)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C


@settings(max_examples=40, deadline=None)
@given(small)
def test_log_exp_roundtrip(a):
    f = SymFun(a, 5)
    assert f.exp().log() == f
    g = f.exp()
    assert g.log().exp() == g


def test_log_requires_unit_constant():
    with pytest.raises(ValueError):
        (p(1) + p(1)).log()
