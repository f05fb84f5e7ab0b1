import math
from fractions import Fraction

import pytest

from basehurwitz.hurwitz import (
    BaseCurve, HurwitzTable, NegativeRamificationError, Skipped, connected_from_disconnected,
    disconnected_generating_function, genus_from, get_table, heat_residual, hurwitz_number,
    initial_weight, ramification_count, verify_cut_and_join,
)
from basehurwitz.oracle import cycle_type_histogram
from basehurwitz.partitions import Partition, enumerate_partitions
from basehurwitz.symfun import schur


def sigma(n):
    return sum(d for d in range(1, n + 1) if n % d == 0)


def test_base_curve():
    assert BaseCurve(0).euler_char == 2 and BaseCurve(0).weight == -1
    assert BaseCurve(2).euler_char == -2 and BaseCurve(2).weight == 3
    with pytest.raises(ValueError):
        BaseCurve(-1)


def test_ramification_count_examples():
    assert ramification_count(1, 1, [1, 1, 1]) == 0
    assert ramification_count(0, 0, [1]) == 0
    assert ramification_count(1, 2, [1]) == 2
    assert genus_from(1, Partition([1]), 2) == 2


def test_torus_unramified_counts_are_partition_numbers():
    table = get_table(1, 6, 0)
    for d in range(1, 7):
        assert table.disconnected_count([1] * d, 0) == len(enumerate_partitions(d))


def test_genus_two_base_double_covers():
    table = get_table(2, 2, 0)
    assert table.disconnected_count([1, 1], 0) == 8


def test_connected_coefficients():
    table = get_table(1, 4, 0)
    assert table.log_series[(Partition([1, 1, 1, 1]), 0)] == Fraction(7, 4)
    assert table.log_series[(Partition([1]), 0)] == 1


@pytest.mark.parametrize("n", range(1, 11))
def test_elliptic_genus_one(n):
    assert hurwitz_number(1, 1, [1] * n) == math.factorial(n - 1) * sigma(n)


def test_vanishing_and_errors():
    for mu in ([1], [2, 1], [1, 1, 1]):
        assert hurwitz_number(1, 0, mu) == 0
        assert hurwitz_number(2, 1, mu) == 0
    with pytest.raises(NegativeRamificationError):
        hurwitz_number(0, -1, [1])
    with pytest.raises(ValueError):
        hurwitz_number(1, 1, [])


def test_classical_sphere_numbers():
    # a d-cycle has d^(d-2) minimal factorisations into d-1 transpositions;
    # dividing the tuple count by d! and by r! = (d-1)! gives d^(d-3)/(d-1)!
    for d in range(1, 7):
        assert hurwitz_number(0, 0, [d]) == Fraction(d) ** (d - 3) / math.factorial(d - 1)
    # one-part-one-point profile (1,1): H_{0,2}(1,1) = 1/2
    assert hurwitz_number(0, 0, [1, 1]) == Fraction(1, 2)


def test_heat_equation_and_initial_condition():
    for h in range(3):
        disc = disconnected_generating_function(BaseCurve(h), 5, 4)
        assert not heat_residual(disc)
        t0 = disc.t_layer(0)
        expected = {}
        for lam in [mu for d in range(6) for mu in enumerate_partitions(d)]:
            for k, c in schur(lam, 5).terms.items():
                expected[k] = expected.get(k, 0) + initial_weight(BaseCurve(h), lam) * c
        assert t0.terms == {k: v for k, v in expected.items() if v}


def test_log_needs_unit_constant():
    disc = disconnected_generating_function(BaseCurve(1), 3, 1)
    with pytest.raises(ValueError):
        connected_from_disconnected(disc.scale(2))


@pytest.mark.parametrize("h", [0, 1, 2])
def test_table_invariants(h):
    table = get_table(h, 4, 5)
    for (g, mu), v in table.connected.items():
        assert v >= 0
        assert ramification_count(h, g, mu) >= 0
        if h >= 1:
            assert g >= h


def test_support_restricted_table_agrees_with_full_table():
    full = HurwitzTable.build(1, 5, 4)
    for mu in [Partition([2, 1, 1]), Partition([3, 2]), Partition([1] * 5)]:
        from basehurwitz.hurwitz import support_closure
        part = HurwitzTable.build(1, 5, 4, support_closure([mu]))
        for g in range(1, 4):
            if ramification_count(1, g, mu) <= 4:
                assert part.number(g, mu) == full.number(g, mu)


@pytest.mark.parametrize("h,d,r", [(0, 3, 2), (0, 4, 4), (1, 3, 2), (1, 2, 4), (2, 2, 2), (2, 3, 0)])
def test_disconnected_counts_against_oracle(h, d, r):
    table = get_table(h, d, r)
    hist = cycle_type_histogram(h, d, r)
    for mu in enumerate_partitions(d):
        assert table.disconnected_count(mu, r) == Fraction(hist.get(tuple(mu), 0), math.factorial(d))


@pytest.mark.parametrize("h,d,r", [(0, 3, 4), (0, 4, 3), (1, 3, 2), (1, 4, 2), (2, 2, 2)])
def test_connected_numbers_against_oracle(h, d, r):
    table = get_table(h, d, r)
    hist = cycle_type_histogram(h, d, r, connected=True)
    for mu in enumerate_partitions(d):
        g = genus_from(h, mu, r)
        brute = Fraction(hist.get(tuple(mu), 0), math.factorial(d))
        if g is None or g < 0:
            assert brute == 0
            continue
        mults = math.prod(math.factorial(m) for m in mu.multiplicities().values())
        assert table.number(g, mu) == brute * mults / math.factorial(r)


def test_cut_and_join_examples():
    assert verify_cut_and_join(1, 2, [1, 1])
    assert verify_cut_and_join(0, 0, [2, 1])
    with pytest.raises(Skipped):
        verify_cut_and_join(1, 1, [1, 1, 1])


def test_table_lookup_outside_bounds():
    table = HurwitzTable.build(1, 2, 1)
    with pytest.raises(KeyError):
        table.number(3, [1])
    assert table.number(0, [1]) == 0
