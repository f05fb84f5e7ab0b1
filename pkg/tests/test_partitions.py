import json
import math
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from basehurwitz.partitions import (
    EMPTY, Partition, character, character_table, class_size, dim_of,
    enumerate_partitions, partitions_up_to, z_of,
)


def partition_count(n):
    # Euler's pentagonal recurrence
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, total = 1, 0
        while True:
            for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
                if g > m:
                    break
                total += (-1) ** (k + 1) * p[m - g]
            if k * (3 * k - 1) // 2 > m:
                break
            k += 1
        p[m] = total
    return p[n]


def cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i not in seen:
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = p[j]
                n += 1
            out.append(n)
    return Partition(out)


partitions_st = st.integers(min_value=1, max_value=7).flatmap(
    lambda d: st.sampled_from(enumerate_partitions(d)))


def test_partition_normalises_and_validates():
    assert Partition([1, 3, 2]) == (3, 2, 1)
    assert Partition([2, 1]).size == 3 and Partition([2, 1]).length == 2
    with pytest.raises(ValueError):
        Partition([2, 0])


def test_enumeration_counts():
    assert enumerate_partitions(0) == (EMPTY,)
    assert len(enumerate_partitions(4)) == 5
    assert len(enumerate_partitions(10)) == 42
    for d in range(15):
        assert len(enumerate_partitions(d)) == partition_count(d)


def test_partitions_up_to_covers_every_degree():
    sizes = [mu.size for mu in partitions_up_to(5)]
    assert sizes == sorted(sizes)
    assert len(sizes) == sum(partition_count(d) for d in range(6))


def test_z_examples():
    assert z_of(Partition([1] * 5)) == 120
    assert z_of(Partition([3, 1, 1])) == 6
    assert z_of(Partition([2])) == 2


@pytest.mark.parametrize("d", range(1, 7))
def test_class_sizes_match_brute_force(d):
    counts = {}
    for p in permutations(range(d)):
        mu = cycle_type(p)
        counts[mu] = counts.get(mu, 0) + 1
    for mu in enumerate_partitions(d):
        assert class_size(mu) == counts[mu] == math.factorial(d) // z_of(mu)


def standard_tableaux(shape):
    # count by removing corners
    shape = tuple(shape)
    if sum(shape) == 0:
        return 1
    total = 0
    for i, row in enumerate(shape):
        if row and (i + 1 == len(shape) or shape[i + 1] < row):
            smaller = list(shape)
            smaller[i] -= 1
            total += standard_tableaux(tuple(x for x in smaller if x))
    return total


@pytest.mark.parametrize("d", range(1, 9))
def test_dimensions_against_tableaux(d):
    for lam in enumerate_partitions(d):
        assert dim_of(lam) == standard_tableaux(lam)
    assert sum(dim_of(lam) ** 2 for lam in enumerate_partitions(d)) == math.factorial(d)


def test_character_examples():
    assert character(Partition([2, 1]), Partition([3])) == -1
    for mu in enumerate_partitions(5):
        assert character(Partition([5]), mu) == 1
        assert character(Partition([1] * 5), mu) == (-1) ** (5 - mu.length)
    with pytest.raises(ValueError):
        character(Partition([2]), Partition([1]))


@pytest.mark.parametrize("d", range(2, 8))
def test_standard_representation_is_fixed_points_minus_one(d):
    lam = Partition([d - 1, 1])
    for mu in enumerate_partitions(d):
        assert character(lam, mu) == mu.count(1) - 1


@pytest.mark.parametrize("d", range(1, 8))
def test_row_and_column_orthogonality(d):
    parts = enumerate_partitions(d)
    for a in parts:
        for b in parts:
            row = sum(Fraction(character(a, mu) * character(b, mu), z_of(mu)) for mu in parts)
            assert row == (1 if a == b else 0)
            col = sum(character(lam, a) * character(lam, b) for lam in parts)
            assert col == (z_of(a) if a == b else 0)


@given(partitions_st)
def test_conjugate_twists_by_sign(lam):
    for mu in enumerate_partitions(lam.size):
        sign = (-1) ** (mu.size - mu.length)
        assert character(lam.conjugate(), mu) == sign * character(lam, mu)


@given(partitions_st)
def test_character_at_identity_is_dimension(lam):
    assert character(lam, Partition([1] * lam.size)) == dim_of(lam)


def test_character_table_cache_roundtrip(tmp_path):
    cold = character_table(5, tmp_path)
    path = tmp_path / "chartab_5.json"
    raw = path.read_bytes()
    warm = character_table(5, tmp_path)
    assert cold == warm
    assert path.read_bytes() == raw
    assert json.loads(raw)["degree"] == 5
    assert warm(Partition([4, 1]), Partition([1] * 5)) == 4
    assert warm.dims[Partition([3, 2])] == 5
