import math
from fractions import Fraction

import pytest

from basehurwitz import oracle
from basehurwitz.oracle import (
    BudgetExceeded, MonodromyProblem, count_class_sums, count_covers, count_tuples,
    cycle_type_histogram, enumeration_size,
)
from basehurwitz.partitions import Partition, dim_of, enumerate_partitions

BACKENDS = ["python"] + (["compiled"] if oracle.HAVE_KERNEL else [])


@pytest.mark.parametrize("backend", BACKENDS)
def test_commuting_pairs(backend):
    assert count_covers(MonodromyProblem(1, 2, [1, 1], 0), backend=backend) == 2
    assert count_covers(MonodromyProblem(1, 1, [1], 0, connected=True), backend=backend) == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_unramified_counts_follow_dimension_formula(backend):
    for h in range(3):
        for d in range(1, 5 if h < 2 else 4):
            expected = sum(Fraction(dim_of(lam), math.factorial(d)) ** (2 - 2 * h)
                           for lam in enumerate_partitions(d))
            assert count_class_sums(h, d, backend=backend) == expected
    assert count_class_sums(1, 3, backend=backend) == 3
    assert count_class_sums(2, 2, backend=backend) == 8


def test_sphere_double_cover_with_two_branch_points():
    prob = MonodromyProblem(0, 2, [1, 1], 2, connected=True)
    assert prob.genus() == 0
    assert count_covers(prob) == Fraction(1, 2)


@pytest.mark.skipif(not oracle.HAVE_KERNEL, reason="compiled kernel not built")
@pytest.mark.parametrize("h,d,r,connected", [
    (0, 3, 4, False), (0, 4, 3, True), (1, 3, 2, True), (1, 4, 1, False), (2, 3, 1, True),
])
def test_backends_agree(h, d, r, connected):
    a = cycle_type_histogram(h, d, r, connected, backend="compiled")
    b = cycle_type_histogram(h, d, r, connected, backend="python")
    assert a == b


def test_histogram_total_is_enumeration_size():
    hist = cycle_type_histogram(1, 3, 2)
    assert sum(hist.values()) == enumeration_size(1, 3, 2)


def test_connected_never_exceeds_disconnected():
    for h, d, r in [(0, 4, 4), (1, 3, 2), (1, 4, 1)]:
        full = cycle_type_histogram(h, d, r, False)
        conn = cycle_type_histogram(h, d, r, True)
        for mu, n in conn.items():
            assert n <= full[mu]


def test_single_cycle_profile_is_always_connected():
    full = cycle_type_histogram(0, 4, 3, False)
    conn = cycle_type_histogram(0, 4, 3, True)
    assert conn[(4,)] == full[(4,)]


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        count_tuples(2, 5, [5], 2, budget=10**6)
    with pytest.raises(BudgetExceeded):
        count_tuples(0, 9, [9], 0)


def test_problem_validation():
    with pytest.raises(ValueError):
        MonodromyProblem(1, 3, [2], 0)
    with pytest.raises(ValueError):
        MonodromyProblem(1, 2, [2], -1)
    assert MonodromyProblem(1, 2, [2], 1).genus() == 2
    assert MonodromyProblem(1, 2, [2], 0).genus() is None


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    code = ("from basehurwitz import oracle; "
            "print(oracle.HAVE_KERNEL, oracle.count_class_sums(1, 3))")
    env = dict(os.environ, BASEHURWITZ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["False", "3"]
