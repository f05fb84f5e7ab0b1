"""Brute-force counting of monodromy representations.

This is the independent check on the character-theoretic Hurwitz
numbers: it never touches characters or symmetric functions.  A degree
``d`` cover of a genus ``h`` curve, branched over ``0`` with profile
``mu`` and simply branched over ``r`` further points, is a tuple

    (a_1, b_1, ..., a_h, b_h, t_1, ..., t_r, s)   in S_d

with ``t_k`` transpositions, ``s`` of cycle type ``mu`` and
``t_1 ... t_r s = [a_1, b_1] ... [a_h, b_h]`` (``[a, b] = a b a^-1 b^-1``).
The relation is solved for ``s``, so only the ``a``, ``b`` and ``t``
are enumerated.  Counts are divided by ``d!``.

The compiled kernel is used when it has been built; otherwise the
pure-Python loop runs (same results, much slower).  Setting
``BASEHURWITZ_PURE_PYTHON=1`` forces the fallback.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, Tuple

from . import _oracle_py
from .partitions import Partition

if os.environ.get("BASEHURWITZ_PURE_PYTHON"):
    _oracle_kernel = None
else:
    try:
        from . import _oracle_kernel
    except ImportError:  # pragma: no cover - depends on the build
        _oracle_kernel = None

DEFAULT_BUDGET = 10**9
MAX_DEGREE = 7

HAVE_KERNEL = _oracle_kernel is not None


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class MonodromyProblem:
    base_genus: int
    degree: int
    mu: Partition
    r: int
    connected: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        if self.mu.size != self.degree:
            raise ValueError(f"|mu| = {self.mu.size} but degree = {self.degree}")
        if self.base_genus < 0 or self.r < 0:
            raise ValueError("base genus and r must be non-negative")

    def genus(self):
        """Domain genus from Riemann-Hurwitz, or None when it is not an integer."""
        twice = self.r - self.mu.length + self.degree * (2 * self.base_genus - 1) + 2
        return twice // 2 if twice % 2 == 0 else None


@lru_cache(maxsize=None)
def _group(d: int) -> Tuple[tuple, tuple]:
    perms = tuple(permutations(range(d)))
    trans = []
    for i, j in combinations(range(d), 2):
        t = list(range(d))
        t[i], t[j] = j, i
        trans.append(tuple(t))
    return perms, tuple(trans)


def enumeration_size(h: int, d: int, r: int) -> int:
    """Number of leaf tuples visited: (d!)^(2h) * C(d, 2)^r."""
    return math.factorial(d) ** (2 * h) * math.comb(d, 2) ** r


@lru_cache(maxsize=256)
def cycle_type_histogram(h: int, d: int, r: int, connected: bool = False,
                         budget: int = DEFAULT_BUDGET,
                         backend: str = "auto") -> Dict[Tuple[int, ...], int]:
    """Number of monodromy tuples (not divided by ``d!``) per cycle type of ``s``."""
    if d < 1 or d > MAX_DEGREE:
        raise BudgetExceeded(f"degree {d} outside the oracle range 1..{MAX_DEGREE}")
    size = enumeration_size(h, d, r)
    if size > budget:
        raise BudgetExceeded(f"{size} tuples exceed the budget {budget}")
    perms, trans = _group(d)
    if backend == "auto":
        backend = "compiled" if HAVE_KERNEL else "python"
    if backend == "compiled":
        if not HAVE_KERNEL:
            raise RuntimeError("compiled oracle kernel is not built")
        return _oracle_kernel.histogram(d, h, r, connected, perms, trans)
    if backend == "python":
        return _oracle_py.histogram(d, h, r, connected, perms, trans)
    raise ValueError(f"unknown backend {backend!r}")


def count_tuples(h: int, d: int, mu, r: int, connected: bool = False,
                 budget: int = DEFAULT_BUDGET, backend: str = "auto") -> int:
    """Raw number of monodromy tuples with ``s`` of cycle type ``mu``."""
    hist = cycle_type_histogram(h, d, r, connected, budget, backend)
    return hist.get(tuple(Partition(mu)), 0)


def count_covers(prob: MonodromyProblem, budget: int = DEFAULT_BUDGET,
                 backend: str = "auto") -> Fraction:
    """Automorphism-weighted count of (dis)connected covers: #tuples / d!."""
    n = count_tuples(prob.base_genus, prob.degree, prob.mu, prob.r,
                     prob.connected, budget, backend)
    return Fraction(n, math.factorial(prob.degree))


def count_class_sums(h: int, d: int, budget: int = DEFAULT_BUDGET,
                     backend: str = "auto") -> Fraction:
    """|Hom(pi_1(B), S_d)| / d!, the weighted number of unramified (disconnected) covers."""
    return count_covers(MonodromyProblem(h, d, Partition([1] * d), 0), budget, backend)
