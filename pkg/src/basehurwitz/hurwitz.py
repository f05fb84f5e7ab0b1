"""Simple Hurwitz numbers of a genus-h base curve from the heat equation.

The disconnected generating function

    exp H(t, p) = sum_mu (|mu|!/dim mu)^(1 - chi) s_mu(p) exp(p2[mu] t / 2)

is expanded in t and p, and connected numbers are read off its logarithm.
Coefficient conventions (checked against :mod:`basehurwitz.oracle`):

* the ``p_mu t^r`` coefficient of ``exp H`` times ``r!`` is the weighted
  number of possibly disconnected covers, #tuples / d!;
* the ``p_mu t^r`` coefficient of ``H`` equals ``H_{g,n}(mu) / prod m_i!``
  where ``H_{g,n}(mu)`` is the Hurwitz number with labelled preimages.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, Optional, Sequence, Tuple

from .partitions import (EMPTY, Partition, character, character_table, dim_of,
                         enumerate_partitions, partitions_up_to, z_of)
from .symfun import GradedSeries, SymFun, cut_and_join, schur, shifted_p2


class NegativeRamificationError(ValueError):
    pass


@dataclass(frozen=True)
class BaseCurve:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("base genus must be non-negative")

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus

    @property
    def weight(self) -> int:
        """1 - chi(B) = 2h - 1, the exponent that recurs everywhere."""
        return 2 * self.genus - 1


def _as_base(base) -> BaseCurve:
    return base if isinstance(base, BaseCurve) else BaseCurve(int(base))


def ramification_count(base, g: int, mu: Sequence[int]) -> int:
    """Riemann-Hurwitz: r = 2g - 2 + n - d (2h - 1); may be negative."""
    base = _as_base(base)
    return 2 * g - 2 + len(mu) - sum(mu) * base.weight


def genus_from(base, mu: Sequence[int], r: int) -> Optional[int]:
    """Domain genus for profile ``mu`` and ``r`` simple branch points, None if not integral."""
    base = _as_base(base)
    twice = r - len(mu) + sum(mu) * base.weight
    if twice % 2:
        return None
    return twice // 2 + 1


def violates_vanishing(base, g: int, mu: Sequence[int]) -> bool:
    """True when the degree/genus constraints for h >= 1 force the count to vanish."""
    base = _as_base(base)
    if base.genus == 0:
        return False
    n, d, w = len(mu), sum(mu), base.weight
    return not (n * w <= d * w <= 2 * g - 2 + n) or n * (base.genus - 1) > g - 1


def _sub_multisets(mu: Partition) -> Iterable[Partition]:
    mult = mu.multiplicities()
    parts = sorted(mult)
    for counts in product(*(range(mult[p] + 1) for p in parts)):
        yield Partition([p for p, c in zip(parts, counts) for _ in range(c)])


class BiSeries(GradedSeries):
    """Series in (t, p_1, p_2, ...) keyed by ``(mu, r)`` for ``p_mu t^r``.

    Graded by ``|mu|``; truncated at ``|mu| <= degree_bound`` and
    ``r <= t_bound``.  An optional ``support`` restricts the monomials to
    sub-multisets of given partitions, which is again a quotient ring.
    """

    __slots__ = ("degree_bound", "t_bound", "support")

    def __init__(self, terms=None, degree_bound: int = 6, t_bound: int = 6,
                 support: Optional[FrozenSet[Partition]] = None):
        self.degree_bound = degree_bound
        self.t_bound = t_bound
        self.support = support
        super().__init__({(Partition(m), r): c for (m, r), c in dict(terms or {}).items()})

    @staticmethod
    def _degree(key) -> int:
        return key[0].size

    @staticmethod
    def _mul_keys(a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _keep(self, key) -> bool:
        mu, r = key
        if mu.size > self.degree_bound or r > self.t_bound:
            return False
        return self.support is None or mu in self.support

    def _one_key(self):
        return (EMPTY, 0)

    def _like(self, terms) -> "BiSeries":
        out = BiSeries.__new__(BiSeries)
        out.degree_bound = self.degree_bound
        out.t_bound = self.t_bound
        out.support = self.support
        GradedSeries.__init__(out, terms)
        return out

    def t_layer(self, r: int) -> SymFun:
        return SymFun({mu: c for (mu, s), c in self.terms.items() if s == r}, self.degree_bound)

    def __repr__(self) -> str:
        return f"BiSeries({len(self.terms)} terms, D={self.degree_bound}, R={self.t_bound})"


def support_closure(targets: Iterable[Sequence[int]]) -> FrozenSet[Partition]:
    out = set()
    for mu in targets:
        out.update(_sub_multisets(Partition(mu)))
    return frozenset(out)


def initial_weight(base, lam: Partition) -> Fraction:
    """(|lam|!/dim lam)^(1 - chi); the exponent is negative for the sphere."""
    base = _as_base(base)
    return Fraction(math.factorial(lam.size), dim_of(lam)) ** base.weight


def disconnected_generating_function(base, degree_bound: int, t_bound: int,
                                     support: Optional[FrozenSet[Partition]] = None,
                                     cache_dir=None) -> BiSeries:
    """Truncation of sum_lam a_lam s_lam sum_r (p2[lam]/2)^r t^r / r!.

    With ``cache_dir`` the characters come from the on-disk character tables.
    """
    base = _as_base(base)
    terms: Dict[Tuple[Partition, int], Fraction] = {}
    for lam in partitions_up_to(degree_bound):
        a = initial_weight(base, lam)
        if support is None and cache_dir is None:
            s = schur(lam, degree_bound).terms
        else:
            chi = character_table(lam.size, cache_dir) if cache_dir is not None else character
            mus = enumerate_partitions(lam.size) if support is None else \
                [mu for mu in support if mu.size == lam.size]
            # only the Schur coefficients on the support are needed
            s = {mu: Fraction(chi(lam, mu), z_of(mu)) for mu in mus}
        eig = Fraction(shifted_p2(lam), 2)
        for r in range(t_bound + 1):
            w = a * eig**r / math.factorial(r)
            if not w:
                continue
            for mu, c in s.items():
                key = (mu, r)
                terms[key] = terms.get(key, 0) + w * c
    return BiSeries(terms, degree_bound, t_bound, support)


def connected_from_disconnected(disc: BiSeries) -> BiSeries:
    if disc.constant_term() != 1:
        raise ValueError("disconnected series must have constant term 1")
    return disc.log()


def heat_residual(disc: BiSeries) -> BiSeries:
    """d/dt exp(H) - Delta exp(H), layer by layer up to the t bound."""
    terms: Dict[Tuple[Partition, int], Fraction] = {}
    for r in range(disc.t_bound):
        lhs = disc.t_layer(r + 1).scale(r + 1)
        diff = lhs - cut_and_join(disc.t_layer(r))
        for mu, c in diff.terms.items():
            terms[(mu, r)] = c
    return BiSeries(terms, disc.degree_bound, disc.t_bound)


def automorphism_factor(mu: Sequence[int]) -> int:
    return math.prod(math.factorial(m) for m in Partition(mu).multiplicities().values())


@dataclass
class HurwitzTable:
    """Connected (labelled) and disconnected Hurwitz numbers of one base curve."""

    base: BaseCurve
    degree_bound: int
    ramification_bound: int
    connected: Dict[Tuple[int, Partition], Fraction] = field(default_factory=dict)
    disconnected: Dict[Tuple[int, Partition], Fraction] = field(default_factory=dict)
    series: Optional[BiSeries] = field(default=None, repr=False)
    log_series: Optional[BiSeries] = field(default=None, repr=False)

    @classmethod
    def build(cls, base, degree_bound: int = 6, ramification_bound: int = 6,
              support: Optional[FrozenSet[Partition]] = None, cache_dir=None) -> "HurwitzTable":
        base = _as_base(base)
        disc = disconnected_generating_function(base, degree_bound, ramification_bound,
                                                support, cache_dir)
        conn = connected_from_disconnected(disc)
        table = cls(base, degree_bound, ramification_bound, series=disc, log_series=conn)
        for (mu, r), c in disc.terms.items():
            table.disconnected[(r, mu)] = c
        for (mu, r), c in conn.terms.items():
            g = genus_from(base, mu, r)
            assert g is not None and g >= 0, f"non-geometric coefficient at {mu}, r={r}"
            table.connected[(g, mu)] = c * automorphism_factor(mu)
        return table

    def covers(self, g: int, mu: Sequence[int]) -> bool:
        r = ramification_count(self.base, g, mu)
        return sum(mu) <= self.degree_bound and r <= self.ramification_bound

    def number(self, g: int, mu: Sequence[int]) -> Fraction:
        """Labelled connected H_{g,n}(mu); zero outside the geometric range."""
        mu = Partition(mu)
        if g < 0 or not mu:
            return Fraction(0)
        r = ramification_count(self.base, g, mu)
        if r < 0 or violates_vanishing(self.base, g, mu):
            return Fraction(0)
        if not self.covers(g, mu):
            raise KeyError(f"(g={g}, mu={list(mu)}) is outside the table bounds")
        return self.connected.get((g, mu), Fraction(0))

    def disconnected_count(self, mu: Sequence[int], r: int) -> Fraction:
        """Weighted number of possibly disconnected covers (#tuples / d!)."""
        return self.disconnected.get((r, Partition(mu)), Fraction(0)) * math.factorial(r)

    def entries(self):
        """Sorted (g, mu, r, value) rows of non-zero connected numbers."""
        rows = []
        for (g, mu), v in self.connected.items():
            rows.append((g, mu, ramification_count(self.base, g, mu), v))
        rows.sort(key=lambda row: (row[1].size, row[0], -row[1].length, tuple(row[1])))
        return rows


_TABLES: Dict[int, list] = {}


def get_table(base, degree_bound: int, ramification_bound: int, cache_dir=None) -> HurwitzTable:
    """Full table covering the bounds, reusing any cached larger one."""
    base = _as_base(base)
    for table in _TABLES.get(base.genus, []):
        if table.degree_bound >= degree_bound and table.ramification_bound >= ramification_bound:
            return table
    table = HurwitzTable.build(base, degree_bound, ramification_bound, cache_dir=cache_dir)
    _TABLES.setdefault(base.genus, []).append(table)
    return table


@lru_cache(maxsize=4096)
def _single(h: int, mu: Partition, r: int) -> HurwitzTable:
    return HurwitzTable.build(BaseCurve(h), mu.size, r, support_closure([mu]))


def hurwitz_number(base, g: int, mu: Sequence[int]) -> Fraction:
    """Connected Hurwitz number H_{g,n}^B(mu) with labelled preimages of 0."""
    base = _as_base(base)
    mu = Partition(mu)
    if not mu:
        raise ValueError("mu must be non-empty")
    if violates_vanishing(base, g, mu):
        return Fraction(0)
    r = ramification_count(base, g, mu)
    if r < 0:
        raise NegativeRamificationError(f"r(g={g}, mu={list(mu)}) = {r} < 0")
    for table in _TABLES.get(base.genus, []):
        if table.covers(g, mu):
            return table.number(g, mu)
    return _single(base.genus, mu, r).number(g, mu)


def _lookup(table: HurwitzTable, g: int, mu: Sequence[int]) -> Fraction:
    if g < 0 or ramification_count(table.base, g, mu) < 0:
        return Fraction(0)
    if table.covers(g, mu):
        return table.number(g, mu)
    return hurwitz_number(table.base, g, mu)


def cut_and_join_sides(base, g: int, mu: Sequence[int],
                       table: Optional[HurwitzTable] = None) -> Tuple[Fraction, Fraction]:
    """Left and right sides of the cut-and-join recursion for the vector ``mu``."""
    base = _as_base(base)
    mu = list(mu)
    n, d = len(mu), sum(mu)
    r = ramification_count(base, g, mu)
    if table is None:
        table = get_table(base, d, max(r, 0))

    def H(gg, vec):
        return _lookup(table, gg, vec)

    lhs = r * H(g, mu)
    rhs = Fraction(0)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rest = [mu[k] for k in range(n) if k not in (i, j)]
            rhs += Fraction(mu[i] + mu[j], 2) * H(g, [mu[i] + mu[j]] + rest)
    for i in range(n):
        others = [k for k in range(n) if k != i]
        for alpha in range(1, mu[i]):
            beta = mu[i] - alpha
            w = Fraction(alpha * beta, 2)
            acc = H(g - 1, [alpha, beta] + [mu[k] for k in others])
            for mask in range(1 << len(others)):
                I = [mu[k] for pos, k in enumerate(others) if mask >> pos & 1]
                J = [mu[k] for pos, k in enumerate(others) if not mask >> pos & 1]
                for g1 in range(g + 1):
                    right = H(g - g1, [beta] + J)
                    if right:
                        acc += H(g1, [alpha] + I) * right
            rhs += w * acc
    return lhs, rhs


class Skipped(Exception):
    """Raised when a verification does not apply (trivial 0 = 0 case)."""


def verify_cut_and_join(base, g: int, mu: Sequence[int],
                        table: Optional[HurwitzTable] = None) -> bool:
    base = _as_base(base)
    if ramification_count(base, g, mu) <= 0:
        raise Skipped(f"r(g={g}, mu={list(mu)}) <= 0: the recursion reads 0 = 0")
    lhs, rhs = cut_and_join_sides(base, g, mu, table)
    return lhs == rhs
