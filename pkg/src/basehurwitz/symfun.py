"""Symmetric functions in the power-sum basis, truncated by total degree.

A monomial ``p_mu = p_{mu_1} ... p_{mu_n}`` is keyed by the partition
``mu``; its degree is ``|mu|``.  :class:`GradedSeries` holds the ring
arithmetic (including truncated ``exp``/``log``) shared with the
two-variable series used for Hurwitz generating functions.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, Iterator, Tuple

from .partitions import EMPTY, Partition, enumerate_partitions, character, z_of


class DegreeBoundError(ValueError):
    pass


class GradedSeries:
    """Finite map key -> Fraction in a ring graded by ``_degree(key)``.

    Subclasses define key multiplication, which keys survive truncation,
    and a ``degree_bound`` attribute.  The constant key must have degree 0 and be the only
    degree-0 key.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: Dict[Hashable, Fraction] = {}
        if terms:
            for key, c in dict(terms).items():
                c = Fraction(c)
                if c and self._keep(key):
                    self.terms[key] = c

    # -- hooks -------------------------------------------------------------
    @staticmethod
    def _degree(key) -> int:
        raise NotImplementedError

    @staticmethod
    def _mul_keys(a, b):
        raise NotImplementedError

    def _keep(self, key) -> bool:
        raise NotImplementedError

    def _one_key(self):
        raise NotImplementedError

    def _like(self, terms) -> "GradedSeries":
        raise NotImplementedError

    # -- ring structure ----------------------------------------------------
    def __getitem__(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GradedSeries):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GradedSeries":
        c = Fraction(c)
        return self._like({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GradedSeries):
            return self.scale(other)
        out: Dict[Hashable, Fraction] = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                k = self._mul_keys(ka, kb)
                if self._keep(k):
                    out[k] = out.get(k, 0) + ca * cb
        return self._like(out)

    __rmul__ = scale

    def constant_term(self) -> Fraction:
        return self[self._one_key()]

    def graded_pieces(self) -> Dict[int, "GradedSeries"]:
        pieces: Dict[int, dict] = {}
        for k, c in self.terms.items():
            pieces.setdefault(self._degree(k), {})[k] = c
        return {d: self._like(t) for d, t in pieces.items()}

    def max_degree(self) -> int:
        return max((self._degree(k) for k in self.terms), default=0)

    def euler(self) -> "GradedSeries":
        """Multiply each graded piece by its degree."""
        return self._like({k: self._degree(k) * c for k, c in self.terms.items()})

    def log(self) -> "GradedSeries":
        """Truncated logarithm of a series with constant term 1.

        Solves ``E(L) * f = E(f)`` degree by degree, where ``E`` is the
        Euler (degree) operator.
        """
        if self.constant_term() != 1:
            raise ValueError("log needs constant term 1")
        f = self.graded_pieces()
        top = self.max_degree()
        eul: Dict[int, GradedSeries] = {}
        out = self._like({})
        for d in range(1, top + 1):
            acc = f[d].euler() if d in f else self._like({})
            for k in range(1, d):
                if k in eul and (d - k) in f:
                    acc = acc - eul[k] * f[d - k]
            eul[d] = acc
            out = out + acc.scale(Fraction(1, d))
        return out

    def exp(self) -> "GradedSeries":
        """Truncated exponential of a series with zero constant term."""
        if self.constant_term() != 0:
            raise ValueError("exp needs zero constant term")
        g = self.graded_pieces()
        # E(F) = E(g) * F
        eg = {d: piece.euler() for d, piece in g.items()}
        F = {0: self._like({self._one_key(): 1})}
        for d in range(1, self.degree_bound + 1):
            acc = self._like({})
            for k in range(1, d + 1):
                if k in eg and (d - k) in F:
                    acc = acc + eg[k] * F[d - k]
            F[d] = acc.scale(Fraction(1, d))
        out = self._like({})
        for piece in F.values():
            out = out + piece
        return out


class SymFun(GradedSeries):
    """Polynomial in p_1, p_2, ... with rational coefficients, truncated at degree D."""

    __slots__ = ("degree_bound",)

    def __init__(self, terms=None, degree_bound: int = 6):
        self.degree_bound = degree_bound
        super().__init__({Partition(k): c for k, c in dict(terms or {}).items()})

    @staticmethod
    def _degree(key: Partition) -> int:
        return key.size

    @staticmethod
    def _mul_keys(a: Partition, b: Partition) -> Partition:
        return a + b

    def _keep(self, key: Partition) -> bool:
        return key.size <= self.degree_bound

    def _one_key(self):
        return EMPTY

    def _like(self, terms) -> "SymFun":
        out = SymFun.__new__(SymFun)
        out.degree_bound = self.degree_bound
        GradedSeries.__init__(out, terms)
        return out

    @classmethod
    def p(cls, *indices: int, degree_bound: int = 6) -> "SymFun":
        """The monomial p_{i1} p_{i2} ... with coefficient 1."""
        return cls({Partition(indices): 1}, degree_bound)

    def __repr__(self) -> str:
        if not self.terms:
            return "SymFun(0)"
        body = " + ".join(
            f"{c}*p{list(k)}" for k, c in sorted(self.terms.items(), key=lambda kv: (kv[0].size, kv[0]))
        )
        return f"SymFun({body})"


def schur(mu: Partition, degree_bound: int) -> SymFun:
    """Schur function s_mu = sum_{lam |- |mu|} chi_mu(lam)/z_lam p_lam."""
    mu = Partition(mu)
    if mu.size > degree_bound:
        raise DegreeBoundError(f"|mu| = {mu.size} exceeds degree bound {degree_bound}")
    return SymFun(
        {lam: Fraction(character(mu, lam), z_of(lam)) for lam in enumerate_partitions(mu.size)},
        degree_bound,
    )


def _cut_and_join_monomial(mu: Partition) -> Iterator[Tuple[Partition, Fraction]]:
    # Delta = 1/2 sum_{i,j} (i+j) p_i p_j d/dp_{i+j} + i j p_{i+j} d^2/dp_i dp_j
    mult = mu.multiplicities()
    parts = list(mu)
    # cut: remove one part k = i + j, insert (i, j); ordered pairs (i, j)
    for k, m in mult.items():
        rest = list(parts)
        rest.remove(k)
        for i in range(1, k):
            yield Partition(rest + [i, k - i]), Fraction(k * m, 2)
    # join: remove parts i and j (ordered), insert i + j
    keys = sorted(mult)
    for i in keys:
        for j in keys:
            if i == j:
                count = mult[i] * (mult[i] - 1)
            else:
                count = mult[i] * mult[j]
            if not count:
                continue
            rest = list(parts)
            rest.remove(i)
            rest.remove(j)
            yield Partition(rest + [i + j]), Fraction(i * j * count, 2)


def cut_and_join(f: SymFun) -> SymFun:
    """Apply the cut-and-join operator; degree preserving."""
    out: Dict[Partition, Fraction] = {}
    for mu, c in f.terms.items():
        for nu, w in _cut_and_join_monomial(mu):
            out[nu] = out.get(nu, 0) + c * w
    return SymFun(out, f.degree_bound)


def shifted_p2(mu: Iterable[int]) -> int:
    """Shifted power sum sum_i [(mu_i - i + 1/2)^2 - (-i + 1/2)^2] = sum_i mu_i (mu_i - 2i + 1)."""
    return sum(m * (m - 2 * i + 1) for i, m in enumerate(Partition(mu), start=1))
