"""Exact operator algebra for the partition function Z(x, hbar).

Coefficients live in the ring of finite sums ``sum_a q_a(hbar) e^(a hbar)``
with Laurent polynomials ``q_a``.  Operators are small expression trees
whose generators act diagonally (or by a degree shift) on the basis
``hbar^j e^(a hbar) x^m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import mpmath

from .hurwitz import BaseCurve, _as_base, get_table
from .freeenergy import FreeEnergyFamily, InsufficientTableError


# -- exp-Laurent ring --------------------------------------------------------

Laurent = Dict[int, Fraction]


def _laurent_add(p: Laurent, q: Laurent) -> Laurent:
    out = dict(p)
    for j, c in q.items():
        out[j] = out.get(j, 0) + c
    return {j: c for j, c in out.items() if c}


def _laurent_mul(p: Laurent, q: Laurent) -> Laurent:
    out: Dict[int, Fraction] = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {j: c for j, c in out.items() if c}


class ExpLaurent:
    """Finite sum of ``q_a(hbar) e^(a hbar)``, stored canonically."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict] = None):
        clean: Dict[Fraction, Laurent] = {}
        for a, q in (terms or {}).items():
            q = {int(j): Fraction(c) for j, c in q.items() if c}
            if q:
                a = Fraction(a)
                clean[a] = _laurent_add(clean.get(a, {}), q)
                if not clean[a]:
                    del clean[a]
        self.terms = clean

    @classmethod
    def const(cls, c) -> "ExpLaurent":
        return cls({0: {0: c}})

    @classmethod
    def monomial(cls, j: int = 0, a=0, c=1) -> "ExpLaurent":
        """c hbar^j e^(a hbar)."""
        return cls({a: {j: c}})

    def __eq__(self, other):
        if isinstance(other, ExpLaurent):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ExpLaurent.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((a, tuple(sorted(q.items()))) for a, q in self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms):
            q = " + ".join(f"{c}*h^{j}" for j, c in sorted(self.terms[a].items()))
            parts.append(f"({q})" + (f"*e^({a}h)" if a else ""))
        return " + ".join(parts)

    def __add__(self, other) -> "ExpLaurent":
        other = _coerce(other)
        out = dict(self.terms)
        for a, q in other.terms.items():
            out[a] = _laurent_add(out.get(a, {}), q)
        return ExpLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpLaurent({a: {j: -c for j, c in q.items()} for a, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other) -> "ExpLaurent":
        other = _coerce(other)
        out: Dict[Fraction, Laurent] = {}
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                out[a + b] = _laurent_add(out.get(a + b, {}), _laurent_mul(p, q))
        return ExpLaurent(out)

    __rmul__ = __mul__

    def hbar_pow(self, k: int) -> "ExpLaurent":
        return ExpLaurent({a: {j + k: c for j, c in q.items()} for a, q in self.terms.items()})

    def exp_shift(self, b) -> "ExpLaurent":
        """Multiply by e^(b hbar)."""
        b = Fraction(b)
        return ExpLaurent({a + b: q for a, q in self.terms.items()})

    def d_hbar(self) -> "ExpLaurent":
        out = {}
        for a, q in self.terms.items():
            new: Laurent = {}
            for j, c in q.items():
                if j:
                    new[j - 1] = new.get(j - 1, 0) + j * c
                if a:
                    new[j] = new.get(j, 0) + a * c
            out[a] = new
        return ExpLaurent(out)

    def min_hbar_power(self) -> Optional[int]:
        return min((j for q in self.terms.values() for j in q), default=None)

    def expand(self, K: int) -> Dict[int, Fraction]:
        """Laurent expansion in hbar (each e^(a hbar) by its Taylor series), powers <= K."""
        out: Dict[int, Fraction] = {}
        for a, q in self.terms.items():
            for j, c in q.items():
                for i in range(0, K - j + 1):
                    term = c * a**i / math.factorial(i) if i else c
                    if term:
                        out[j + i] = out.get(j + i, 0) + term
        return {k: c for k, c in sorted(out.items()) if c}

    def evaluate(self, hbar):
        """Numerical value at a complex ``hbar`` (mpmath)."""
        total = mpmath.mpc(0)
        for a, q in self.terms.items():
            poly = sum(mpmath.mpf(c.numerator) / c.denominator * hbar**j for j, c in q.items())
            total += poly * mpmath.exp(mpmath.mpf(a.numerator) / a.denominator * hbar)
        return total


def _coerce(x) -> ExpLaurent:
    if isinstance(x, ExpLaurent):
        return x
    return ExpLaurent.const(x)


ZERO = ExpLaurent()
ONE = ExpLaurent.const(1)


class XSeries:
    """sum_{m <= M} c_m(hbar) x^m with ExpLaurent coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, M: Optional[int] = None):
        coeffs = [_coerce(c) for c in coeffs]
        if M is not None:
            coeffs = (coeffs + [ZERO] * (M + 1))[: M + 1]
        if not coeffs:
            raise ValueError("an XSeries needs at least one coefficient")
        self.coeffs: List[ExpLaurent] = coeffs

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def basis(cls, j: int, a, m: int, M: int) -> "XSeries":
        coeffs = [ZERO] * (M + 1)
        coeffs[m] = ExpLaurent.monomial(j, a)
        return cls(coeffs)

    def __getitem__(self, m: int) -> ExpLaurent:
        return self.coeffs[m] if 0 <= m <= self.M else ZERO

    def __eq__(self, other):
        if isinstance(other, XSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self) -> str:
        body = " + ".join(f"[{c}]*x^{m}" for m, c in enumerate(self.coeffs) if c)
        return f"XSeries({body or 0}; M={self.M})"

    def __add__(self, other: "XSeries") -> "XSeries":
        n = min(self.M, other.M)
        return XSeries([self[m] + other[m] for m in range(n + 1)])

    def __neg__(self):
        return XSeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def map_coeffs(self, f) -> "XSeries":
        return XSeries([f(m, c) for m, c in enumerate(self.coeffs)])

    def is_zero(self, upto: Optional[int] = None) -> bool:
        top = self.M if upto is None else upto
        return not any(self[m] for m in range(top + 1))


# -- operators -----------------------------------------------------------------

class OperatorExpr:
    def __add__(self, other):
        return Sum((self, other))

    def __sub__(self, other):
        return Sum((self, Scale(Fraction(-1), other)))

    def __matmul__(self, other):
        """Composition: (A @ B) s = A(B(s))."""
        return Compose((self, other))

    def __rmul__(self, c):
        return Scale(Fraction(c), self)


@dataclass(frozen=True)
class Identity(OperatorExpr):
    pass


@dataclass(frozen=True)
class MulX(OperatorExpr):
    pass


@dataclass(frozen=True)
class MulHbarPow(OperatorExpr):
    k: int


@dataclass(frozen=True)
class EulerX(OperatorExpr):
    pass


@dataclass(frozen=True)
class DxXPow(OperatorExpr):
    """(d/dx x)^k, acting on x^m as (m + 1)^k for any integer k."""
    k: int


@dataclass(frozen=True)
class Shift(OperatorExpr):
    """e^(hbar x d/dx): x^m -> e^(m hbar) x^m."""


@dataclass(frozen=True)
class DHbar(OperatorExpr):
    pass


@dataclass(frozen=True)
class Scale(OperatorExpr):
    c: Fraction
    op: OperatorExpr


@dataclass(frozen=True)
class Sum(OperatorExpr):
    ops: Tuple[OperatorExpr, ...]


@dataclass(frozen=True)
class Compose(OperatorExpr):
    ops: Tuple[OperatorExpr, ...]   # applied right to left


def apply(op: OperatorExpr, s: XSeries) -> XSeries:
    """Exact action of ``op`` on ``s``; anything pushed above x^M is dropped."""
    if isinstance(op, Identity):
        return s
    if isinstance(op, MulX):
        return XSeries([ZERO] + s.coeffs[:-1])
    if isinstance(op, MulHbarPow):
        return s.map_coeffs(lambda m, c: c.hbar_pow(op.k))
    if isinstance(op, EulerX):
        return s.map_coeffs(lambda m, c: c * m)
    if isinstance(op, DxXPow):
        return s.map_coeffs(lambda m, c: c * Fraction(m + 1) ** op.k)
    if isinstance(op, Shift):
        return s.map_coeffs(lambda m, c: c.exp_shift(m))
    if isinstance(op, DHbar):
        return s.map_coeffs(lambda m, c: c.d_hbar())
    if isinstance(op, Scale):
        return apply(op.op, s).map_coeffs(lambda m, c: c * op.c)
    if isinstance(op, Sum):
        out = XSeries([ZERO], s.M)
        for term in op.ops:
            out = out + apply(term, s)
        return out
    if isinstance(op, Compose):
        for term in reversed(op.ops):
            s = apply(term, s)
        return s
    raise TypeError(f"unknown operator {op!r}")


def _inner_factor(base: BaseCurve) -> OperatorExpr:
    """hbar^w x e^(hbar x d/dx) (d/dx x)^w."""
    w = base.weight
    return Compose((MulHbarPow(w), MulX(), Shift(), DxXPow(w)))


def build_P1(base) -> OperatorExpr:
    """1 - hbar^w x e^(hbar x d/dx) (d/dx x)^w, which sends Z to 1."""
    base = _as_base(base)
    return Identity() - _inner_factor(base)


def build_P(base) -> OperatorExpr:
    base = _as_base(base)
    return Compose((MulHbarPow(1), EulerX(), build_P1(base)))


def build_Q(base) -> OperatorExpr:
    base = _as_base(base)
    w = base.weight
    E = EulerX()
    return Sum((DHbar(),
                Scale(Fraction(-1, 2), Compose((E, E))),
                Scale(Fraction(1, 2), E),
                Scale(Fraction(-w), Compose((MulHbarPow(-1), E)))))


def sphere_P() -> OperatorExpr:
    """hbar x d/dx - x e^(hbar x d/dx), the genus-zero form of P."""
    return Compose((MulHbarPow(1), EulerX())) - Compose((MulX(), Shift()))


# -- partition function --------------------------------------------------------

def closed_form_coefficient(base, m: int) -> ExpLaurent:
    """(m!)^w hbar^(m w) e^(m(m-1)hbar/2)."""
    base = _as_base(base)
    w = base.weight
    return ExpLaurent.monomial(m * w, Fraction(m * (m - 1), 2), Fraction(math.factorial(m)) ** w)


def closed_form_Z(base, M: int) -> XSeries:
    if M < 0:
        raise ValueError("M must be non-negative")
    base = _as_base(base)
    return XSeries([closed_form_coefficient(base, m) for m in range(M + 1)])


def expansion_solution(base, m: int, c=1, window: Tuple[int, int] = (-30, 30)) -> ExpLaurent:
    """Solve f' = (m(m-1)/2 + m w / hbar) f inside the ring.

    Writing ``f = e^(m(m-1)hbar/2) sum_j b_j hbar^j`` the equation reads
    ``(j - m w) b_j = 0`` for every j, so only ``b_(m w)`` survives.  The
    recurrence is solved over ``window`` and ``b_(m w)`` is normalised to ``c``.
    """
    base = _as_base(base)
    w = base.weight
    lo, hi = window
    b = {}
    for j in range(lo, hi + 1):
        # (j - m w) b_j = 0: free exactly when j == m w
        b[j] = Fraction(c) if j == m * w else Fraction(0)
    return ExpLaurent({Fraction(m * (m - 1), 2): b})


@dataclass
class OperatorReport:
    name: str
    base_genus: int
    M: int
    checked_degrees: int
    excluded_layer: Optional[int]
    residuals: List[ExpLaurent] = field(default_factory=list)
    ok: bool = False
    first_failure: Optional[int] = None


def _report(name: str, base: BaseCurve, M: int, residual: XSeries, excluded: Optional[int]) -> OperatorReport:
    top = M - 1 if excluded is not None else M
    residuals = [residual[m] for m in range(top + 1)]
    first = next((m for m, r in enumerate(residuals) if r), None)
    return OperatorReport(name, base.genus, M, top, excluded, residuals, first is None, first)


def _check_M(M: int):
    if M < 1:
        raise ValueError("M must be at least 1")


def pz_report(base, M: int) -> OperatorReport:
    _check_M(M)
    base = _as_base(base)
    residual = apply(build_P(base), closed_form_Z(base, M))
    return _report("PZ", base, M, residual, excluded=M)


def qz_report(base, M: int) -> OperatorReport:
    _check_M(M)
    base = _as_base(base)
    residual = apply(build_Q(base), closed_form_Z(base, M))
    return _report("QZ", base, M, residual, excluded=None)


def p1_report(base, M: int) -> OperatorReport:
    _check_M(M)
    base = _as_base(base)
    image = apply(build_P1(base), closed_form_Z(base, M))
    residual = image - XSeries([ONE], M)
    return _report("P1", base, M, residual, excluded=M)


def verify_PZ(base, M: int) -> bool:
    return pz_report(base, M).ok


def verify_QZ(base, M: int) -> bool:
    return qz_report(base, M).ok


def verify_P1_identity(base, M: int) -> bool:
    return p1_report(base, M).ok


def commutator_residual(base, j: int, a, m: int) -> XSeries:
    """(PQ - QP + P/hbar) applied to hbar^j e^(a hbar) x^m."""
    base = _as_base(base)
    P, Q = build_P(base), build_Q(base)
    s = XSeries.basis(j, a, m, m + 1)
    return (apply(P @ Q, s) - apply(Q @ P, s)
            + apply(Compose((MulHbarPow(-1), P)), s))


def verify_commutator(base, sample: Iterable[Tuple[int, object, int]]) -> bool:
    sample = list(sample)
    if not sample:
        raise ValueError("sample must be non-empty")
    return all(commutator_residual(base, j, a, m).is_zero() for j, a, m in sample)


def commutator_grid(js=(-1, 0, 1, 2), as_=(0, 1, Fraction(3, 2), 3), ms=range(6)):
    return [(j, Fraction(a), m) for j in js for a in as_ for m in ms]


def shift_conjugation_holds(j: int, a, m: int) -> bool:
    """Shift o MulX = e^hbar MulX o Shift on one basis element."""
    s = XSeries.basis(j, a, m, m + 1)
    left = apply(Shift() @ MulX(), s)
    right = apply(MulX() @ Shift(), s).map_coeffs(lambda k, c: c.exp_shift(1))
    return left == right


# -- diagonal partition function ----------------------------------------------

BiCoeffs = Dict[Tuple[int, int], Fraction]


def default_genus_floor(base) -> int:
    return 0 if _as_base(base).genus == 0 else 1


def diagonal_partition_function(base, M: int, K: int, genus_floor: Optional[int] = None,
                                table=None) -> BiCoeffs:
    """exp(sum_{g,n} hbar^(2g-2+n)/n! F_{g,n}(x,...,x)) as {(m, k): coeff}, m <= M, k <= K."""
    base = _as_base(base)
    if M < 0:
        raise ValueError("M must be non-negative")
    if genus_floor is None:
        genus_floor = default_genus_floor(base)
    w = base.weight
    # each x^m piece has hbar powers >= -m, so products need M extra orders
    T = K + M if w < 0 else K
    if table is None:
        # r = 2g - 2 + n - d w
        R = T + M if w < 0 else T
        table = get_table(base, max(M, 1), max(R, 1))
    elif table.degree_bound < M:
        raise InsufficientTableError(f"table degree bound {table.degree_bound} < M = {M}")
    family = FreeEnergyFamily(base, table, degree_bound=max(M, 1))

    # A[m] = Laurent polynomial in hbar multiplying x^m in the exponent
    A: List[Laurent] = [dict() for _ in range(M + 1)]
    for g in range(max(genus_floor, 0), T // 2 + 2):
        for n in range(1, M + 1):
            c = 2 * g - 2 + n
            if c > T:
                continue
            diag = family(g, n).diagonal()
            for m in range(1, min(diag.order, M) + 1):
                if diag[m]:
                    A[m][c] = A[m].get(c, 0) + diag[m] / math.factorial(n)

    def trunc(p: Laurent) -> Laurent:
        return {j: v for j, v in p.items() if j <= T and v}

    # Z_m = (1/m) sum_k k A_k Z_(m-k)
    Z: List[Laurent] = [{0: Fraction(1)}] + [dict() for _ in range(M)]
    for m in range(1, M + 1):
        acc: Laurent = {}
        for k in range(1, m + 1):
            if A[k] and Z[m - k]:
                acc = _laurent_add(acc, trunc(_laurent_mul({j: k * v for j, v in A[k].items()}, Z[m - k])))
        Z[m] = {j: v / m for j, v in acc.items()}
    return {(m, k): v for m in range(M + 1) for k, v in sorted(Z[m].items()) if k <= K and v}


def closed_form_expanded(base, M: int, K: int) -> BiCoeffs:
    out = {}
    for m in range(M + 1):
        for k, v in closed_form_coefficient(base, m).expand(K).items():
            out[(m, k)] = v
    return out


@dataclass
class ZMatchReport:
    base_genus: int
    M: int
    K: int
    genus_floor: int
    ok: bool
    compared: int
    mismatches: List[Tuple[int, int, Fraction, Fraction]] = field(default_factory=list)


def z_match(base, M: int, K: int, genus_floor: Optional[int] = None) -> ZMatchReport:
    base = _as_base(base)
    if genus_floor is None:
        genus_floor = default_genus_floor(base)
    left = diagonal_partition_function(base, M, K, genus_floor)
    right = closed_form_expanded(base, M, K)
    keys = sorted(set(left) | set(right))
    bad = [(m, k, left.get((m, k), Fraction(0)), right.get((m, k), Fraction(0)))
           for m, k in keys if left.get((m, k), 0) != right.get((m, k), 0)]
    return ZMatchReport(base.genus, M, K, genus_floor, not bad, len(keys), bad)


# -- numerical smoke test -------------------------------------------------------

def closed_form_partial_sum(base, M: int, x=1, tau=1j, dps: int = 50):
    """sum_{m <= M} of the closed form at hbar = 2 pi i tau."""
    base = _as_base(base)
    with mpmath.workdps(dps):
        hbar = 2 * mpmath.pi * 1j * mpmath.mpmathify(tau)
        x = mpmath.mpmathify(x)
        return sum(closed_form_coefficient(base, m).evaluate(hbar) * x**m for m in range(M + 1))


def convergence_gap(base, M1: int = 20, M2: int = 25, x=1, tau=1j, dps: int = 50):
    """Relative difference |S_M2 - S_M1| / |S_M2| of the partial sums, as an mpf.

    Zero means the gap is below the working precision of ``dps`` digits.
    """
    with mpmath.workdps(dps):
        a = closed_form_partial_sum(base, M1, x, tau, dps)
        b = closed_form_partial_sum(base, M2, x, tau, dps)
        return abs(b - a) / abs(b)
