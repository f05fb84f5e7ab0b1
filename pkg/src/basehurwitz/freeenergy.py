"""Free energies F_{g,n}(x_1, ..., x_n) and the identities they satisfy.

``F_{g,n} = sum_mu H_{g,n}(mu) x^mu`` over ordered vectors ``mu``.  For a
base of genus h >= 1 these are polynomials of degree at most
``(2g - 2 + n)/(2h - 1)``; on the sphere they are power series and every
routine here works with an explicit total-degree bound instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import sympy

from .hurwitz import BaseCurve, HurwitzTable, _as_base, get_table, support_closure
from .partitions import Partition, partitions_up_to
from .series import USeries


class InsufficientTableError(ValueError):
    pass


Exps = Tuple[int, ...]


class Poly:
    """Polynomial in ``nvars`` variables: exponent tuple -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Exps, Fraction]] = None):
        self.nvars = nvars
        self.terms: Dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                self.terms[tuple(e)] = Fraction(c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __repr__(self):
        return f"Poly({self.nvars}, {dict(sorted(self.terms.items()))})"

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.nvars, out)

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: Dict[Exps, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Poly(self.nvars, out)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def layers(self) -> Dict[int, "Poly"]:
        out: Dict[int, dict] = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {k: Poly(self.nvars, t) for k, t in out.items()}

    def truncate(self, max_degree: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.nvars, out)

    def euler(self, i: int) -> "Poly":
        """x_i d/dx_i."""
        return Poly(self.nvars, {e: c * e[i] for e, c in self.terms.items()})

    def total_euler(self) -> "Poly":
        return Poly(self.nvars, {e: c * sum(e) for e, c in self.terms.items()})

    def mul_var(self, i: int, power: int = 1) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] += power
            out[tuple(f)] = c
        return Poly(self.nvars, out)

    def embed(self, positions: Sequence[int], nvars: int) -> "Poly":
        """Rename variable k to ``positions[k]`` inside an ``nvars``-variable ring."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            for k, p in enumerate(positions):
                f[p] += e[k]
            out[tuple(f)] = out.get(tuple(f), 0) + c
        return Poly(nvars, out)

    def merge(self, src: int, dst: int) -> "Poly":
        """Substitute x_src = x_dst (x_src then no longer occurs)."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[dst] += f[src]
            f[src] = 0
            out[tuple(f)] = out.get(tuple(f), 0) + c
        return Poly(self.nvars, out)

    def drop_vars(self, keep: int) -> "Poly":
        """Restrict to the first ``keep`` variables; the rest must be absent."""
        out = {}
        for e, c in self.terms.items():
            if any(e[keep:]):
                raise ValueError("dropped variables still occur")
            out[e[:keep]] = c
        return Poly(keep, out)

    def divide_by_difference(self, i: int, j: int) -> "Poly":
        """Exact quotient by (x_i - x_j); raises if the division leaves a remainder."""
        # synthetic division in x_i with root x_j, coefficients in the other variables
        by_rest: Dict[Exps, Dict[int, Fraction]] = {}
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1:]
            by_rest.setdefault(rest, {})[e[i]] = c
        quotient: Dict[Exps, Fraction] = {}
        remainder = Poly(self.nvars)
        for rest, coeffs in by_rest.items():
            # a(x_i) = sum_k a_k x_i^k ; q_{k-1} = a_k + x_j q_k
            top = max(coeffs)
            carry: Dict[int, Fraction] = {}   # q_k as polynomial in x_j: power -> coeff
            for k in range(top, 0, -1):
                nxt = {p + 1: c for p, c in carry.items()}
                nxt[0] = nxt.get(0, 0) + coeffs.get(k, 0)
                carry = nxt
                for p, c in carry.items():
                    e = list(rest)
                    e[i] = k - 1
                    e[j] += p
                    quotient[tuple(e)] = quotient.get(tuple(e), 0) + c
            rem = {p + 1: c for p, c in carry.items()}
            rem[0] = rem.get(0, 0) + coeffs.get(0, 0)
            for p, c in rem.items():
                e = list(rest)
                e[j] += p
                remainder = remainder + Poly(self.nvars, {tuple(e): c})
        if remainder:
            raise ArithmeticError("polynomial is not divisible by x_i - x_j")
        return Poly(self.nvars, quotient)

    def diagonal(self) -> USeries:
        """Univariate polynomial F(x, ..., x) as a list of coefficients."""
        top = max(self.degree(), 0)
        coeffs = [Fraction(0)] * (top + 1)
        for e, c in self.terms.items():
            coeffs[sum(e)] += c
        return USeries(coeffs)


@dataclass
class FreeEnergy:
    base: BaseCurve
    g: int
    n: int
    poly: Poly
    degree_bound: Optional[int] = None  # None: exact polynomial (h >= 1)

    def coefficient(self, mu: Sequence[int]) -> Fraction:
        return self.poly.terms.get(tuple(mu), Fraction(0))


def complexity(g: int, n: int) -> int:
    return 2 * g - 2 + n


def max_degree(base, g: int, n: int) -> int:
    """Top degree of F_{g,n} for h >= 1."""
    base = _as_base(base)
    return complexity(g, n) // base.weight


def table_bounds(base, g: int, n: int, degree_bound: Optional[int] = None) -> Tuple[int, int]:
    """(D, R) such that a Hurwitz table with these bounds determines F_{g,n}."""
    base = _as_base(base)
    if base.genus == 0:
        if degree_bound is None:
            raise ValueError("the sphere needs an explicit degree bound")
        return degree_bound, complexity(g, n) + degree_bound
    D = max_degree(base, g, n) if degree_bound is None else degree_bound
    return max(D, 1), max(complexity(g, n) - n * base.weight, 0)


def build_free_energy(base, g: int, n: int, degree_bound: Optional[int] = None,
                      table: Optional[HurwitzTable] = None) -> FreeEnergy:
    base = _as_base(base)
    if n < 1:
        raise ValueError("n must be positive")
    D, R = table_bounds(base, g, n, degree_bound)
    if table is None:
        table = get_table(base, D, R)
    elif table.degree_bound < D or table.ramification_bound < R:
        raise InsufficientTableError(
            f"F_({g},{n}) needs a table with D >= {D}, R >= {R}; "
            f"got D = {table.degree_bound}, R = {table.ramification_bound}")
    terms: Dict[Exps, Fraction] = {}
    if g >= 0:
        for d in range(n, D + 1):
            for mu in partitions_up_to(d):
                if mu.size != d or mu.length != n:
                    continue
                value = table.number(g, mu)
                if value:
                    for vec in set(permutations(mu)):
                        terms[vec] = value
    bound = degree_bound if base.genus == 0 else None
    return FreeEnergy(base, g, n, Poly(n, terms), bound)


class FreeEnergyFamily:
    """Lazily built F_{g,n} sharing one Hurwitz table."""

    def __init__(self, base, table: HurwitzTable, degree_bound: Optional[int] = None):
        self.base = _as_base(base)
        self.table = table
        self.degree_bound = degree_bound
        self._cache: Dict[Tuple[int, int], Poly] = {}

    def __call__(self, g: int, n: int) -> Poly:
        if g < 0 or n < 1:
            return Poly(max(n, 0))
        key = (g, n)
        if key not in self._cache:
            if self.base.genus and g == 0:
                self._cache[key] = Poly(n)
            else:
                self._cache[key] = build_free_energy(
                    self.base, g, n, self.degree_bound, self.table).poly
        return self._cache[key]


def pde_sides(base, g: int, n: int, family: FreeEnergyFamily) -> Tuple[Poly, Poly]:
    """Left and right sides of the Laplace-transformed cut-and-join equation."""
    base = _as_base(base)
    w = base.weight
    F = family(g, n)
    lhs = F.scale(complexity(g, n)) - F.total_euler().scale(w)

    rhs = Poly(n)
    # cut terms: 1/2 sum_{i != j} x_i x_j / (x_i - x_j) (d_i F(x_[^j]) - d_j F(x_[^i]))
    lower = family(g, n - 1) if n >= 2 else None
    for i in range(n):
        for j in range(n):
            if i == j or lower is None or not lower:
                continue
            without_j = [k for k in range(n) if k != j]
            without_i = [k for k in range(n) if k != i]
            a = lower.embed(without_j, n).diff(i)
            b = lower.embed(without_i, n).diff(j)
            q = (a - b).divide_by_difference(i, j)
            rhs = rhs + q.mul_var(i).mul_var(j).scale(Fraction(1, 2))
    # join terms, with u1 = x_n and u2 = x_{n+1} as scratch variables
    m = n + 2
    u1, u2 = n, n + 1
    for i in range(n):
        others = [k for k in range(n) if k != i]
        inner = Poly(m)
        genus_drop = family(g - 1, n + 1)
        if genus_drop:
            inner = inner + genus_drop.embed([u1, u2] + others, m).euler(u1).euler(u2)
        for mask in range(1 << len(others)):
            I = [k for pos, k in enumerate(others) if mask >> pos & 1]
            J = [k for pos, k in enumerate(others) if not mask >> pos & 1]
            for g1 in range(g + 1):
                A = family(g1, len(I) + 1)
                B = family(g - g1, len(J) + 1)
                if A and B:
                    inner = inner + (A.embed([u1] + I, m).euler(u1)
                                     * B.embed([u2] + J, m).euler(u2))
        joined = inner.merge(u1, i).merge(u2, i).drop_vars(n)
        rhs = rhs + joined.scale(Fraction(1, 2))
    return lhs, rhs


@dataclass
class PDEReport:
    base_genus: int
    g: int
    n: int
    ok: bool
    layers: Dict[int, bool] = field(default_factory=dict)
    top_degree: Optional[int] = None
    top_layer_annihilated: Optional[bool] = None
    first_failure: Optional[int] = None


def pde_report(base, g: int, n: int, degree_bound: Optional[int] = None,
               table: Optional[HurwitzTable] = None) -> PDEReport:
    """Compare both sides of the PDE homogeneous layer by homogeneous layer."""
    base = _as_base(base)
    if complexity(g, n) <= 0:
        raise ValueError("the PDE is stated for 2g - 2 + n > 0")
    if base.genus == 0 and degree_bound is None:
        raise ValueError("the sphere needs an explicit degree bound")
    if table is None:
        D, R = 0, 0
        for gg in range(g + 1):
            for nn in range(1, n + 2):
                if complexity(gg, nn) <= complexity(g, n):
                    d_, r_ = table_bounds(base, gg, nn, degree_bound)
                    D, R = max(D, d_), max(R, r_)
        table = get_table(base, D, R)
    family = FreeEnergyFamily(base, table, degree_bound)
    lhs, rhs = pde_sides(base, g, n, family)
    if degree_bound is not None:
        lhs, rhs = lhs.truncate(degree_bound), rhs.truncate(degree_bound)
    top = degree_bound if base.genus == 0 else max_degree(base, g, n)
    report = PDEReport(base.genus, g, n, ok=True, top_degree=top)
    L, Rh = lhs.layers(), rhs.layers()
    for k in range(0, top + 1):
        same = L.get(k, Poly(n)) == Rh.get(k, Poly(n))
        report.layers[k] = same
        if not same and report.first_failure is None:
            report.first_failure = k
            report.ok = False
    if base.genus >= 1 and complexity(g, n) % base.weight == 0:
        report.top_layer_annihilated = not L.get(top) and not Rh.get(top)
        report.ok = report.ok and report.top_layer_annihilated
    return report


def verify_pde(base, g: int, n: int, degree_bound: Optional[int] = None) -> bool:
    return pde_report(base, g, n, degree_bound).ok


def pde_coefficient_matches(base, g: int, mu: Sequence[int]) -> bool:
    """Single coefficient x^mu of the PDE, the Laplace image of one cut-and-join instance."""
    base = _as_base(base)
    mu = tuple(mu)
    n, d = len(mu), sum(mu)
    D, R = d, 0
    for gg in range(g + 1):
        for nn in range(1, n + 2):
            if 0 <= complexity(gg, nn) <= complexity(g, n) or (gg, nn) == (0, 1):
                R = max(R, table_bounds(base, gg, nn, d)[1])
    table = get_table(base, D, max(R, 1))
    family = FreeEnergyFamily(base, table, d)
    lhs, rhs = pde_sides(base, g, n, family)
    return lhs.terms.get(mu, 0) == rhs.terms.get(mu, 0)


# -- diagonal series S_m -----------------------------------------------------

def diagonal_S(base, m: int, table: Optional[HurwitzTable] = None) -> USeries:
    """S_m(x) = sum_{2g-2+n = m-1} F_{g,n}(x, ..., x) / n!, for h >= 1 and m >= 2h."""
    base = _as_base(base)
    if base.genus < 1:
        raise ValueError("diagonal S_m is defined here for base genus >= 1")
    if m < 2 * base.genus:
        raise ValueError(f"S_m needs m >= {2 * base.genus}")
    return _diagonal_S(base, m, table)


def _diagonal_S(base: BaseCurve, m: int, table: Optional[HurwitzTable]) -> USeries:
    # below m = 2h the sum is empty or vanishes, which the recursion relies on
    c = m - 1
    if table is None:
        table = get_table(base, max(c // base.weight, 1), max(c, 0))
    family = FreeEnergyFamily(base, table)
    total = USeries.zero(max(c // base.weight, 1))
    for g in range(1, c // 2 + 2):
        n = c - 2 * g + 2
        if n < 1:
            continue
        diag = family(g, n).diagonal()
        total = total + USeries(diag.coeffs, total.order) * Fraction(1, math.factorial(n))
    return total


def S_recursion_sides(base, m: int, table: Optional[HurwitzTable] = None) -> Tuple[USeries, USeries]:
    base = _as_base(base)
    w = base.weight
    if table is None:
        table = get_table(base, max(m // w, 1), m)
    order = max(m // w, 1) + 1
    S = {k: USeries(_diagonal_S(base, k, table).coeffs, order) for k in range(1, m + 2)}
    nxt = S[m + 1]
    lhs = nxt * m - nxt.x_ddx() * w
    # x^2 d^2/dx^2 = (x d/dx)^2 - x d/dx
    second = S[m].x_ddx().x_ddx() - S[m].x_ddx()
    rhs = second * Fraction(1, 2)
    for m1 in range(1, m + 1):
        m2 = m + 1 - m1
        rhs = rhs + S[m1].x_ddx() * S[m2].x_ddx() * Fraction(1, 2)
    return lhs, rhs


def verify_S_recursion(base, m: int) -> bool:
    base = _as_base(base)
    if base.genus < 1:
        raise ValueError("the S_m recursion is stated for base genus >= 1")
    lhs, rhs = S_recursion_sides(base, m)
    return lhs == rhs


# -- elliptic base -------------------------------------------------------------

def divisor_sum(n: int, k: int = 1) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def minus_log_euler_function(N: int) -> USeries:
    phi = USeries([1], N)
    for m in range(1, N + 1):
        factor = [0] * (N + 1)
        factor[0], factor[m] = 1, -1
        phi = phi * USeries(factor)
    return -phi.log()


def _elliptic_unramified_table(g: int, N: int) -> HurwitzTable:
    support = support_closure([[1] * N])
    return HurwitzTable.build(BaseCurve(1), N, 2 * g - 2, support)


def elliptic_F1_series(N: int) -> USeries:
    """sum_n H_{1,n}(1^n)/n! q^n, checked against -log phi(q) and sum_{m|n} 1/m."""
    if N < 1:
        raise ValueError("N must be positive")
    table = _elliptic_unramified_table(1, N)
    coeffs = [Fraction(0)] + [table.number(1, [1] * n) / math.factorial(n) for n in range(1, N + 1)]
    series = USeries(coeffs)
    expected = minus_log_euler_function(N)
    if series != expected:
        raise AssertionError("genus-one elliptic series disagrees with -log phi(q)")
    for n in range(1, N + 1):
        if coeffs[n] != sum(Fraction(1, m) for m in range(1, n + 1) if n % m == 0):
            raise AssertionError(f"coefficient of q^{n} is not sum_(m|n) 1/m")
    return series


def bernoulli(n: int) -> Fraction:
    """Bernoulli numbers with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B[n]


def eisenstein(k: int, N: int) -> USeries:
    """E_k = 1 - (2k/B_k) sum_n sigma_{k-1}(n) q^n."""
    c = -Fraction(2 * k) / bernoulli(k)
    return USeries([1] + [c * divisor_sum(n, k - 1) for n in range(1, N + 1)])


def quasimodular_basis(weight: int) -> List[Tuple[int, int, int]]:
    """Exponents (a, b, c) of E2^a E4^b E6^c with 2a + 4b + 6c = weight."""
    out = []
    for c in range(weight // 6 + 1):
        for b in range((weight - 6 * c) // 4 + 1):
            rest = weight - 6 * c - 4 * b
            if rest % 2 == 0:
                out.append((rest // 2, b, c))
    return sorted(out, reverse=True)


@dataclass
class QuasimodularFit:
    g: int
    N: int
    series: USeries
    basis: List[Tuple[int, int, int]]
    fitted_on: int
    coefficients: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)
    residuals: List[Fraction] = field(default_factory=list)
    ok: bool = False
    diagnostic: str = ""


def elliptic_Fg_series(g: int, N: int, fit_terms: Optional[int] = None) -> QuasimodularFit:
    """F_g(q) = sum_n H_{g,n}(1^n)/n! q^n with a quasimodular fit of weight 6g - 6.

    The fit uses the coefficients of q^0 .. q^(fit_terms - 1) and the
    prediction is compared on the remaining ones up to q^N.
    """
    if g < 2:
        raise ValueError("F_g is quasimodular for g >= 2")
    table = _elliptic_unramified_table(g, N)
    coeffs = [Fraction(0)] + [table.number(g, [1] * n) / math.factorial(n) for n in range(1, N + 1)]
    series = USeries(coeffs)
    basis = quasimodular_basis(6 * g - 6)
    K = len(basis) + 1 if fit_terms is None else fit_terms
    result = QuasimodularFit(g, N, series, basis, K)
    E = {2: eisenstein(2, N), 4: eisenstein(4, N), 6: eisenstein(6, N)}
    columns = []
    for a, b, c in basis:
        f = USeries([1], N)
        for _ in range(a):
            f = f * E[2]
        for _ in range(b):
            f = f * E[4]
        for _ in range(c):
            f = f * E[6]
        columns.append(f)
    A = sympy.Matrix([[sympy.Rational(col[i].numerator, col[i].denominator) for col in columns]
                      for i in range(K)])
    y = sympy.Matrix([sympy.Rational(coeffs[i].numerator, coeffs[i].denominator) for i in range(K)])
    try:
        sol, params = A.gauss_jordan_solve(y)
    except ValueError:
        result.diagnostic = "inconsistent: no quasimodular form of this weight fits the leading coefficients"
        return result
    if params.shape[0]:
        result.diagnostic = "underdetermined: fit the series on more coefficients"
        return result
    fit = [Fraction(int(v.p), int(v.q)) for v in sol]
    result.coefficients = dict(zip(basis, fit))
    predicted = USeries.zero(N)
    for coef, col in zip(fit, columns):
        predicted = predicted + col * coef
    result.residuals = [coeffs[i] - predicted[i] for i in range(N + 1)]
    result.ok = not any(result.residuals)
    if not result.ok:
        first = next(i for i, r in enumerate(result.residuals) if r)
        result.diagnostic = f"prediction fails at q^{first}"
    return result
