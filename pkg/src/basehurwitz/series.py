"""Truncated univariate power series with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List


class USeries:
    """c_0 + c_1 x + ... + c_N x^N, arithmetic truncated at order N."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is not None:
            coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs: List[Fraction] = coeffs

    @classmethod
    def zero(cls, order: int) -> "USeries":
        return cls([0], order)

    @classmethod
    def x(cls, order: int) -> "USeries":
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, USeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c)
        return f"USeries({body or 0}; O(x^{self.order + 1}))"

    def _coerce(self, other) -> "USeries":
        if isinstance(other, USeries):
            return other
        return USeries([other], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        return USeries([self[k] + other[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return USeries([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, USeries):
            c = Fraction(other)
            return USeries([c * a for a in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return USeries(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def x_ddx(self) -> "USeries":
        """Euler derivative x d/dx."""
        return USeries([k * c for k, c in enumerate(self.coeffs)])

    def ddx(self) -> "USeries":
        return USeries([k * self.coeffs[k] for k in range(1, self.order + 1)] + [0])

    def shift_up(self) -> "USeries":
        """Multiply by x (the top coefficient falls off)."""
        return USeries([0] + self.coeffs[:-1])

    def exp(self) -> "USeries":
        if self[0]:
            raise ValueError("exp needs zero constant term")
        # E(F) = E(f) F with E = x d/dx
        ef = self.x_ddx().coeffs
        out = [Fraction(1)] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            out[n] = sum(ef[k] * out[n - k] for k in range(1, n + 1)) / n
        return USeries(out)

    def log(self) -> "USeries":
        if self[0] != 1:
            raise ValueError("log needs constant term 1")
        # E(L) * f = E(f)
        f = self.coeffs
        ef = self.x_ddx().coeffs
        el = [Fraction(0)] * (self.order + 1)
        for n in range(1, self.order + 1):
            el[n] = ef[n] - sum(el[k] * f[n - k] for k in range(1, n))
        return USeries([0] + [el[n] / n for n in range(1, self.order + 1)])

    def inverse(self) -> "USeries":
        if not self[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out = [1 / self[0]] + [Fraction(0)] * self.order
        for n in range(1, self.order + 1):
            out[n] = -sum(self[k] * out[n - k] for k in range(1, n + 1)) / self[0]
        return USeries(out)

    def compose(self, inner: "USeries") -> "USeries":
        """self(inner(x)); ``inner`` must have zero constant term."""
        if inner[0]:
            raise ValueError("inner series must vanish at 0")
        out = USeries.zero(self.order)
        power = USeries([1], self.order)
        for c in self.coeffs:
            if c:
                out = out + power * c
            power = power * inner
        return out

