"""Semi-classical limit on the sphere: the Lambert curve and the first two WKB terms.

Derivatives ``'`` are ``x d/dx`` (that is ``d/du`` with ``x = e^u``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from .series import USeries


class UnsupportedEulerCharacteristic(ValueError):
    pass


def _check_chi(chi: int):
    if chi != 2:
        raise UnsupportedEulerCharacteristic(
            f"the semi-classical analysis is only available for chi = 2, got {chi}")


def lambert_inverse(chi: int = 2, N: int = 10) -> USeries:
    """Power-series solution y(x) of x = y e^(-y) with y(0) = 0, to order N."""
    _check_chi(chi)
    if N < 1:
        raise ValueError("N must be positive")
    # y = x e^y; each pass fixes one more coefficient
    y = USeries.zero(N)
    x = USeries.x(N)
    for _ in range(N):
        y = x * y.exp()
    return y


def lambert_coefficient(m: int) -> Fraction:
    """m^(m-1)/m!, the Lagrange-inversion value."""
    return Fraction(m ** (m - 1), math.factorial(m))


def back_substitution_residual(y: USeries) -> USeries:
    """y e^(-y) - x."""
    return y * (-y).exp() - USeries.x(y.order)


def S0_of(y: USeries, chi: int = 2) -> USeries:
    w = 1 - chi
    return y * y * Fraction(-1, 2) - y * w


def S1_of(y: USeries, chi: int = 2, log_sign: int = -1) -> USeries:
    """-y/2 - log(y - 1)/2 with the constant -log(-1)/2 dropped.

    Integrating dS1/du = (y - y')/(2(y - 1)) with du = (1 - y) dy / y
    gives the minus sign in front of the logarithm.  ``log_sign=+1``
    builds the variant with the opposite sign, which does not solve the
    order-two equation; it is kept so the discrepancy can be shown.
    """
    _check_chi(chi)
    return y * Fraction(-1, 2) + (1 - y).log() * Fraction(log_sign, 2)


def order_two_residual(y: USeries, S1: USeries, chi: int = 2) -> USeries:
    """S0''/2 - S0'/2 + S0' S1' + (1 - chi) S1'."""
    w = 1 - chi
    d0, d1 = S0_of(y, chi).x_ddx(), S1.x_ddx()
    return d0.x_ddx() * Fraction(1, 2) - d0 * Fraction(1, 2) + d0 * d1 + d1 * w


@dataclass
class SemiclassicalReport:
    N: int
    coefficients: Dict[int, Fraction]
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def semiclassical_report(chi: int = 2, N: int = 10) -> SemiclassicalReport:
    _check_chi(chi)
    w = 1 - chi
    y = lambert_inverse(chi, N)
    # derivatives lose nothing: x d/dx keeps the order
    S0, S1 = S0_of(y, chi), S1_of(y, chi)
    d0, d1 = S0.x_ddx(), S1.x_ddx()
    dy = y.x_ddx()
    checks = {
        "coefficients": all(y[m] == lambert_coefficient(m) for m in range(1, N + 1)) and y[0] == 0,
        "back_substitution": back_substitution_residual(y).is_zero(),
        "S0_prime_is_y": d0 == y,
        "order_one": (S0 + y * y * Fraction(1, 2) + y * w).is_zero(),
        "hamilton_jacobi": (S0 + d0 * d0 * Fraction(1, 2) + d0 * w).is_zero(),
        "lambert_ode": (y + (y + w) * dy).is_zero(),
        "order_two": order_two_residual(y, S1, chi).is_zero(),
        # log(1 - y)' = -y'/(1 - y)
        "log_derivative": ((1 - y).log().x_ddx() + dy * (1 - y).inverse()).is_zero(),
        # y (1 - x y^(1-chi) e^y) = y - x e^y for chi = 2
        "total_symbol": (y - USeries.x(N) * y.exp()).is_zero(),
    }
    return SemiclassicalReport(N, {m: y[m] for m in range(N + 1)}, checks)


def verify_S0_S1(chi: int = 2, N: int = 10) -> bool:
    return semiclassical_report(chi, N).ok
