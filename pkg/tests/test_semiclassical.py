import math
from fractions import Fraction

import pytest

from basehurwitz.semiclassical import (
    S1_of, UnsupportedEulerCharacteristic, back_substitution_residual, lambert_inverse,
    order_two_residual, semiclassical_report, verify_S0_S1,
)
from basehurwitz.series import USeries


def lagrange_coefficient(m):
    # [x^m] y with x = y e^-y: (1/m) [y^(m-1)] e^(m y)
    return Fraction(m ** (m - 1), math.factorial(m - 1)) / m


def test_lambert_coefficients():
    y = lambert_inverse(2, 12)
    assert (y[1], y[2], y[3]) == (1, 1, Fraction(3, 2))
    for m in range(1, 13):
        assert y[m] == lagrange_coefficient(m)


def test_back_substitution():
    assert back_substitution_residual(lambert_inverse(2, 10)).is_zero()


def test_only_the_sphere_is_supported():
    for chi in (0, -2, 1):
        with pytest.raises(UnsupportedEulerCharacteristic):
            lambert_inverse(chi, 5)
        with pytest.raises(UnsupportedEulerCharacteristic):
            verify_S0_S1(chi, 5)


def test_semiclassical_identities():
    rep = semiclassical_report(2, 10)
    assert rep.ok, rep.checks
    assert verify_S0_S1(2, 15)


def test_opposite_log_sign_fails_order_two():
    y = lambert_inverse(2, 8)
    assert not order_two_residual(y, S1_of(y, 2, log_sign=+1)).is_zero()
    assert order_two_residual(y, S1_of(y, 2)).is_zero()
