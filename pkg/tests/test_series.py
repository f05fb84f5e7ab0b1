import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from basehurwitz.series import USeries

coeffs = st.lists(st.fractions(max_denominator=7), min_size=1, max_size=8)


def test_exp_of_x_is_taylor_series():
    e = USeries.x(6).exp()
    assert e.coeffs == [Fraction(1, math.factorial(k)) for k in range(7)]


@settings(max_examples=50, deadline=None)
@given(coeffs)
def test_log_exp_inverse(c):
    f = USeries([0] + c)
    assert f.exp().log() == f


@settings(max_examples=50, deadline=None)
@given(coeffs, coeffs)
def test_multiplicative_inverse(a, b):
    f = USeries([1] + a, 6)
    assert (f * f.inverse()) == USeries([1], 6)


def test_compose_with_inverse_function():
    # log(1 + x) composed with e^x - 1 gives x
    x = USeries.x(7)
    log1p = (1 + x).log()
    expm1 = x.exp() - 1
    assert log1p.compose(expm1) == x


def test_constant_term_guards():
    with pytest.raises(ValueError):
        USeries([1, 1]).exp()
    with pytest.raises(ValueError):
        USeries([2, 1]).log()
    with pytest.raises(ZeroDivisionError):
        USeries([0, 1]).inverse()
