import random

import pytest

from ffzeta.exceptions import DivisionByZeroError, UnsupportedFeatureError
from ffzeta.services.fields import FieldSpec, ZpExp
from ffzeta.services.polyring import APoly
from ffzeta.services.seriesinf import (LaurentSeries, bracket, decompose,
                                       inverse_power, is_one_unit,
                                       one_unit_pow)

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)


def test_inverse_of_theta_squared_plus_theta():
    x = LaurentSeries.from_apoly(APoly(F2, (0, 1, 1)), 10)
    inv = x.inverse()
    assert inv.val == 2
    assert inv.prec == 14
    assert all(c == 1 for c in inv.coeffs)


def test_decompose():
    x = LaurentSeries.from_apoly(APoly(F2, (1, 1, 1)), 10)
    degree, sgn, unit = decompose(x)
    assert degree == 2
    assert sgn.code == 1
    assert unit.coeffs[:3] == (1, 1, 1)
    assert not any(unit.coeffs[3:])
    assert is_one_unit(unit)


def test_decompose_keeps_the_sign():
    x = LaurentSeries.from_apoly(APoly(F3, (1, 0, 2)), 8)
    degree, sgn, unit = decompose(x)
    assert (degree, sgn.code) == (2, 2)
    assert unit.coefficient(0) == 1


def test_zero_series_has_no_inverse():
    with pytest.raises(DivisionByZeroError):
        LaurentSeries.zero(F2, 5).inverse()


def test_fractional_pi_power():
    with pytest.raises(UnsupportedFeatureError):
        LaurentSeries.pi_power(F2, 0.5, 10)


def test_product_with_inverse_is_one():
    a = LaurentSeries.from_apoly(APoly(F3, (2, 1, 0, 1)), 12)
    assert (a * a.inverse()).agrees_with(LaurentSeries.one(F3, 12), 12)


def test_inverse_power_matches_series_power():
    a = APoly(F3, (1, 2, 1))
    direct = inverse_power(a, 3, 15)
    by_series = LaurentSeries.from_apoly(a, 15).inverse() ** 3
    assert direct.agrees_with(by_series, 15)


def test_one_unit_power_by_integer_digits():
    u = bracket(APoly(F3, (1, 1)), 12)
    y = ZpExp.from_int(5, 3, 3)
    assert one_unit_pow(u, y).agrees_with(u ** 5, 12)


def test_one_unit_power_by_negative_exponent():
    u = bracket(APoly(F2, (1, 0, 1)), 16)
    y = ZpExp.from_int(-1, 2, 5)
    assert (one_unit_pow(u, y) * u).agrees_with(LaurentSeries.one(F2, 16), 16)


def test_power_p_is_frobenius_on_series():
    u = bracket(APoly(F3, (2, 1, 1)), 18)
    assert u.power_p(1).agrees_with(u ** 3, 18)


def _random_nonzero(spec, rng, degree):
    coeffs = [rng.randrange(spec.q) for _ in range(degree)] + [rng.randrange(1, spec.q)]
    return APoly(spec, coeffs)


@pytest.mark.parametrize('spec, digits', [(F2, 5), (F3, 3)])
def test_one_unit_power_laws(spec, digits):
    prec = 20
    p = spec.p
    rng = random.Random(prec + p)
    for _ in range(8):
        u = bracket(_random_nonzero(spec, rng, 4), prec)
        v = bracket(_random_nonzero(spec, rng, 3), prec)
        y = ZpExp(p, tuple(rng.randrange(p) for _ in range(digits)))
        z = ZpExp(p, tuple(rng.randrange(p) for _ in range(digits)))
        assert one_unit_pow(u, y + z).agrees_with(one_unit_pow(u, y) * one_unit_pow(u, z))
        assert one_unit_pow(u * v, y).agrees_with(one_unit_pow(u, y) * one_unit_pow(v, y))


@pytest.mark.parametrize('spec', [F2, F3, FieldSpec.default(2, 2)])
def test_decompose_is_multiplicative(spec):
    rng = random.Random(spec.q)
    for _ in range(10):
        x = LaurentSeries.from_apoly(_random_nonzero(spec, rng, 3), 12)
        y = LaurentSeries.from_apoly(_random_nonzero(spec, rng, 2), 12).inverse()
        dx, sx, ux = decompose(x)
        dy, sy, uy = decompose(y)
        d, s, u = decompose(x * y)
        assert d == dx + dy
        assert s == sx * sy
        assert u.agrees_with(ux * uy)
        assert is_one_unit(u)
