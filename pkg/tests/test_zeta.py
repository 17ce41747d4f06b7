import pytest

from ffzeta.exceptions import InvalidInputError, PrecisionError
from ffzeta.services.fields import FieldSpec, ResidueChar, ZpExp, binom_mod_p
from ffzeta.services.mzv import MzvIndex, mzv_eval_inf
from ffzeta.services.polyring import APoly, hyperderivative
from ffzeta.services.seriesinf import LaurentSeries
from ffzeta.services.zeta import (SInftyPoint, TwistFactor, char_power_sum,
                                  exact_L, goss_zeta_eval,
                                  goss_zeta_from_polynomial,
                                  hyperderivative_decay, pellarin_L_series,
                                  power_sum, power_sum_enumerated,
                                  trivial_zero_expected, twisted_L_eval,
                                  twisted_power_sum, vanishing_predicted,
                                  zeta_poly_at)

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)
F4 = FieldSpec.default(2, 2)


def test_power_sum_small_values():
    assert power_sum(F2, 1, 1) == APoly.one(F2)
    assert power_sum(F2, 0, 7) == APoly.one(F2)
    assert power_sum(F3, 1, 2) == APoly.constant(F3, 2)


@pytest.mark.parametrize("spec", [F2, F3, F4])
def test_power_sum_matches_enumeration(spec):
    for d in range(3):
        for n in range(12):
            assert power_sum(spec, d, n) == power_sum_enumerated(spec, d, n)


def test_power_sum_vanishing_bound():
    for spec in (F2, F3):
        for d in range(4):
            for n in range(30):
                if vanishing_predicted(spec.q, d, n):
                    assert power_sum(spec, d, n).is_zero()


def test_negative_exponent_rejected():
    with pytest.raises(InvalidInputError):
        power_sum(F2, 1, -1)


def test_zeta_polynomials_at_negative_integers():
    z1 = exact_L(F2, -1, 0)
    assert z1.vars == ('z',)
    assert z1.terms == {(0,): APoly.one(F2), (1,): APoly.one(F2)}
    z2 = exact_L(F3, -2, 0)
    assert z2.terms == {(0,): APoly.one(F3), (1,): APoly.constant(F3, 2)}


def test_exact_polynomial_has_nothing_past_the_bound():
    poly = exact_L(F3, -5, 1, margin=2)
    bound = (1 + 3) // 2
    assert poly.degree('z') <= bound


def test_trivial_zero_at_z_equal_one():
    for n in range(0, -8, -1):
        for s in range(3):
            if trivial_zero_expected(3, n, s):
                poly = exact_L(F3, n, s)
                assert poly.substitute('z', APoly.one(F3)).is_zero()


def test_twisted_sum_vanishes_past_s_over_q_minus_one():
    factors = [TwistFactor.finite('t1'), TwistFactor.finite('t2')]
    assert twisted_power_sum(F3, 2, factors).is_zero()
    assert not twisted_power_sum(F3, 1, factors).is_zero()


def test_twisted_sum_with_repeated_point():
    factors = [TwistFactor.finite('t1'), TwistFactor.finite('t1')]
    value = twisted_power_sum(F2, 1, factors)
    assert value.vars == ('t1',)


def test_character_sums_at_theta():
    chi1 = ResidueChar(APoly.theta(F3), 1)
    chi2 = ResidueChar(APoly.theta(F3), 2)
    assert char_power_sum(F3, 1, chi1, 0).code == 0
    assert char_power_sum(F3, 1, chi2, 0).code == 2
    assert char_power_sum(F3, 2, chi1, 0).code == 0


def test_infinite_factor_needs_negative_valuation():
    with pytest.raises(InvalidInputError):
        TwistFactor.infinite(LaurentSeries.one(F2, 5), ZpExp.from_int(1, 2, 3))


def test_goss_zeta_at_one_is_the_multiple_zeta_of_depth_one():
    N = 10
    x = LaurentSeries.theta(F2, N)
    value = goss_zeta_eval(SInftyPoint.from_integer(x, 1, 6), N)
    assert value.agrees_with(mzv_eval_inf(F2, MzvIndex((1,)), N), N)


def test_goss_zeta_at_negative_integer_matches_polynomial():
    N = 10
    x = LaurentSeries.theta(F2, N)
    value = goss_zeta_eval(SInftyPoint.from_integer(x, -1, 4), N)
    assert value.agrees_with(goss_zeta_from_polynomial(F2, 1, x, N), N)
    assert [value.coefficient(k) for k in range(4)] == [1, 0, 1, 0]


def test_goss_zeta_needs_enough_digits():
    x = LaurentSeries.theta(F2, 10)
    with pytest.raises(PrecisionError):
        goss_zeta_eval(SInftyPoint.from_integer(x, 1, 2), 10)


def test_pellarin_series_constant_term():
    series = pellarin_L_series(F2, 1, 1, 2, 12)
    # degree 0: a = 1, a(t) = 1
    assert series.coefficient((0, 0)) == LaurentSeries.one(F2, 12)
    assert series.vars == ('t1', 'z')


def test_twisted_eval_without_factors_is_goss_zeta():
    N = 8
    x = LaurentSeries.theta(F2, N)
    y = ZpExp.from_int(-1, 2, 4)
    plain = twisted_L_eval(F2, [], [TwistFactor.infinite(LaurentSeries.theta(F2, N), y)], x, N)
    assert plain.agrees_with(goss_zeta_eval(SInftyPoint(x, y), N), N)


def test_decay_is_attained():
    rows = hyperderivative_decay(F2, 1, 6, 6)
    assert [row['order'] for row in rows] == list(range(7))
    assert rows[-1]['min_valuation'] >= 6


def test_negative_twist_count_rejected():
    with pytest.raises(InvalidInputError):
        pellarin_L_series(F2, 1, -1, 2, 8)
    with pytest.raises(InvalidInputError):
        exact_L(F2, -1, -1)


@pytest.mark.parametrize('spec', [F2, F3])
def test_pellarin_coefficients_have_gauss_valuation_at_least_n_d(spec):
    for n in (1, 2, 3):
        series = pellarin_L_series(spec, n, 1, 4, 16)
        for exp, coeff in series.terms.items():
            assert coeff.val >= n * exp[-1]


def test_pellarin_degree_one_coefficient():
    # 1/theta + 1/(theta + 1) = pi^2 (1 + pi + pi^2 + ...) over F_2
    series = pellarin_L_series(F2, 1, 0, 2, 12)
    assert series.vars == ('z',)
    c = series.coefficient((1,))
    assert c.val == 2
    assert [c.coefficient(k) for k in range(12)] == [0, 0] + [1] * 10


@pytest.mark.parametrize('spec, d', [(F2, 3), (F3, 2), (F4, 2)])
def test_hyperderivative_sums_are_hyperderivatives_of_the_symbolic_sum(spec, d):
    plain = twisted_power_sum(spec, d, [TwistFactor.finite('t1')])
    as_poly = APoly(spec, [plain.coefficient((j,)).code for j in range(d + 1)])
    for m in range(d + 2):
        derived = twisted_power_sum(spec, d, [TwistFactor.finite('t1', 0, m)])
        expected = hyperderivative(as_poly, m)
        for j in range(d + 1):
            assert derived.coefficient((j,)).code == expected.coefficient(j)
            assert expected.coefficient(j) == spec.mul(
                as_poly.coefficient(j + m), binom_mod_p(j + m, m, spec.p))


@pytest.mark.parametrize('spec', [F2, F3])
def test_twisted_eval_with_symbolic_point_matches_the_exact_polynomial(spec):
    N = 12
    x = LaurentSeries.from_apoly(APoly(spec, (1, 1)), N)
    value = twisted_L_eval(spec, [TwistFactor.finite('t1')], [], x, N)
    assert value.vars == ('t1',)
    expected = zeta_poly_at(exact_L(spec, 0, 1), 'z', x.inverse(), N + 4)
    assert value.terms
    for exp in set(value.terms) | set(expected.terms):
        assert value.coefficient(exp).agrees_with(expected.coefficient(exp))


@pytest.mark.parametrize('spec', [F2, F3])
def test_goss_zeta_matches_polynomial_at_several_integers(spec):
    N = 30
    x = LaurentSeries.theta(spec, N)
    digits = 1
    while spec.p ** digits < N:
        digits += 1
    for n in range(0, 7):
        value = goss_zeta_eval(SInftyPoint.from_integer(x, -n, digits + 1), N)
        assert value.agrees_with(goss_zeta_from_polynomial(spec, n, x, N), N)


@pytest.mark.parametrize('spec', [F2, F3])
def test_goss_zeta_at_theta_power_is_the_zeta_value(spec):
    N = 24
    for n in (1, 2, 3):
        x = LaurentSeries(spec, -n, (1,), N)
        value = goss_zeta_eval(SInftyPoint.from_integer(x, n, 6), N)
        assert value.agrees_with(mzv_eval_inf(spec, MzvIndex((n,)), N), N)
