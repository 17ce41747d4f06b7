import pytest

from ffzeta.exceptions import InvalidInputError, PrecisionError
from ffzeta.services.fields import FieldSpec, ZpExp
from ffzeta.services.padic import PadicCtx
from ffzeta.services.polyring import APoly
from ffzeta.services.vadic import (VadicPoint, euler_coefficient_identity,
                                   euler_product, interpolation_gap,
                                   mk_sequence, power_sum_valuation,
                                   vadic_cutoff, vadic_exact_L,
                                   vadic_zeta_eval)
from ffzeta.services.zeta import power_sum

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)
THETA = APoly.theta(F2)


def test_prime_to_theta_zeta_polynomial():
    poly = vadic_exact_L(F2, -1, 0, THETA)
    assert poly.terms == {(0,): APoly.one(F2), (1,): APoly(F2, (1, 1)),
                          (2,): THETA}


def test_prime_to_theta_at_zero():
    poly = vadic_exact_L(F2, 0, 0, THETA)
    assert poly.terms == {(0,): APoly.one(F2), (1,): APoly.one(F2)}


@pytest.mark.parametrize("P", [THETA, APoly(F2, (1, 1, 1))])
def test_euler_factor_for_non_positive_n(P):
    for n in range(0, -6, -1):
        assert vadic_exact_L(F2, n, 0, P, margin=1) == euler_product(F2, n, P)


def test_euler_factor_for_positive_n():
    for D in range(4):
        lhs, rhs = euler_coefficient_identity(F3, 1, APoly.theta(F3), D, 20)
        assert lhs.agrees_with(rhs, 20)


def test_reducible_prime_rejected():
    with pytest.raises(InvalidInputError):
        vadic_exact_L(F2, -1, 0, APoly(F2, (0, 1, 1)))


def test_vadic_evaluation_at_integer_matches_exact_polynomial():
    k = 3
    ctx = PadicCtx(THETA, k)
    y = ZpExp.from_int(1, 2, 3)
    # y = -1 and delta = 1 mod 1: the coefficients are the prime-to-theta sums of a^1
    value = vadic_zeta_eval(VadicPoint(ctx, y, 1))
    exact = vadic_exact_L(F2, -1, 0, THETA)
    for d in range(vadic_cutoff(ctx) + 1):
        assert value.coefficient((d,)) == ctx.element(exact.coefficient((d,)))


def test_vadic_point_needs_enough_digits():
    ctx = PadicCtx(THETA, 5)
    with pytest.raises(PrecisionError):
        VadicPoint(ctx, ZpExp.from_int(1, 2, 2), 0)


def test_mk_for_zero():
    result = mk_sequence(0, 0, 1, 2)
    assert result.m_k == -2
    assert all(result.checks.values())


def test_mk_narrow_digit_bound_can_fail():
    result = mk_sequence(-1, 0, 1, 2)
    assert result.m_k == -3
    assert result.checks['digit_sum']
    assert not result.narrow_digit_bound


def test_mk_from_digits_agrees_with_integer():
    by_digits = mk_sequence(ZpExp.from_int(5, 3, 4), 2, 1, 3)
    assert by_digits.m_k == mk_sequence(-5, 2, 1, 3).m_k


def test_mk_congruences():
    q, dP = 3, 2
    for n1 in range(-10, 4):
        for k in range(3):
            result = mk_sequence(n1, k, dP, q)
            assert result.m_k <= 0
            assert (-result.m_k + n1) % q ** (k + 1) == 0
            assert all(result.checks.values())


def test_interpolation_gap_single_index():
    gap = interpolation_gap(F2, (-1,), THETA, 0)
    assert gap.m_k == -3
    assert gap.bound == 2
    assert gap.measured == 2
    assert gap.holds


def test_interpolation_gap_two_indices():
    gap = interpolation_gap(F2, (-1, -1), THETA, 0)
    assert gap.bound == 1
    assert gap.holds


def test_power_sum_valuation_for_non_positive_n():
    assert power_sum_valuation(F2, 2, -3, THETA, 5) == 1
    assert power_sum_valuation(F2, 2, -1, THETA, 5) is None
    assert power_sum(F2, 2, 3) == APoly(F2, (0, 1, 1))


def test_negative_twist_count_rejected():
    ctx = PadicCtx(THETA, 3)
    with pytest.raises(InvalidInputError):
        vadic_exact_L(F2, -1, -1, THETA)
    with pytest.raises(InvalidInputError):
        vadic_cutoff(ctx, -1)
    with pytest.raises(InvalidInputError):
        vadic_zeta_eval(VadicPoint(ctx, ZpExp.from_int(1, 2, 2), 1), -1)
