import pytest

from ffzeta.exceptions import InvalidInputError, UnsupportedFeatureError
from ffzeta.services.fields import FieldSpec, lq_digit_sum
from ffzeta.services.mpoly import MPoly, PolyRing
from ffzeta.services.mzv import (MzvIndex, congruence_difference,
                                 diagonal_terms, divisible_by, inverse_power_sum,
                                 mzv_cutoff, mzv_eval_inf, mzv_exact,
                                 mzv_vadic_exact)
from ffzeta.services.polyring import APoly
from ffzeta.services.seriesinf import LaurentSeries

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)
ONE = APoly.one(F2)


def test_strict_and_weak_at_minus_one():
    strict = mzv_exact(F2, MzvIndex((-1, -1), 'strict'))
    weak = mzv_exact(F2, MzvIndex((-1, -1), 'weak'))
    assert strict.vars == ('z1', 'z2')
    assert strict.terms == {(1, 0): ONE}
    assert weak.terms == {(0, 0): ONE, (1, 0): ONE, (1, 1): ONE}


def test_depth_one_is_the_zeta_polynomial():
    poly = mzv_exact(F3, MzvIndex((-2,)))
    assert poly.vars == ('z1',)
    assert poly.terms == {(0,): APoly.one(F3), (1,): APoly.constant(F3, 2)}


def test_weak_is_strict_plus_diagonal():
    for n1 in range(0, -4, -1):
        for n2 in range(0, -4, -1):
            strict = mzv_exact(F2, MzvIndex((n1, n2), 'strict'))
            weak = mzv_exact(F2, MzvIndex((n1, n2), 'weak'))
            assert weak == strict + diagonal_terms(F2, n1, n2)


def test_degree_bound_in_first_variable():
    for n1 in range(0, -10, -1):
        poly = mzv_exact(F3, MzvIndex((n1, -1), 'weak'))
        assert poly.degree('z1') <= lq_digit_sum(-n1, 3) // 2


def test_prime_to_theta_first_factor():
    theta = APoly.theta(F2)
    poly = mzv_vadic_exact(F2, MzvIndex((-1, -1), 'strict', theta))
    assert poly.terms == {(1, 0): APoly(F2, (1, 1)), (2, 0): theta, (2, 1): theta}


def test_congruence_with_positive_exponent():
    for P in (APoly.theta(F2), APoly(F2, (1, 1, 1))):
        for n1 in range(0, -4, -1):
            for n2 in (0, -1, -2):
                for mode in ('strict', 'weak'):
                    diff = congruence_difference(F2, MzvIndex((n1, n2), mode), P)
                    assert divisible_by(diff, P, -n1)


def test_divisible_by():
    theta = APoly.theta(F2)
    poly = MPoly(('z1',), {(1,): theta ** 2}, PolyRing(F2))
    assert divisible_by(poly, theta, 2)
    assert not divisible_by(poly, theta, 3)


def test_mixed_signs_are_unsupported():
    with pytest.raises(UnsupportedFeatureError):
        mzv_exact(F2, MzvIndex((-1, 2)))
    with pytest.raises(InvalidInputError):
        mzv_exact(F2, MzvIndex((1, 2)))


def test_bad_mode_rejected():
    with pytest.raises(InvalidInputError):
        MzvIndex((-1,), 'loose')


def test_cutoff():
    assert mzv_cutoff(2, 1, 20) == 6
    assert mzv_cutoff(2, 5, 10) == 2
    assert mzv_cutoff(3, 1, 3) == 2


def test_depth_two_value_at_infinity():
    N = 10
    value = mzv_eval_inf(F2, MzvIndex((1, 1)), N)
    # only chains (d1, d2) with d1 > d2 and d1 < cutoff contribute
    D = mzv_cutoff(2, 1, N)
    expected = LaurentSeries.zero(F2, N)
    inner = [inverse_power_sum(F2, d, 1, N) for d in range(D)]
    for d1 in range(D):
        for d2 in range(d1):
            expected = expected + inner[d1] * inner[d2]
    assert value.agrees_with(expected, N)


def test_z_points_must_have_norm_at_most_one():
    with pytest.raises(InvalidInputError):
        mzv_eval_inf(F2, MzvIndex((1,)), 8, [LaurentSeries.theta(F2, 8)])


@pytest.mark.parametrize('spec, indices', [
    (F2, (1,)), (F2, (1, 1)), (F2, (2, 1)), (F3, (1,)), (F3, (1, 2)),
])
def test_doubling_precision_keeps_reported_digits(spec, indices):
    for mode in ('strict', 'weak'):
        idx = MzvIndex(indices, mode)
        N = 12
        low = mzv_eval_inf(spec, idx, N)
        high = mzv_eval_inf(spec, idx, 2 * N)
        assert low.prec == N
        assert high.agrees_with(low, N)
