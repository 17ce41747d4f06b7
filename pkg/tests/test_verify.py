import pytest

from ffzeta.exceptions import InvalidInputError
from ffzeta.services import verify_services
from ffzeta.services.verify_services import (CHECKS, FIELD_CHECKS, FULL_GRIDS,
                                             field_from_q, run_check)


def _clean(report, check):
    assert report['check'] == check
    assert report['trials'] == len(report['rows']) > 0
    assert report['violations'] == 0


def test_charsum_small_grid():
    report = verify_services.verify_charsum(seed=3, primes=(2, 3), dim_max=2, trials=3)
    _clean(report, 'charsum')
    assert report['complete']
    assert {row['p'] for row in report['rows']} == {2, 3}


def test_charsum_is_reproducible():
    first = verify_services.verify_charsum(seed=5, primes=(2,), dim_max=2, trials=4)
    second = verify_services.verify_charsum(seed=5, primes=(2,), dim_max=2, trials=4)
    assert first == second


def test_charsum_budget_marks_incomplete():
    report = verify_services.verify_charsum(budget=10, primes=(2,), dim_max=4, trials=3)
    assert not report['complete']
    assert report['violations'] == 0


def test_thresholds_small_grid():
    report = verify_services.verify_thresholds(d_max=3, n_max=8, s_max=2)
    _clean(report, 'thresholds')
    assert {row['kind'] for row in report['rows']} == {'powersum', 'twisted', 'char'}


def test_trivial_zeros():
    report = verify_services.verify_trivial_zeros(fields=((3, 1),), n_min=-4, s_max=1)
    _clean(report, 'trivial-zeros')
    assert any(row['predicted_zero'] for row in report['rows'])


def test_euler():
    report = verify_services.verify_euler(fields=((2, 1),), n_min=-3, dP_max=1,
                                          n_pos=1, D_max=2, N=12)
    _clean(report, 'euler')


def test_interp():
    report = verify_services.verify_interp(fields=((2, 1),), degrees=(1,), k_max=0,
                                           n_range=1, r_max=1)
    _clean(report, 'interp')
    assert all(row['limit_agrees'] for row in report['rows'])


def test_tails():
    report = verify_services.verify_tails(seed=1, fields=((2, 1),), d_max=4, exponents=2)
    _clean(report, 'tails')


def test_congruence():
    report = verify_services.verify_congruence(n_min=-2)
    _clean(report, 'congruence')
    assert report['trials'] == 2 * 2 * 9


def test_decay():
    report = verify_services.verify_decay(s_max=1, max_order=6, N=6)
    _clean(report, 'decay')
    assert report['rows'][0]['reached_at'] is not None


def test_run_check_dispatch():
    assert sorted(CHECKS) == ['charsum', 'congruence', 'cross-path', 'decay', 'euler',
                              'interp', 'tails', 'thresholds', 'trivial-zeros']
    report = run_check('congruence', seed=4, budget=100)
    assert report['seed'] == 4
    with pytest.raises(InvalidInputError):
        run_check('nope')


def test_thresholds_cover_q_four():
    report = verify_services.verify_thresholds(fields=((2, 2),), d_max=2, n_max=None,
                                               s_max=1, twisted_d_max=2)
    _clean(report, 'thresholds')
    assert {row['q'] for row in report['rows']} == {4}
    # n runs up to 3 (q - 1) q^3
    assert max(row['n'] for row in report['rows'] if row['kind'] == 'powersum') == 576


def test_trivial_zeros_over_q_four():
    report = verify_services.verify_trivial_zeros(fields=((2, 2),), n_min=-6, s_max=1)
    _clean(report, 'trivial-zeros')
    assert any(row['predicted_zero'] and row['zero_at_one'] for row in report['rows'])


def test_cross_path():
    report = verify_services.verify_cross_path(fields=((2, 1), (3, 1)), n_max=3,
                                               N=12, k_max=2)
    _clean(report, 'cross-path')
    assert {row['place'] for row in report['rows']} == {'inf', 'P'}
    assert {row['n'] for row in report['rows']} == {0, -1, -2, -3}


def test_full_grids_reach_the_acceptance_bounds():
    assert set(FULL_GRIDS) == set(CHECKS)
    assert FULL_GRIDS['charsum']['dim_max'] == 8
    assert FULL_GRIDS['charsum']['trials'] == 1000
    assert (2, 2) in FULL_GRIDS['thresholds']['fields']
    assert FULL_GRIDS['thresholds']['d_max'] == 6
    assert FULL_GRIDS['trivial-zeros']['n_min'] == -30
    assert FULL_GRIDS['trivial-zeros']['s_max'] == 4
    assert FULL_GRIDS['euler']['dP_max'] == 3
    assert FULL_GRIDS['euler']['D_max'] == 6
    assert FULL_GRIDS['interp']['k_max'] == 3
    assert FULL_GRIDS['cross-path']['n_max'] == 10
    assert FULL_GRIDS['cross-path']['N'] == 60


def test_full_flag_selects_the_acceptance_grid():
    report = run_check('congruence', full=True)
    assert report['grid']['n_min'] == -4
    assert report['trials'] == 2 * 2 * 25


def test_fields_override():
    report = run_check('trivial-zeros', fields=[4])
    assert {row['q'] for row in report['rows']} == {4}
    assert 'congruence' not in FIELD_CHECKS
    assert run_check('congruence', fields=[3])['grid']['q'] == 2


def test_field_from_q():
    assert field_from_q(4) == (2, 2)
    assert field_from_q(9) == (3, 2)
    assert field_from_q(5) == (5, 1)
    for bad in (1, 6, 0):
        with pytest.raises(InvalidInputError):
            field_from_q(bad)
