import random

import pytest

from ffzeta.exceptions import BudgetExceededError, InvalidInputError
from ffzeta.services.fields import FieldSpec, FqElem
from ffzeta.services.oracle import (CharsumConfig, TruncatedRing, charsum_trial,
                                    is_zero_value, random_config, threshold_scan)
from ffzeta.services.polyring import APoly

F2 = FieldSpec.default(2, 1)
F3 = FieldSpec.default(3, 1)
F4 = FieldSpec.default(2, 2)


def test_single_linear_form_over_f2():
    cfg = CharsumConfig(2, 1, (((1,),),), ((0,),), F2)
    assert not cfg.predicted_zero
    value = charsum_trial(cfg)
    assert isinstance(value, FqElem)
    assert value.code == 1


def test_linear_form_over_f3_vanishes():
    cfg = CharsumConfig(3, 1, (((1,),),), ((0,),), F3)
    assert cfg.predicted_zero
    assert is_zero_value(charsum_trial(cfg))


def test_truncated_target():
    ring = TruncatedRing(2, 2)
    cfg = CharsumConfig(2, 2, (((1, 0), (0, 1)),), ((0, 0),), ring)
    assert charsum_trial(cfg) == (0, 0)


def test_empty_product_counts_points():
    cfg = CharsumConfig(3, 2, (), (), F3)
    assert charsum_trial(cfg).code == 0
    cfg = CharsumConfig(2, 0, (), (), F2)
    assert charsum_trial(cfg).code == 1


def test_random_configs_vanish_when_predicted():
    rng = random.Random(7)
    for _ in range(20):
        cfg = random_config(rng, 2, 3, 2, target=F4)
        assert cfg.predicted_zero
        assert is_zero_value(charsum_trial(cfg))
    for _ in range(10):
        cfg = random_config(rng, 2, 3, 2, target=TruncatedRing(2, 4), window=2)
        assert is_zero_value(charsum_trial(cfg))


def test_budget_is_enforced():
    cfg = CharsumConfig(2, 5, (), (), F2)
    with pytest.raises(BudgetExceededError):
        charsum_trial(cfg, budget=10)


@pytest.mark.parametrize('maps,offsets', [
    ((((1,),),), ()),
    ((((1, 1),),), ((0,),)),
    ((((2,),),), ((0,),)),
    ((((1,),),), ((0, 0),)),
])
def test_config_shape_errors(maps, offsets):
    with pytest.raises(InvalidInputError):
        CharsumConfig(2, 1, maps, offsets, F2)


def test_target_characteristic_must_match():
    with pytest.raises(InvalidInputError):
        CharsumConfig(3, 1, (), (), F2)
    with pytest.raises(InvalidInputError):
        TruncatedRing(2, 0)


def test_powersum_scan_has_no_violations():
    scan = threshold_scan('powersum', F2, d_max=3, n_max=4)
    assert scan['violations'] == 0
    assert scan['complete']
    assert len(scan['rows']) == 4 * 5
    assert scan['sharp']['0'] == {'observed': 1, 'predicted': 1}


def test_twisted_scan_has_no_violations():
    scan = threshold_scan('twisted', F2, d_max=3, s_max=1)
    assert scan['violations'] == 0
    assert scan['sharp']['0'] == {'observed': 1, 'predicted': 1}


def test_char_scan_has_no_violations():
    P = APoly.theta(F3)
    scan = threshold_scan('char', F3, d_max=3, n_max=2, P=P, delta=1)
    assert scan['violations'] == 0


def test_scan_stops_at_the_budget():
    scan = threshold_scan('twisted', F2, d_max=6, s_max=1, budget=20)
    assert not scan['complete']


def test_scan_argument_errors():
    with pytest.raises(InvalidInputError):
        threshold_scan('char', F2, d_max=2)
    with pytest.raises(InvalidInputError):
        threshold_scan('bogus', F2, d_max=2)


@pytest.mark.parametrize('kind, bounds', [
    ('powersum', {'d_max': -1}),
    ('powersum', {'d_max': 2, 'n_max': -1}),
    ('twisted', {'d_max': 2, 's_max': -1}),
    ('char', {'d_max': 2, 'n_max': -2}),
])
def test_negative_scan_bounds_rejected(kind, bounds):
    with pytest.raises(InvalidInputError):
        threshold_scan(kind, F3, P=APoly.theta(F3), **bounds)
