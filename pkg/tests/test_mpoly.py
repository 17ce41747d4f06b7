import pytest

from ffzeta.exceptions import FieldMismatchError, InvalidInputError
from ffzeta.services.fields import FieldSpec
from ffzeta.services.mpoly import LaurentRing, MPoly, PolyRing, univariate
from ffzeta.services.polyring import APoly
from ffzeta.services.seriesinf import LaurentSeries

F2 = FieldSpec.default(2, 1)


def test_unknown_variable_rejected():
    with pytest.raises(InvalidInputError):
        MPoly(('w',), {}, PolyRing(F2))


def test_arithmetic_and_degree():
    ring = PolyRing(F2)
    z1 = MPoly.variable(('z1', 'z2'), ring, 'z1')
    z2 = MPoly.variable(('z1', 'z2'), ring, 'z2')
    f = (z1 + z2) ** 2
    assert f == z1 * z1 + z2 * z2
    assert f.degree('z1') == 2
    assert MPoly.zero(('z',), ring).degree('z') == float('-inf')


def test_substitute_and_eval():
    ring = PolyRing(F2)
    theta = APoly.theta(F2)
    f = univariate('z', [APoly.one(F2), theta], ring)
    assert f.eval({'z': theta}) == APoly(F2, (1, 0, 1))
    assert f.substitute('z', APoly.one(F2)).coefficient(()) == APoly(F2, (1, 1))


def test_json_round_trip():
    ring = PolyRing(F2)
    f = MPoly(('t1', 'z'), {(1, 0): APoly.theta(F2), (0, 2): APoly.one(F2)}, ring)
    doc = f.to_json()
    assert [t['exp'] for t in doc['terms']] == [[0, 2], [1, 0]]
    assert MPoly.from_json(doc, ring) == f


def test_gauss_valuation_over_laurent_coefficients():
    ring = LaurentRing(F2, 10)
    f = MPoly(('z',), {(0,): LaurentSeries.pi(F2, 10),
                       (1,): LaurentSeries(F2, 3, (1,), 10)}, ring)
    assert f.gauss_valuation() == 1


def test_different_rings_do_not_mix():
    a = MPoly.constant(('z',), PolyRing(F2), APoly.one(F2))
    b = MPoly.constant(('z',), PolyRing(FieldSpec.default(3, 1)),
                       APoly.one(FieldSpec.default(3, 1)))
    with pytest.raises(FieldMismatchError):
        a + b
