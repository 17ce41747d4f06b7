import math
import random

import pytest

from ffzeta.exceptions import (DivisionByZeroError, FieldMismatchError,
                               InvalidInputError)
from ffzeta.services.fields import (FieldSpec, FqElem, ResidueChar, ZpExp,
                                    base_digits, binom_mod_p, char_eval,
                                    embedding, extension, frobenius,
                                    lq_digit_sum)
from ffzeta.services.polyring import APoly


def test_xi_squared_in_f4():
    spec = FieldSpec.default(2, 2)
    xi = spec.element([0, 1])
    assert (xi * xi).coords == [1, 1]


def test_every_nonzero_element_has_an_inverse():
    spec = FieldSpec.default(3, 2)
    for x in spec.elements():
        if x.code:
            assert (x * x.inverse()).code == 1


def test_inverse_of_zero():
    spec = FieldSpec.default(5, 1)
    with pytest.raises(DivisionByZeroError):
        spec.zero().inverse()


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidInputError):
        FieldSpec(2, 2, (1, 0, 1))


def test_composite_characteristic_rejected():
    with pytest.raises(InvalidInputError):
        FieldSpec.default(4, 1)


def test_frobenius_has_order_e():
    spec = FieldSpec.default(2, 3)
    for x in spec.elements():
        assert frobenius(x, 3) == x
        assert x.frobenius(1) == x * x


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatchError):
        FieldSpec.default(2, 2).one() + FieldSpec.default(2, 3).one()


def test_embedding_is_a_ring_map():
    small = FieldSpec.default(2, 2)
    big, emb = extension(small, 2)
    assert big.e == 4
    for a in small.elements():
        for b in small.elements():
            assert emb.element(a * b) == emb.element(a) * emb.element(b)
            assert emb.element(a + b) == emb.element(a) + emb.element(b)


def test_no_embedding_between_incompatible_degrees():
    with pytest.raises(FieldMismatchError):
        embedding(FieldSpec.default(2, 2), FieldSpec.default(2, 3))


def test_digit_helpers():
    assert base_digits(8, 3) == [2, 2]
    assert lq_digit_sum(8, 3) == 4
    assert lq_digit_sum(0, 5) == 0
    assert binom_mod_p(5, 2, 3) == 1
    assert binom_mod_p(4, 2, 2) == 0


def test_zp_exponent_from_negative_integer():
    y = ZpExp.from_int(-1, 2, 4)
    assert y.digits == (1, 1, 1, 1)
    assert y.value == 15
    assert (-y).digits == (1, 0, 0, 0)
    assert (y + ZpExp.from_int(1, 2, 4)).value == 0


def test_zp_exponent_rejects_bad_digits():
    with pytest.raises(InvalidInputError):
        ZpExp(3, (0, 3))


def test_residue_character_at_theta():
    spec = FieldSpec.default(3, 1)
    chi = ResidueChar(APoly.theta(spec), 1)
    assert chi(APoly(spec, (2, 1))) == 2
    assert chi(APoly(spec, (0, 1))) == 0


def test_residue_character_in_an_extension():
    spec = FieldSpec.default(2, 1)
    P = APoly(spec, (1, 1, 1))
    chi = ResidueChar(P, 1)
    assert chi.residue_field.q == 4
    assert chi(P) == 0
    assert char_eval(chi, APoly.one(spec)).code == 1
    beta = FqElem(chi.residue_field, chi.root)
    assert (beta * beta + beta + 1).code == 0


def test_residue_character_needs_irreducible():
    spec = FieldSpec.default(2, 1)
    with pytest.raises(InvalidInputError):
        ResidueChar(APoly(spec, (0, 1, 1)), 1)


def test_base_q_digits_regroup_known_digits():
    y = ZpExp(2, (1, 0, 1, 1, 0))
    assert y.base_q_digits(4) == [1, 3]
    assert y.base_q_digits(2) == [1, 0, 1, 1, 0]
    with pytest.raises(InvalidInputError):
        y.base_q_digits(6)


@pytest.mark.parametrize('p, e', [(2, 3), (3, 2), (5, 2)])
def test_frobenius_is_additive_and_multiplicative(p, e):
    spec = FieldSpec.default(p, e)
    rng = random.Random(p ** e)
    for _ in range(60):
        x = FqElem(spec, rng.randrange(spec.q))
        y = FqElem(spec, rng.randrange(spec.q))
        assert frobenius(x, 1) == x ** p
        for j in range(e + 1):
            assert frobenius(x + y, j) == frobenius(x, j) + frobenius(y, j)
            assert frobenius(x * y, j) == frobenius(x, j) * frobenius(y, j)


@pytest.mark.parametrize('q', [3, 4, 5, 9])
def test_digit_sum_is_congruent_to_n(q):
    for n in range(10 ** 5 + 1):
        assert (lq_digit_sum(n, q) - n) % (q - 1) == 0


@pytest.mark.parametrize('p', [2, 3, 5, 7])
def test_lucas_binomials_match_exact_binomials(p):
    for k in range(201):
        for m in range(201):
            assert binom_mod_p(k, m, p) == math.comb(k, m) % p


@pytest.mark.parametrize('p, P, delta', [
    (3, (1, 0, 1), 1),
    (3, (1, 0, 1), 5),
    (2, (1, 1, 0, 1), 3),
    (5, (2, 1), 2),
])
def test_residue_character_is_multiplicative(p, P, delta):
    spec = FieldSpec.default(p, 1)
    chi = ResidueChar(APoly(spec, P), delta)
    rng = random.Random(delta)
    for _ in range(50):
        a = APoly(spec, [rng.randrange(p) for _ in range(6)])
        b = APoly(spec, [rng.randrange(p) for _ in range(4)])
        assert char_eval(chi, a * b) == char_eval(chi, a) * char_eval(chi, b)
