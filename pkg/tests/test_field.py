from fractions import Fraction
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from lattgen import ALEPH0, GF, QQ, parse_field
from lattgen.field import (Cardinal, DivisionByZero, FieldElement, FieldError, FieldMismatch,
                           default_modulus,
                           field_generating_data, generated_subfield, is_irreducible, prime_power)

from oracles import poly_field_mul

FINITE = [GF(2), GF(3), GF(5), GF(7), GF(2, 2), GF(3, 2), GF(2, 3), GF(2, 4)]


def _digits(code, p, n):
    return [(code // p**i) % p for i in range(n)]


@pytest.mark.parametrize("F", FINITE, ids=str)
def test_multiplication_matches_polynomial_oracle(F):
    p, n = F.p, F.n
    mod = list(F.modulus) if n > 1 else [0, 1]
    for a, b in itertools.product(F.raw_elements(), repeat=2):
        got = _digits(F.mul(a, b), p, n)
        if n == 1:
            assert got == [(a * b) % p]
        else:
            assert got == poly_field_mul(_digits(a, p, n), _digits(b, p, n), mod, p)


@pytest.mark.parametrize("F", FINITE, ids=str)
def test_multiplicative_group_is_cyclic(F):
    q = F.order
    orders = []
    for a in F.raw_elements()[1:]:
        x, k = a, 1
        while x != F.one:
            x, k = F.mul(x, a), k + 1
        orders.append(k)
    assert max(orders) == q - 1
    assert all((q - 1) % k == 0 for k in orders)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), F=st.sampled_from(FINITE))
def test_field_axioms(data, F):
    el = st.sampled_from(F.raw_elements())
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert F.add(a, F.add(b, c)) == F.add(F.add(a, b), c)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.sub(F.add(a, b), b) == a
    if a != F.zero:
        assert F.mul(a, F.inv(a)) == F.one
        assert F.mul(F.div(b, a), a) == b


@settings(max_examples=40, deadline=None)
@given(a=st.fractions(), b=st.fractions())
def test_rationals_round_trip(a, b):
    x, y = QQ(a), QQ(b)
    assert (x + y) - y == x
    assert QQ.parse_raw(QQ.format_raw(x.value)) == x.value
    if b:
        assert (x / y) * y == x


def test_element_syntax():
    F = GF(2, 2)
    assert [F.format_raw(v) for v in F.raw_elements()] == ["0", "1", "w", "w+1"]
    assert F("w") * F("w") == F("w+1")
    assert F.parse_raw(F.format_raw(F.raw("w+1"))) == F.raw("w+1")
    assert QQ("2/5") * QQ(5) == QQ(2)
    assert GF(7)(-1) == GF(7)(6)


def test_field_specs():
    assert parse_field("2").spec() == "2"
    assert parse_field("Q") == QQ
    assert parse_field("2^2") == GF(2, 2)
    K = parse_field("3^2:1,0,1")  # x^2 + 1, irreducible mod 3
    assert K.order == 9 and K.spec() == "3^2"
    with pytest.raises(FieldError):
        parse_field("6")
    with pytest.raises(FieldError):
        parse_field("3^2:2,0,1")  # x^2 + 2 = (x-1)(x+1) mod 3


def test_irreducibility_against_root_search():
    # degree 2 and 3 are irreducible exactly when they have no root
    for p in (2, 3, 5):
        for deg in (2, 3):
            for low in itertools.product(range(p), repeat=deg):
                coeffs = list(low) + [1]
                has_root = any(sum(c * x**i for i, c in enumerate(coeffs)) % p == 0 for x in range(p))
                assert is_irreducible(coeffs, p) == (not has_root)
    assert tuple(default_modulus(2, 2)) == (1, 1, 1)


def test_errors():
    F = GF(2, 2)
    with pytest.raises(DivisionByZero):
        F.inv(F.zero)
    with pytest.raises(FieldMismatch):
        F.raw(GF(2)(1))
    with pytest.raises(FieldError):
        F.parse_raw("")


def test_prime_power():
    assert prime_power(9) == (3, 2)
    assert prime_power(16) == (2, 4)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_generating_data_and_subfields():
    t, gens = field_generating_data(GF(2, 2))
    assert int(t) == 1 and len(generated_subfield(GF(2, 2), gens)) == 4
    assert int(field_generating_data(GF(5))[0]) == 0
    assert int(field_generating_data(QQ)[0]) == 0
    K = GF(2, 4)
    # the subfield GF(4) of GF(16) is the fixed field of x -> x^4
    sub4 = [a for a in K.raw_elements() if K.power(a, 4) == a]
    assert len(sub4) == 4
    assert generated_subfield(K, [K("0")]) == {K.zero, K.one}
    assert generated_subfield(K, [FieldElement(K, sub4[2])]) == set(sub4)
    assert len(generated_subfield(K, [FieldElement(K, 2)])) == 16


def test_cardinals():
    assert Cardinal(7).ceil_div(2) == Cardinal(4)
    assert ALEPH0.ceil_div(2) == ALEPH0
    assert str(ALEPH0) == "aleph0" and ALEPH0.to_json() == "aleph0"
    assert not ALEPH0.is_finite and Cardinal(0).is_finite


def test_rational_inputs_coerce_into_prime_fields():
    assert GF(5).raw(Fraction(1, 2)) == 3
