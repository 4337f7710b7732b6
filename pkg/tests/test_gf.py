import pytest
from hypothesis import given, strategies as st

from borelinv.gf import (DivisionByZero, FieldMismatch, FieldTooLarge, NotPrime, field_new,
                         is_irreducible, is_prime, parse_field, power, primitive_element)

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)]


@st.composite
def field_and_elems(draw, k=3):
    p, e = draw(st.sampled_from(FIELDS))
    F = field_new(p, e)
    return (F,) + tuple(draw(st.integers(0, F.q - 1)) for _ in range(k))


@given(field_and_elems())
def test_ring_axioms(data):
    F, a, b, c = data
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a


@given(field_and_elems(1))
def test_inverse(data):
    F, a = data
    if a == 0:
        with pytest.raises(DivisionByZero):
            F.inv(a)
    else:
        assert F.mul(a, F.inv(a)) == 1


@given(field_and_elems(2))
def test_frobenius_is_additive_and_periodic(data):
    F, a, b = data
    fr = lambda x: F.pow(x, F.p)
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert F.pow(a, F.q) == a


@pytest.mark.parametrize("p,e", FIELDS)
def test_primitive_generates(p, e):
    F = field_new(p, e)
    g = F.primitive()
    assert F.mult_order(g) == F.q - 1
    assert len({F.pow(g, k) for k in range(F.q - 1)}) == F.q - 1


def test_coefficients_round_trip(F4):
    for a in F4.elements():
        assert F4.from_coeffs(F4.to_coeffs(a)) == a
    assert len(F4.to_coeffs(3)) == 2


def test_parse_field_forms():
    assert parse_field("2^2") is field_new(2, 2)
    assert parse_field("3").q == 3
    assert parse_field("4").q == 4
    with pytest.raises(NotPrime):
        parse_field("6")
    with pytest.raises(NotPrime):
        field_new(4, 1)


def test_field_size_bound():
    with pytest.raises(FieldTooLarge):
        field_new(2, 40)


def test_modulus_is_irreducible():
    for p, e in FIELDS:
        F = field_new(p, e)
        if e > 1:
            assert is_irreducible(F.modulus, p)
    assert is_prime(7) and not is_prime(1) and not is_prime(9)


def test_elem_wrapper(F4):
    g = primitive_element(F4)
    assert power(g, 3).value == 1
    assert (g * g.inv()).value == 1
    with pytest.raises(FieldMismatch):
        g + field_new(3).elem(1)
