import random

import pytest

from core.errors import FieldMismatchError, PreconditionError
from core.gf_core import (
    Automorphism,
    FieldSpec,
    apply_automorphism,
    automorphism_order,
    default_field,
    embedding,
    field_arithmetic,
    field_of_order,
    prime_power,
    primitive_nth_root,
)


def test_gf4_generator_satisfies_modulus():
    gf4 = default_field(2, 2)
    a = gf4.gen
    assert a * a == a + 1
    assert a ** 3 == gf4.one
    assert a.multiplicative_order() == 3


def test_field_arithmetic_dispatch():
    gf9 = field_of_order(9)
    a, b = gf9.element(5), gf9.element(7)
    assert field_arithmetic(a, b, "add") == a + b
    assert field_arithmetic(a, b, "sub") == a - b
    assert field_arithmetic(a, b, "mul") == a * b
    assert field_arithmetic(field_arithmetic(a, b, "div"), b, "mul") == a
    assert field_arithmetic(a, 8, "pow") == gf9.one


def test_division_by_zero():
    gf4 = default_field(2, 2)
    with pytest.raises(ZeroDivisionError):
        gf4.one / gf4.zero
    with pytest.raises(ZeroDivisionError):
        gf4.zero.inverse()


def test_mixed_fields_are_refused():
    with pytest.raises(FieldMismatchError):
        default_field(2, 2).one + default_field(2, 3).one
    with pytest.raises(FieldMismatchError):
        field_arithmetic(default_field(3, 1).one, default_field(5, 1).one, "mul")


def test_field_axioms_on_random_elements():
    rng = random.Random(7)
    for q in (4, 8, 9, 25):
        spec = field_of_order(q)
        for _ in range(50):
            a, b, c = (spec.element(rng.randrange(q)) for _ in range(3))
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            if not b.is_zero():
                assert (a / b) * b == a


def test_reducible_or_malformed_modulus():
    with pytest.raises(PreconditionError):
        FieldSpec(2, 2, (1, 0, 1))
    with pytest.raises(PreconditionError):
        FieldSpec(2, 2, (1, 1, 0))
    with pytest.raises(PreconditionError):
        FieldSpec(4, 1, (1, 1))
    with pytest.raises(PreconditionError):
        prime_power(12)


def test_custom_modulus_is_accepted():
    spec = FieldSpec(2, 3, (1, 0, 1, 1))
    assert spec.q == 8
    assert len(set(spec.primitive_element ** k for k in range(7))) == 7


def test_automorphism_order():
    assert automorphism_order(Automorphism(default_field(2, 2), 1)) == 2
    assert automorphism_order(Automorphism(default_field(2, 6), 2)) == 3
    assert Automorphism(default_field(2, 3), 3).is_identity()
    with pytest.raises(PreconditionError):
        Automorphism(default_field(2, 2), 3)


def test_automorphism_is_a_field_map_fixing_the_prime_field():
    rng = random.Random(11)
    spec = field_of_order(16)
    theta = Automorphism(spec, 1)
    for _ in range(40):
        a, b = spec.element(rng.randrange(16)), spec.element(rng.randrange(16))
        assert theta(a + b) == theta(a) + theta(b)
        assert theta(a * b) == theta(a) * theta(b)
    fixed = [a for a in spec.elements() if apply_automorphism(theta, a) == a]
    assert fixed == [spec.zero, spec.one]


def test_automorphism_power_has_order_period():
    spec = field_of_order(8)
    theta = Automorphism(spec, 1)
    a = spec.gen
    assert theta.power(theta.order)(a) == a
    assert theta.power(2)(a) == theta(theta(a))


def test_primitive_nth_root_and_embedding():
    base = field_of_order(4)
    ext, alpha = primitive_nth_root(base, 7)
    assert ext.q == 4 ** 3
    assert alpha.multiplicative_order() == 7
    emb = embedding(base, ext)
    for a in base.elements():
        for b in base.elements():
            assert emb.image(a * b) == emb.image(a) * emb.image(b)
            assert emb.preimage(emb.image(a + b)) == a + b


def test_fields_beyond_sixteen_bits_are_refused():
    with pytest.raises(PreconditionError):
        default_field(2, 17)


PRIME_POWERS_TO_64 = [
    2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32,
    37, 41, 43, 47, 49, 53, 59, 61, 64,
]


def test_nonzero_elements_have_order_dividing_q_minus_1():
    for q in PRIME_POWERS_TO_64:
        spec = field_of_order(q)
        for a in spec.elements():
            if not a.is_zero():
                assert a ** (q - 1) == spec.one, (q, a)


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_every_automorphism_is_additive_and_multiplicative(q):
    spec = field_of_order(q)
    elements = list(spec.elements())
    for r in range(1, spec.m + 1):
        theta = Automorphism(spec, r)
        for a in elements:
            for b in elements:
                assert theta(a + b) == theta(a) + theta(b)
                assert theta(a * b) == theta(a) * theta(b)
