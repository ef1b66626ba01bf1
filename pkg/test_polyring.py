import random

import pytest

from core.cosets import cyclotomic_cosets, multiplicative_order
from core.errors import DomainError, FieldMismatchError, PreconditionError
from core.gf_core import Automorphism, field_of_order, primitive_nth_root
from core.polyring import (
    Polynomial,
    factor_xn_minus_1,
    is_self_reciprocal,
    map_automorphism_over_poly,
    minimal_polynomial,
    poly_arith,
    poly_gcd,
    poly_xgcd,
    reciprocal,
)


def random_poly(spec, degree, rng):
    return Polynomial.from_ints(spec, [rng.randrange(spec.q) for _ in range(degree)] + [1])


def test_divmod_reconstructs():
    rng = random.Random(3)
    spec = field_of_order(9)
    for _ in range(30):
        f = random_poly(spec, rng.randrange(1, 9), rng)
        g = random_poly(spec, rng.randrange(0, 5), rng)
        quotient, remainder = divmod(f, g)
        assert quotient * g + remainder == f
        assert remainder.degree < g.degree


def test_division_by_zero_polynomial():
    spec = field_of_order(4)
    with pytest.raises(ZeroDivisionError):
        divmod(Polynomial.constant(spec, 1), Polynomial(spec))


def test_mixed_fields_are_refused():
    with pytest.raises(FieldMismatchError):
        Polynomial.constant(field_of_order(4), 1) + Polynomial.constant(field_of_order(8), 1)


def test_gcd_and_xgcd():
    rng = random.Random(5)
    spec = field_of_order(8)
    for _ in range(20):
        f, g, h = (random_poly(spec, rng.randrange(1, 5), rng) for _ in range(3))
        d, s, t = poly_xgcd(f * h, g * h)
        assert s * (f * h) + t * (g * h) == d
        assert d == poly_gcd(f * h, g * h)
        assert h.divides(d)


def test_poly_arith_dispatch():
    spec = field_of_order(4)
    f = Polynomial.from_ints(spec, [1, 2, 1])
    g = Polynomial.from_ints(spec, [3, 1])
    assert poly_arith(f, g, "add") == f + g
    assert poly_arith(f, g, "divmod") == divmod(f, g)
    with pytest.raises(ZeroDivisionError):
        poly_arith(Polynomial(spec), Polynomial(spec), "gcd")
    with pytest.raises(PreconditionError):
        poly_arith(f, g, "pow")


def test_reciprocal():
    spec = field_of_order(2)
    f = Polynomial.from_ints(spec, [1, 1, 0, 1])  # 1 + x + x^3
    assert reciprocal(f) == Polynomial.from_ints(spec, [1, 0, 1, 1])
    assert is_self_reciprocal(Polynomial.from_ints(spec, [1, 1, 1]))
    with pytest.raises(DomainError):
        reciprocal(Polynomial.from_ints(spec, [0, 1]))
    with pytest.raises(PreconditionError):
        is_self_reciprocal(Polynomial.from_ints(field_of_order(3), [1, 2]))


def test_automorphism_over_coefficients():
    spec = field_of_order(4)
    theta = Automorphism(spec, 1)
    f = Polynomial(spec, (spec.gen, spec.one, spec.gen ** 2))
    mapped = map_automorphism_over_poly(theta, f)
    assert mapped.coeffs == (spec.gen ** 2, spec.one, spec.gen)


@pytest.mark.parametrize("q, n", [(2, 7), (2, 12), (4, 6), (4, 14), (3, 8), (8, 9), (5, 6)])
def test_factorization_multiplies_back(q, n):
    spec = field_of_order(q)
    factorization = factor_xn_minus_1(spec, n)
    assert factorization.product() == Polynomial.x_n_minus_1(spec, n)
    for f in factorization.factors.values():
        assert f.is_monic()


def test_binary_length_7_classification():
    factorization = factor_xn_minus_1(field_of_order(2), 7)
    spec = factorization.spec
    assert [f for f, _ in factorization.self_reciprocal_factors] == [Polynomial.from_ints(spec, [1, 1])]
    (f, _), (h, _) = factorization.reciprocal_pairs[0]
    assert {tuple(c.index for c in f.coeffs), tuple(c.index for c in h.coeffs)} == {(1, 1, 0, 1), (1, 0, 1, 1)}
    assert reciprocal(f) == h


def test_length_6_over_gf4_has_one_pair():
    factorization = factor_xn_minus_1(field_of_order(4), 6)
    assert factorization.multiplicity == 2
    assert len(factorization.reciprocal_pairs) == 1
    assert all(f.degree == 1 for f in factorization.factors.values())
    report = factorization.to_dict()
    assert report["n_tilde"] == 3
    assert len(report["reciprocal_pairs"]) == 1


def test_minimal_polynomial_of_coset_124_over_gf4():
    base = field_of_order(4)
    ext, alpha = primitive_nth_root(base, 7)
    cosets = {c.rep: c for c in cyclotomic_cosets(7, 4)}
    assert cosets[1].elements == (1, 2, 4)
    f = minimal_polynomial(alpha, cosets[1], base)
    g = minimal_polynomial(alpha, cosets[3], base)
    assert f.degree == 3 and f.is_monic()
    # the coset is also a binary coset, so the cubic has GF(2) coefficients
    assert all(c.index in (0, 1) for c in f.coeffs)
    assert {tuple(c.index for c in f.coeffs), tuple(c.index for c in g.coeffs)} == {(1, 1, 0, 1), (1, 0, 1, 1)}
    x_plus_1 = Polynomial.from_ints(base, [1, 1])
    assert x_plus_1 * f * g == Polynomial.x_n_minus_1(base, 7)


@pytest.mark.parametrize("q, n", [(2, 15), (4, 21), (3, 13), (8, 9), (9, 20)])
def test_factors_are_coprime_and_reciprocal_is_an_involution(q, n):
    factors = list(factor_xn_minus_1(field_of_order(q), n).factors.values())
    one = Polynomial.constant(factors[0].spec, 1)
    for i, f in enumerate(factors):
        assert reciprocal(reciprocal(f)) == f
        for g in factors[i + 1:]:
            assert poly_gcd(f, g) == one


def test_automorphism_over_products_of_cubics():
    rng = random.Random(13)
    for q in (4, 8, 9, 16):
        spec = field_of_order(q)
        for r in range(1, spec.m + 1):
            theta = Automorphism(spec, r)
            for _ in range(10):
                f, g = random_poly(spec, 3, rng), random_poly(spec, 3, rng)
                assert map_automorphism_over_poly(theta, f * g) == (
                    map_automorphism_over_poly(theta, f) * map_automorphism_over_poly(theta, g)
                )


@pytest.mark.parametrize("q", [4, 8, 9, 16])
def test_automorphism_permutes_the_factors(q):
    spec = field_of_order(q)
    theta = Automorphism(spec, 1)
    # every n_tilde <= 63 whose splitting field stays at most 2^12 elements
    lengths = [n for n in range(1, 64, 1)
               if n % spec.p and q ** multiplicative_order(n, q) <= 2 ** 12]
    assert lengths
    for n in lengths:
        factors = set(factor_xn_minus_1(spec, n).factors.values())
        assert {map_automorphism_over_poly(theta, f) for f in factors} == factors, n
