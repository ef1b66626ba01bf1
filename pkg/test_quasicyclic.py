import random

import pytest

from core.code_ops import (
    LinearCode,
    image,
    is_invariant,
    is_self_dual,
    shift,
    theta_shift,
    weight_enumerator,
)
from core.errors import DomainError, HypothesisError, PreconditionError
from core.gf_core import Automorphism, field_of_order
from core.polyring import Polynomial
from core.quasicyclic import (
    N_formula,
    RhoInputs,
    check_hypotheses,
    crt_decompose,
    decompose_code,
    dual_pairs,
    enumerate_selfdual_qc,
    fold,
    proposition_counts,
    pullback,
    rho_G,
    rho_H,
    selfdual_lines,
    unfold,
)


def poly(spec, values):
    return Polynomial.from_ints(spec, values)


# ================= DECOMPOSITION =================

def test_crt_over_gf4_co_index_3():
    spec = field_of_order(4)
    dec = crt_decompose(spec, 3)
    assert [g.modulus for g in dec.self_reciprocal] == [poly(spec, [1, 1])]
    assert len(dec.pairs) == 1
    h, hs = dec.pairs[0]
    assert {h.modulus, hs.modulus} == {poly(spec, [2, 1]), poly(spec, [3, 1])}
    assert dec.reassemble() == Polynomial.x_n_minus_1(spec, 3)


def test_crt_binary_co_index_3_keeps_quadratic_factor():
    spec = field_of_order(2)
    dec = crt_decompose(spec, 3)
    assert [g.modulus for g in dec.self_reciprocal] == [poly(spec, [1, 1]), poly(spec, [1, 1, 1])]
    assert dec.pairs == ()


def test_crt_even_co_index_starts_with_y_minus_and_plus_one():
    spec = field_of_order(3)
    dec = crt_decompose(spec, 2)
    assert [g.modulus for g in dec.self_reciprocal] == [poly(spec, [2, 1]), poly(spec, [1, 1])]


def test_crt_needs_coprime_co_index():
    with pytest.raises(PreconditionError):
        crt_decompose(4, 6)


def test_idempotents_split_the_ring():
    spec = field_of_order(2)
    dec = crt_decompose(spec, 7)
    ym1 = Polynomial.x_n_minus_1(spec, 7)
    total = Polynomial(spec)
    for ring in dec.rings():
        e = ring.idempotent
        assert (e * e) % ym1 == e
        assert ring.reduce(e) == Polynomial.constant(spec, 1)
        total = total + e
    assert total == Polynomial.constant(spec, 1)


# ================= FOLDING =================

def test_fold_indexing():
    spec = field_of_order(5)
    c = tuple(spec.element(i) for i in (1, 2, 3, 4))
    a, b = fold(c, 2, 2)
    assert a == poly(spec, [1, 3])
    assert b == poly(spec, [2, 4])
    zero = tuple(spec.zero for _ in range(6))
    assert all(comp.is_zero() for comp in fold(zero, 2, 3))
    with pytest.raises(DomainError):
        fold(c, 3, 2)


def test_fold_unfold_round_trip_and_shift():
    rng = random.Random(21)
    spec = field_of_order(4)
    d, m = 3, 5
    ym1 = Polynomial.x_n_minus_1(spec, m)
    y = poly(spec, [0, 1])
    for _ in range(20):
        c = tuple(spec.element(rng.randrange(4)) for _ in range(d * m))
        folded = fold(c, d, m)
        assert unfold(folded, m) == c
        assert fold(shift(c, d), d, m) == tuple((y * comp) % ym1 for comp in folded)


# ================= COUNTS =================

def test_n_formula_values():
    assert N_formula(2, 2) == 5
    assert N_formula(2, 4) == 7
    assert N_formula(3, 2) == 16
    for q in (2, 3, 7):
        assert N_formula(1, q) == 2
    with pytest.raises(PreconditionError):
        N_formula(0, 2)


def test_constituent_counts():
    dec = crt_decompose(4, 5)
    for ring in dec.self_reciprocal[1:]:
        assert len(selfdual_lines(ring)) == 4 ** (ring.degree // 2) + 1
    dec = crt_decompose(2, 7)
    (pair,) = dec.pairs
    assert len(dual_pairs(pair)) == N_formula(2, 8)
    # -1 is a square in GF(5) but not in GF(7)
    assert len(selfdual_lines(crt_decompose(5, 2).self_reciprocal[0])) == 2
    assert len(selfdual_lines(crt_decompose(7, 2).self_reciprocal[0])) == 0


# Self-dual quasi-cyclic codes of index 2 used by the twisted-shift suite:
# 7 + 11 + 25 + 3 + 5 + 9 = 60 codes.
QC_CORPUS = [(4, 3, 7), (2, 7, 11), (4, 5, 25), (2, 3, 3), (2, 5, 5), (8, 3, 9)]


@pytest.mark.parametrize("q, m, expected", QC_CORPUS)
def test_enumerated_qc_codes(q, m, expected):
    codes = enumerate_selfdual_qc(q, m)
    assert len(codes) == expected
    assert len(set(codes)) == expected
    for C in codes:
        assert is_self_dual(C)
        assert is_invariant(C, lambda c: shift(c, 2))


@pytest.mark.parametrize("q, m, expected", QC_CORPUS)
def test_twisted_shift_preserves_self_dual_qc_codes(q, m, expected):
    theta = Automorphism(field_of_order(q), 1)
    for C in enumerate_selfdual_qc(q, m):
        D = image(C, lambda c: theta_shift(c, theta))
        assert is_self_dual(D)
        assert is_invariant(D, lambda c: shift(c, 2))
        assert weight_enumerator(D).to_list() == weight_enumerator(C).to_list()


def test_constituents_reassemble():
    dec = crt_decompose(2, 7)
    for C in enumerate_selfdual_qc(dec, 7):
        assert decompose_code(dec, C, 2).reassemble() == C


def test_pullback_of_single_line():
    spec = field_of_order(4)
    dec = crt_decompose(spec, 3)
    (line,) = selfdual_lines(dec.self_reciprocal[0])
    C = pullback(dec, [(dec.self_reciprocal[0], [line])], 2)
    assert C.k == 1
    assert C == LinearCode.from_rows(spec, 6, [tuple(spec.one for _ in range(6))])


# ================= RHO =================

def test_rho_sums_vanish_for_identity():
    dec = crt_decompose(4, 3)
    assert rho_H(dec, dec.pairs[0], 2) == 0
    dec = crt_decompose(4, 5)
    assert all(rho_G(dec, g, 2) == 0 for g in dec.self_reciprocal[1:])


def test_rho_sums_are_bounded():
    dec = crt_decompose(4, 3)
    assert 0 <= rho_H(dec, dec.pairs[0], 1) <= N_formula(2, 4)
    dec = crt_decompose(4, 5)
    for g in dec.self_reciprocal[1:]:
        assert 0 <= rho_G(dec, g, 1) <= 5


def test_rho_needs_index_two():
    dec = crt_decompose(4, 3)
    with pytest.raises(NotImplementedError):
        rho_H(dec, dec.pairs[0], 1, d=4)


# ================= PROPOSITIONS =================

def test_hypothesis_gates():
    with pytest.raises(HypothesisError) as info:
        check_hypotheses("P6", 7, 2)
    assert "d = 0 (mod 4)" in str(info.value)
    assert check_hypotheses("P7", 5, 2)
    with pytest.raises(HypothesisError):
        check_hypotheses("P7", 7, 2)
    with pytest.raises(HypothesisError):
        check_hypotheses("P5", 4, 4)
    with pytest.raises(HypothesisError):
        check_hypotheses("P5", 3, 5)
    with pytest.raises(HypothesisError):
        check_hypotheses("P9", 5, 4)
    with pytest.raises(PreconditionError):
        check_hypotheses("P11", 5, 4)


def test_p5_report_gf4_co_index_3():
    report = proposition_counts("P5", 4, 3, 1)
    assert report["base_count"] == 7
    assert report["n"] == 6 and report["index"] == 2
    assert report["regime"] == {"gcd_n_theta": 2, "matches_index": True}
    assert report["formula_count"] == 7 - report["rho"]["H"][0]
    assert report["direct_count"] is not None
    assert report["oracle_count"] is not None
    assert report["direct_count"] == report["oracle_count"]
    assert isinstance(report["agree"], bool)


def test_p7_constant():
    report = proposition_counts("P7", 5, 2, 1, oracle=False)
    assert report["formula_count"] == 2 * 6
    assert report["direct_count"] is not None
    assert proposition_counts("P7", 2, 2, 1, oracle=False)["formula_count"] == 3


@pytest.mark.parametrize("case, q, size, r, base", [
    ("P5", 4, 3, 2, 7),
    ("P5", 5, 2, 1, 4),
    ("P6", 5, 2, 1, 4),
    ("P7", 5, 2, 1, 12),
    ("P8", 4, 2, 2, 7),
    ("P9", 3, 4, 1, 4 * 4 * 16 * 28),
    ("P10", 5, 2, 1, 4 * N_formula(2, 5)),
])
def test_identity_collapses_to_base_count(case, q, size, r, base):
    report = proposition_counts(case, q, size, r, oracle=False)
    assert report["theta_order"] == 1
    assert report["base_count"] == base
    assert report["formula_count"] == base
    assert all(v == 0 for v in report["rho"]["G"] + report["rho"]["H"])
    assert not report["rho"].get("HH")


def test_caller_supplied_rho_for_larger_index():
    base = proposition_counts("P6", 5, 4, 1, oracle=False)["formula_count"]
    assert base == 4 * 6 ** 2
    spec_field = field_of_order(25)
    assert Automorphism(spec_field, 1).order == 2
    report = proposition_counts("P6", 25, 4, 1, RhoInputs(G=[3]), oracle=False)
    assert report["formula_count"] == 4 * (25 + 1 - 3) ** 2
    with pytest.raises(PreconditionError):
        proposition_counts("P6", 25, 4, 1, RhoInputs(G=[99]), oracle=False)
