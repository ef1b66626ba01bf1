"""
Quasi-cyclic machinery for the regime gcd(n, |theta|) = d > 1.

A quasi-cyclic code of index d and co-index m is folded into R^d with
R = GF(q)[Y]/(Y^m - 1); the CRT splits R along the irreducible factors of
Y^m - 1 into fields G_i (self-reciprocal g_i) and pairs H'_j, H''_j
(reciprocal pair h_j, h_j*). Self-dual codes of index 2 are assembled from
Hermitian self-dual lines over each G_i and dual pairs over each H'_j + H''_j.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from core.code_ops import LinearCode, is_self_dual, rho
from core.errors import (
    ConsistencyError,
    DomainError,
    GuardExceededError,
    HypothesisError,
    PreconditionError,
)
from core.gf_core import Automorphism, FieldElement, FieldSpec, field_of_order
from core.oracle import DEFAULT_GUARD, enumerate_theta_cyclic_selfdual
from core.polyring import Polynomial, factor_xn_minus_1, poly_xgcd

logger = logging.getLogger(__name__)

CASES = ("P5", "P6", "P7", "P8", "P9", "P10")

# co-index of each case; P5 takes it as its size parameter
CO_INDEX = {"P6": 2, "P7": 3, "P8": 3, "P9": 4, "P10": 4}

IDENTITY_NOTE = (
    "theta is the identity: the regime gcd(n, |theta|) > 1 is empty and every "
    "rho-sum is taken as 0, so the formula reduces to its base count"
)
RHO_DOMAIN_NOTE = (
    "rho-sums run over the constituent codes counted by the base formula "
    "(self-dual lines over G_i, dual pairs over H'_j + H''_j), each pulled back alone"
)

Constituent = Tuple[Polynomial, ...]


# ================= RINGS =================

@dataclass(frozen=True)
class QuotientField:
    """GF(q)[Y]/(f) for an irreducible factor f of Y^m - 1."""

    modulus: Polynomial
    m: int

    @property
    def spec(self) -> FieldSpec:
        return self.modulus.spec

    @property
    def degree(self) -> int:
        return self.modulus.degree

    @property
    def size(self) -> int:
        return self.spec.q ** self.degree

    def reduce(self, a: Polynomial) -> Polynomial:
        return a % self.modulus

    def elements(self) -> List[Polynomial]:
        values = list(self.spec.elements())
        return [Polynomial(self.spec, tuple(c)) for c in itertools.product(values, repeat=self.degree)]

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return (a * b) % self.modulus

    def inverse(self, a: Polynomial) -> Polynomial:
        d, s, _ = poly_xgcd(self.reduce(a), self.modulus)
        if d.degree != 0:
            raise ZeroDivisionError(f"{a} is not invertible modulo {self.modulus}")
        return self.reduce(s)

    def conj(self, a: Polynomial) -> Polynomial:
        """a(Y^-1) = a(Y^(m-1)), read modulo this field's modulus."""
        return self.reduce(a.substitute_power(self.m - 1))

    @cached_property
    def idempotent(self) -> Polynomial:
        """e with e = 1 mod f and e = 0 mod every other factor of Y^m - 1."""
        ym1 = Polynomial.x_n_minus_1(self.spec, self.m)
        cofactor, rem = divmod(ym1, self.modulus)
        if not rem.is_zero():
            raise DomainError(f"{self.modulus} does not divide Y^{self.m} - 1")
        return (cofactor * self.inverse(cofactor)) % ym1

    def lift(self, a: Polynomial) -> Polynomial:
        return (a * self.idempotent) % Polynomial.x_n_minus_1(self.spec, self.m)

    def to_dict(self) -> Dict:
        return {"modulus": self.modulus.to_json(), "text": str(self.modulus), "degree": self.degree}


@dataclass(frozen=True)
class CRTDecomposition:
    spec: FieldSpec
    m: int
    self_reciprocal: Tuple[QuotientField, ...]
    pairs: Tuple[Tuple[QuotientField, QuotientField], ...]

    @property
    def q(self) -> int:
        return self.spec.q

    def rings(self) -> List[QuotientField]:
        return list(self.self_reciprocal) + [h for pair in self.pairs for h in pair]

    @property
    def degrees(self) -> Dict[str, List[int]]:
        return {
            "self_reciprocal": [g.degree for g in self.self_reciprocal],
            "pairs": [h.degree for h, _ in self.pairs],
        }

    def reassemble(self) -> Polynomial:
        result = Polynomial.constant(self.spec, 1)
        for ring in self.rings():
            result = result * ring.modulus
        return result

    def to_dict(self) -> Dict:
        return {
            "q": self.q,
            "m": self.m,
            "self_reciprocal": [g.to_dict() for g in self.self_reciprocal],
            "pairs": [[h.to_dict(), hs.to_dict()] for h, hs in self.pairs],
        }


def crt_decompose(q, m: int) -> CRTDecomposition:
    """Split Y^m - 1; g_1 = Y - 1 comes first and, for m even, g_2 = Y + 1 second."""
    spec = q if isinstance(q, FieldSpec) else field_of_order(q)
    if m < 1 or gcd(m, spec.q) != 1:
        raise PreconditionError(f"co-index m={m} must be positive and coprime to q={spec.q}")
    factorization = factor_xn_minus_1(spec, m)
    reps = list(factorization.structure.self_reciprocal)
    front = [0] + ([m // 2] if m % 2 == 0 else [])
    ordered = front + sorted(s for s in reps if s not in front)
    self_reciprocal = tuple(QuotientField(factorization.factors[s], m) for s in ordered)
    pairs = tuple(
        (QuotientField(factorization.factors[a], m), QuotientField(factorization.factors[b], m))
        for a, b in factorization.structure.pairs
    )
    decomposition = CRTDecomposition(spec, m, self_reciprocal, pairs)
    if decomposition.reassemble() != Polynomial.x_n_minus_1(spec, m):
        raise ConsistencyError(f"CRT factors of Y^{m} - 1 over {spec!r} do not multiply back")
    return decomposition


# ================= FOLDING =================

def fold(c: Sequence[FieldElement], d: int, m: int) -> Tuple[Polynomial, ...]:
    """Coordinate i*d + j becomes the coefficient of Y^i in component j."""
    if len(c) != d * m:
        raise DomainError(f"vector of length {len(c)} cannot be folded as {d} x {m}")
    if not c:
        raise DomainError("empty vector")
    spec = c[0].spec
    return tuple(Polynomial(spec, tuple(c[i * d + j] for i in range(m))) for j in range(d))


def unfold(components: Sequence[Polynomial], m: int) -> Tuple[FieldElement, ...]:
    d = len(components)
    spec = components[0].spec
    out = [spec.zero] * (d * m)
    for j, comp in enumerate(components):
        if comp.degree >= m:
            raise DomainError(f"component of degree {comp.degree} is not reduced modulo Y^{m} - 1")
        for i, c in enumerate(comp.coeffs):
            out[i * d + j] = c
    return tuple(out)


def pullback(decomposition: CRTDecomposition,
             parts: Sequence[Tuple[QuotientField, Sequence[Constituent]]], d: int) -> LinearCode:
    """
    The quasi-cyclic code whose constituent over each listed ring is spanned
    by the given generators; unlisted rings contribute nothing.
    """
    spec, m = decomposition.spec, decomposition.m
    ym1 = Polynomial.x_n_minus_1(spec, m)
    rows = []
    for ring, generators in parts:
        for gen in generators:
            if len(gen) != d:
                raise DomainError(f"constituent generator of length {len(gen)}, expected {d}")
            lifted = tuple(ring.lift(a) for a in gen)
            for k in range(ring.degree):
                rows.append(unfold(tuple(a.shift(k) % ym1 for a in lifted), m))
    return LinearCode.from_rows(spec, d * m, rows)


@dataclass(frozen=True)
class ConstituentProfile:
    decomposition: CRTDecomposition
    d: int
    parts: Tuple[Tuple[QuotientField, Tuple[Constituent, ...]], ...] = field(hash=False)

    def reassemble(self) -> LinearCode:
        return pullback(self.decomposition, self.parts, self.d)


def decompose_code(decomposition: CRTDecomposition, C: LinearCode, d: int) -> ConstituentProfile:
    if C.n != d * decomposition.m:
        raise DomainError(f"length {C.n} is not {d} x {decomposition.m}")
    folded = [fold(row, d, decomposition.m) for row in C.rows]
    parts = []
    for ring in decomposition.rings():
        gens = [tuple(ring.reduce(a) for a in comps) for comps in folded]
        gens = tuple(g for g in gens if any(not a.is_zero() for a in g))
        parts.append((ring, gens))
    return ConstituentProfile(decomposition, d, tuple(parts))


# ================= COUNTS =================

def N_formula(d: int, q: int) -> int:
    """Number of subspaces of GF(q)^d: 1 plus the Gaussian binomials [d, k]_q."""
    if d < 1:
        raise PreconditionError(f"d must be >= 1, got {d}")
    total = 1
    for k in range(1, d + 1):
        num = den = 1
        for i in range(k):
            num *= q ** d - q ** i
            den *= q ** k - q ** i
        if num % den:
            raise ConsistencyError(f"Gaussian binomial [{d},{k}]_{q} is not integral")
        total += num // den
    return total


def selfdual_lines(ring: QuotientField) -> List[Constituent]:
    """Generators (1, a) of the Hermitian self-dual lines over the ring: 1 + a*conj(a) = 0."""
    one = Polynomial.constant(ring.spec, 1)
    found = []
    for a in ring.elements():
        if ring.reduce(one + ring.mul(a, ring.conj(a))).is_zero():
            found.append((one, a))
    return found


def _line_dual(ring: QuotientField, gens: Sequence[Constituent]) -> List[Constituent]:
    one = Polynomial.constant(ring.spec, 1)
    zero = Polynomial(ring.spec)
    if not gens:
        return [(one, zero), (zero, one)]
    if len(gens) == 2:
        return []
    a, b = gens[0]
    if a.is_zero():
        return [(one, zero)]
    return [(ring.reduce(-b), a)]


def dual_pairs(pair: Tuple[QuotientField, QuotientField]) -> List[Tuple[List[Constituent], List[Constituent]]]:
    """Every (C', C'') over H' + H'' with C'' = conj^-1 of the dual of C'; N(2, q^e) of them."""
    h1, h2 = pair
    one = Polynomial.constant(h1.spec, 1)
    zero = Polynomial(h1.spec)
    subspaces = [[], [(one, zero), (zero, one)], [(zero, one)]]
    subspaces += [[(one, a)] for a in h1.elements()]
    out = []
    for gens in subspaces:
        dual = _line_dual(h1, gens)
        partner = [tuple(h2.conj(a) for a in g) for g in dual]
        out.append((gens, partner))
    return out


def _theta(spec: FieldSpec, r: int) -> Automorphism:
    return Automorphism(spec, r)


def rho_G(decomposition: CRTDecomposition, ring: QuotientField, r: int, d: int = 2) -> int:
    if d != 2:
        raise NotImplementedError("rho over G_i is only computed for index d = 2")
    theta = _theta(decomposition.spec, r)
    if theta.is_identity():
        return 0
    return sum(rho(pullback(decomposition, [(ring, [line])], d), theta) for line in selfdual_lines(ring))


def rho_H(decomposition: CRTDecomposition, pair: Tuple[QuotientField, QuotientField], r: int,
          d: int = 2) -> int:
    if d != 2:
        raise NotImplementedError("rho over H'_j + H''_j is only computed for index d = 2")
    theta = _theta(decomposition.spec, r)
    if theta.is_identity():
        return 0
    h1, h2 = pair
    return sum(
        rho(pullback(decomposition, [(h1, c1), (h2, c2)], d), theta)
        for c1, c2 in dual_pairs(pair)
    )


def enumerate_selfdual_qc(q, m: int) -> List[LinearCode]:
    """Every Euclidean self-dual quasi-cyclic code of index 2 and length 2m."""
    decomposition = q if isinstance(q, CRTDecomposition) else crt_decompose(q, m)
    options = []
    for ring in decomposition.self_reciprocal:
        options.append([[(ring, [line])] for line in selfdual_lines(ring)])
    for pair in decomposition.pairs:
        options.append([[(pair[0], c1), (pair[1], c2)] for c1, c2 in dual_pairs(pair)])

    codes = []
    for choice in itertools.product(*options):
        parts = [part for chosen in choice for part in chosen]
        code = pullback(decomposition, parts, 2)
        if not is_self_dual(code):
            raise ConsistencyError(f"assembled code is not self-dual: {code.to_dict()}")
        codes.append(code)
    logger.info("Assembled %d self-dual quasi-cyclic codes of length %d over GF(%d)",
                len(codes), 2 * decomposition.m, decomposition.q)
    return codes


# ================= PROPOSITIONS =================

def _minus_one_is_square(q: int) -> bool:
    return q % 2 == 0 or q % 4 == 1


def check_hypotheses(case: str, q: int, size: int) -> List[Dict]:
    """Evaluate the case's hypotheses; raise HypothesisError naming the first one that fails."""
    if size < (1 if case == "P5" else 2):
        raise PreconditionError(f"{case}: size parameter {size} is too small")
    spec = field_of_order(q)
    checks = []
    if case == "P5":
        m = size
        cond = (q % 2 == 0) or (spec.p % 4 == 1) or (spec.p % 4 == 3 and spec.m % 2 == 0)
        checks.append(("q is a power of 2, or q = p^b with p = 1 mod 4, or q = p^(2b) with p = 3 mod 4", cond))
        checks.append((f"gcd(m, q) = 1 (m={m})", gcd(m, q) == 1))
    elif case in ("P6", "P9", "P10") and q % 2 == 0:
        checks.append(("q must be odd", False))
    elif case == "P6":
        d = size
        if q % 4 == 3:
            checks.append(("q = 3 (mod 4) requires d = 0 (mod 4)", d % 4 == 0))
        else:
            checks.append(("q = 1 (mod 4) requires d even", d % 2 == 0))
    elif case in ("P7", "P8"):
        d = size
        residue, special = (2, 11) if case == "P7" else (1, 7)
        checks.append((f"q = {residue} (mod 3)", q % 3 == residue))
        if q % 12 == special:
            checks.append((f"q = {special} (mod 12) requires d = 0 (mod 4)", d % 4 == 0))
        else:
            checks.append(("d even", d % 2 == 0))
    elif case == "P9":
        checks.append(("-1 is not a square in GF(q)", not _minus_one_is_square(q)))
        checks.append(("d = 0 (mod 4)", size % 4 == 0))
    elif case == "P10":
        checks.append(("-1 is a square in GF(q)", _minus_one_is_square(q)))
        checks.append(("d even", size % 2 == 0))
    else:
        raise PreconditionError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    for condition, holds in checks:
        if not holds:
            raise HypothesisError(case, condition)
    return [{"condition": c, "holds": h} for c, h in checks]


@dataclass
class RhoInputs:
    """Caller-supplied rho values for the terms that are not computed."""

    G: List[int] = field(default_factory=list)
    H: List[int] = field(default_factory=list)
    HH: Optional[int] = None


def _term(values: List[int], i: int) -> int:
    return values[i] if i < len(values) else 0


def _bounded(value: int, top: int, name: str) -> int:
    if not 0 <= value <= top:
        raise PreconditionError(f"{name}={value} must lie in [0, {top}]")
    return top - value


def _linear_count(q: int, m: int) -> int:
    """Leading linear factors (Y - 1, and Y + 1 for q odd, m even) folded into the P5 constant."""
    return 2 if q % 2 and m % 2 == 0 else 1


def _p5_formula(decomposition: CRTDecomposition, rho_g: List[int], rho_h: List[int]) -> Tuple[int, int]:
    q, m = decomposition.q, decomposition.m
    linear = _linear_count(q, m)
    constant = 1 if q % 2 == 0 else 2 ** linear
    count = constant
    for i, ring in enumerate(decomposition.self_reciprocal[linear:]):
        top = q ** (ring.degree // 2) + 1
        count *= _bounded(rho_g[i], top, f"rho_G[{i}]")
    for j, (h, _) in enumerate(decomposition.pairs):
        count *= _bounded(rho_h[j], N_formula(2, q ** h.degree), f"rho_H[{j}]")
    return constant, count


def _product_formula(case: str, q: int, d: int, rho: RhoInputs) -> Tuple[int, int]:
    b = 1 if q % 2 == 0 else 2
    half = d // 2
    count = {"P6": 4, "P7": b * (q + 1), "P8": b, "P9": 4 * (q + 1), "P10": 4}[case]
    constant = count
    for i in range(1, half):
        g = _bounded(_term(rho.G, i - 1), q ** i + 1, f"rho_G[{i - 1}]")
        if case in ("P6", "P9", "P10"):
            count *= g * g
        else:
            count *= g
        if case in ("P7", "P9"):
            count *= _bounded(_term(rho.H, i - 1), q ** (2 * i + 1) + 1, f"rho_H[{i - 1}]")
    if case in ("P8", "P10"):
        count *= _bounded(rho.HH or 0, N_formula(d, q), "rho_HH")
    return constant, count


def proposition_counts(case: str, q: int, size: int, r: int, rho_inputs: Optional[RhoInputs] = None,
                       oracle: bool = True, guard: int = DEFAULT_GUARD, jobs: int = 1) -> Dict:
    """
    Count self-dual theta-cyclic codes through the case's product formula and
    report it beside the base count (all rho = 0) and, where they are
    computable, the direct count over assembled codes and the oracle count.
    """
    hypotheses = check_hypotheses(case, q, size)
    spec = field_of_order(q)
    theta = _theta(spec, r)
    rho_inputs = rho_inputs or RhoInputs()

    if case == "P5":
        d, co_index = 2, size
    else:
        d, co_index = size, CO_INDEX[case]
    n = d * co_index
    notes = [RHO_DOMAIN_NOTE]
    if theta.is_identity():
        notes.append(IDENTITY_NOTE)

    decomposition = crt_decompose(spec, co_index) if d == 2 else None
    rho_values: Dict = {}
    if case == "P5":
        rho_g = [rho_G(decomposition, g, r) for g in decomposition.self_reciprocal[_linear_count(q, co_index):]]
        rho_h = [rho_H(decomposition, pair, r) for pair in decomposition.pairs]
        rho_values = {"G": rho_g, "H": rho_h}
        constant, base = _p5_formula(decomposition, [0] * len(rho_g), [0] * len(rho_h))
        _, formula = _p5_formula(decomposition, rho_g, rho_h)
    else:
        supplied = RhoInputs(list(rho_inputs.G), list(rho_inputs.H), rho_inputs.HH)
        if theta.is_identity():
            supplied = RhoInputs()
        elif d == 2 and case in ("P8", "P10") and supplied.HH is None:
            supplied.HH = rho_H(decomposition, decomposition.pairs[0], r)
        elif d > 2:
            notes.append("rho terms for index d > 2 are caller-supplied; missing ones are taken as 0")
        rho_values = {"G": supplied.G, "H": supplied.H, "HH": supplied.HH or 0}
        constant, base = _product_formula(case, q, d, RhoInputs())
        _, formula = _product_formula(case, q, d, supplied)

    regime = gcd(n, theta.order)
    report = {
        "case": case,
        "q": q,
        "r": r,
        "theta_order": theta.order,
        "n": n,
        "index": d,
        "co_index": co_index,
        "regime": {"gcd_n_theta": regime, "matches_index": regime == d},
        "hypotheses": hypotheses,
        "constant": constant,
        "base_count": base,
        "rho": rho_values,
        "formula_count": formula,
        "direct_count": None,
        "oracle_count": None,
        "agree": None,
        "notes": notes,
    }

    if decomposition is not None:
        codes = enumerate_selfdual_qc(decomposition, co_index)
        if len(codes) != base:
            raise ConsistencyError(f"{len(codes)} assembled codes, base formula gives {base}")
        report["direct_count"] = sum(1 for C in codes if rho(C, theta) == 0)

    if oracle and n % 2 == 0:
        try:
            report["oracle_count"] = len(enumerate_theta_cyclic_selfdual(spec, n, r, guard=guard, jobs=jobs))
        except GuardExceededError as e:
            logger.warning("Oracle skipped: %s", e)
            notes.append(f"oracle skipped: {e}")

    computed = [v for v in (report["direct_count"], report["oracle_count"]) if v is not None]
    if computed:
        report["agree"] = all(v == formula for v in computed)
        if not report["agree"]:
            logger.warning("%s at q=%d, size=%d, r=%d: formula %d vs computed %s",
                           case, q, size, r, formula, computed)
    return report


