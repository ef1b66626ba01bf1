"""
Polynomials over GF(q): ring arithmetic, reciprocals, minimal polynomials and
the factorization of x^n - 1 into self-reciprocal factors and reciprocal pairs.

Coefficients are stored densely, lowest degree first. Every factor is monic,
so the unit in x^n - 1 = delta * g_1 * ... is always 1.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

from core.cosets import CosetStructure, CyclotomicCoset, reciprocal_structure
from core.errors import (
    ConsistencyError,
    DomainError,
    FieldMismatchError,
    PreconditionError,
)
from core.gf_core import (
    Automorphism,
    FieldElement,
    FieldSpec,
    embedding,
    primitive_nth_root,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polynomial:
    spec: FieldSpec
    coeffs: Tuple[FieldElement, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coeffs)
        for c in coeffs:
            if c.spec != self.spec:
                raise FieldMismatchError(f"coefficient {c!r} is not in {self.spec!r}")
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    # ----- constructors -----

    @classmethod
    def from_ints(cls, spec: FieldSpec, values: Sequence[int]) -> "Polynomial":
        """Coefficients given as element indices, lowest degree first."""
        return cls(spec, tuple(spec.element(v) for v in values))

    @classmethod
    def constant(cls, spec: FieldSpec, c: Union[FieldElement, int]) -> "Polynomial":
        if isinstance(c, int):
            c = spec.scalar(c)
        return cls(spec, (c,))

    @classmethod
    def monomial(cls, spec: FieldSpec, k: int, c: Union[FieldElement, int] = 1) -> "Polynomial":
        if isinstance(c, int):
            c = spec.scalar(c)
        return cls(spec, (spec.zero,) * k + (c,))

    @classmethod
    def x_n_minus_1(cls, spec: FieldSpec, n: int) -> "Polynomial":
        return cls.monomial(spec, n) - cls.constant(spec, 1)

    # ----- basic properties -----

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> FieldElement:
        if self.is_zero():
            return self.spec.zero
        return self.coeffs[-1]

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.spec.zero

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading == self.spec.one

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(self.leading.inverse())

    def to_vector(self, n: int) -> Tuple[FieldElement, ...]:
        if self.degree >= n:
            raise DomainError(f"degree {self.degree} does not fit in length {n}")
        return self.coeffs + (self.spec.zero,) * (n - len(self.coeffs))

    def to_json(self) -> List[List[int]]:
        return [c.to_list() for c in self.coeffs]

    def __call__(self, a: FieldElement) -> FieldElement:
        result = a.spec.zero
        for c in reversed(self.coeffs):
            result = result * a + c
        return result

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            coeff = str(c.index)
            if i == 0:
                terms.append(coeff)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                terms.append(mono if c == self.spec.one else f"{coeff}*{mono}")
        return " + ".join(terms)

    # ----- ring operations -----

    def _check(self, other: "Polynomial"):
        if other.spec != self.spec:
            raise FieldMismatchError(f"cannot combine polynomials over {self.spec!r} and {other.spec!r}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.spec, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: FieldElement) -> "Polynomial":
        return Polynomial(self.spec, tuple(c * a for a in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.spec)
        prod = [self.spec.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                prod[i + j] = prod[i + j] + a * b
        return Polynomial(self.spec, tuple(prod))

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise PreconditionError("negative polynomial power")
        result = Polynomial.constant(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Polynomial") -> Tuple["Polynomial", "Polynomial"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        remainder = list(self.coeffs)
        dg = other.degree
        inv_lead = other.leading.inverse()
        quotient = [self.spec.zero] * max(len(remainder) - dg, 0)
        for k in range(len(remainder) - 1, dg - 1, -1):
            c = remainder[k]
            if c.is_zero():
                continue
            factor = c * inv_lead
            quotient[k - dg] = factor
            for i, b in enumerate(other.coeffs):
                remainder[k - dg + i] = remainder[k - dg + i] - factor * b
        return Polynomial(self.spec, tuple(quotient)), Polynomial(self.spec, tuple(remainder[:dg]))

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def shift(self, k: int) -> "Polynomial":
        """x^k * self."""
        if self.is_zero():
            return self
        return Polynomial(self.spec, (self.spec.zero,) * k + self.coeffs)

    def substitute_power(self, k: int) -> "Polynomial":
        """self(x^k)."""
        if self.is_zero():
            return self
        out = [self.spec.zero] * (self.degree * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return Polynomial(self.spec, tuple(out))


# ================= OPERATIONS =================

def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) = 0."""
    f._check(g)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(f: Polynomial, g: Polynomial) -> Tuple[Polynomial, Polynomial, Polynomial]:
    """(d, s, t) with s*f + t*g = d and d the monic gcd."""
    f._check(g)
    one = Polynomial.constant(f.spec, 1)
    zero = Polynomial(f.spec)
    r0, s0, t0 = f, one, zero
    r1, s1, t1 = g, zero, one
    while not r1.is_zero():
        quotient, remainder = divmod(r0, r1)
        r0, r1 = r1, remainder
        s0, s1 = s1, s0 - quotient * s1
        t0, t1 = t1, t0 - quotient * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = r0.leading.inverse()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def poly_arith(f: Polynomial, g: Polynomial, op: str):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        if f.is_zero() and g.is_zero():
            raise ZeroDivisionError("gcd of two zero polynomials")
        return poly_gcd(f, g)
    raise PreconditionError(f"unknown polynomial operation {op!r}")


def reciprocal(f: Polynomial) -> Polynomial:
    """Monic normalisation of x^deg(f) * f(1/x)."""
    if f.is_zero() or f.coeffs[0].is_zero():
        raise DomainError(f"reciprocal needs f(0) != 0, got {f}")
    return Polynomial(f.spec, tuple(reversed(f.coeffs))).monic()


def is_self_reciprocal(f: Polynomial) -> bool:
    if not f.is_monic():
        raise PreconditionError(f"{f} is not monic")
    return reciprocal(f) == f


def map_automorphism_over_poly(theta: Automorphism, f: Polynomial) -> Polynomial:
    if f.spec != theta.spec:
        raise FieldMismatchError(f"automorphism of {theta.spec!r} applied over {f.spec!r}")
    return Polynomial(f.spec, tuple(theta(c) for c in f.coeffs))


def minimal_polynomial(alpha: FieldElement, coset: CyclotomicCoset, base: FieldSpec) -> Polynomial:
    """
    prod_{k in coset} (x - alpha^k), computed in alpha's field and brought
    down to the base field.
    """
    ext = alpha.spec
    product = Polynomial.constant(ext, 1)
    for k in coset.elements:
        product = product * Polynomial(ext, (-(alpha ** k), ext.one))
    emb = embedding(base, ext)
    try:
        return Polynomial(base, tuple(emb.preimage(c) for c in product.coeffs))
    except ConsistencyError as e:
        raise ConsistencyError(
            f"minimal polynomial of coset {list(coset.elements)} mod {coset.modulus} "
            f"has coefficients outside {base!r}: {e}"
        ) from None


@dataclass(frozen=True)
class FactorizationOfXnMinus1:
    """
    x^n - 1 = prod_s M_s(x)^(p^v), n = p^v * n_tilde, over the cosets of the
    structure; factors are keyed by coset representative.
    """

    spec: FieldSpec
    structure: CosetStructure
    factors: Dict[int, Polynomial] = field(hash=False)

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def n_tilde(self) -> int:
        return self.structure.n_tilde

    @property
    def v(self) -> int:
        return self.structure.v

    @property
    def multiplicity(self) -> int:
        return self.structure.multiplicity

    @property
    def self_reciprocal_factors(self) -> List[Tuple[Polynomial, int]]:
        return [(self.factors[s], s) for s in self.structure.self_reciprocal]

    @property
    def reciprocal_pairs(self) -> List[Tuple[Tuple[Polynomial, int], Tuple[Polynomial, int]]]:
        return [((self.factors[a], a), (self.factors[b], b)) for a, b in self.structure.pairs]

    def product(self) -> Polynomial:
        result = Polynomial.constant(self.spec, 1)
        for f in self.factors.values():
            result = result * f ** self.multiplicity
        return result

    def to_dict(self) -> Dict:
        return {
            "field": self.spec.describe(),
            "n": self.n,
            "n_tilde": self.n_tilde,
            "v": self.v,
            "multiplicity": self.multiplicity,
            "self_reciprocal": [
                {"rep": s, "coset": list(self.structure.coset(s).elements), "poly": f.to_json(), "text": str(f)}
                for f, s in self.self_reciprocal_factors
            ],
            "reciprocal_pairs": [
                [
                    {"rep": a, "coset": list(self.structure.coset(a).elements), "poly": f.to_json(), "text": str(f)},
                    {"rep": b, "coset": list(self.structure.coset(b).elements), "poly": h.to_json(), "text": str(h)},
                ]
                for (f, a), (h, b) in self.reciprocal_pairs
            ],
        }


def factor_xn_minus_1(spec: FieldSpec, n: int) -> FactorizationOfXnMinus1:
    structure = reciprocal_structure(n, spec.q)
    _, alpha = primitive_nth_root(spec, structure.n_tilde)
    factors = {c.rep: minimal_polynomial(alpha, c, spec) for c in structure.cosets}

    for s in structure.self_reciprocal:
        if reciprocal(factors[s]) != factors[s]:
            raise ConsistencyError(f"factor of coset {s} is not self-reciprocal")
    for a, b in structure.pairs:
        if reciprocal(factors[a]) != factors[b]:
            raise ConsistencyError(f"factors of cosets {a} and {b} are not reciprocal")

    logger.debug(
        "x^%d - 1 over %r: %d self-reciprocal factors, %d reciprocal pairs, multiplicity %d",
        n, spec, len(structure.self_reciprocal), len(structure.pairs), structure.multiplicity,
    )
    return FactorizationOfXnMinus1(spec, structure, factors)
