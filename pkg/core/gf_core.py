"""
Exact arithmetic in finite fields GF(p^m).

Elements are coordinate vectors over GF(p) with respect to the power basis
of a monic irreducible modulus. Multiplication goes through exp/log tables
built once per field from a primitive element.
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, factorint, isprime, n_order
from sympy.abc import x as _X

from core.errors import (
    ConsistencyError,
    FieldMismatchError,
    PreconditionError,
)
from data.default_moduli import DEFAULT_MODULI, MAX_FIELD_SIZE

logger = logging.getLogger(__name__)


def _is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    if len(modulus) == 2:
        return True
    return Poly(list(reversed(modulus)), _X, modulus=p).is_irreducible


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) presented as GF(p)[x]/(modulus)."""

    p: int
    m: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))

        if not isprime(self.p):
            raise PreconditionError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise PreconditionError(f"extension degree must be >= 1, got {self.m}")
        if self.p ** self.m > MAX_FIELD_SIZE:
            raise PreconditionError(
                f"GF({self.p}^{self.m}) has more than {MAX_FIELD_SIZE} elements; "
                "fields are limited to 16 bits"
            )
        if len(self.modulus) != self.m + 1 or self.modulus[-1] != 1:
            raise PreconditionError(
                f"modulus {list(self.modulus)} is not monic of degree {self.m}"
            )
        if any(c < 0 or c >= self.p for c in self.modulus):
            raise PreconditionError(f"modulus coefficients must lie in [0, {self.p})")
        if not _is_irreducible_mod_p(self.modulus, self.p):
            raise PreconditionError(
                f"modulus {list(self.modulus)} is reducible over GF({self.p})"
            )

    @property
    def q(self) -> int:
        return self.p ** self.m

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def describe(self) -> Dict:
        return {"p": self.p, "m": self.m, "q": self.q, "modulus": list(self.modulus)}

    # ----- encoding -----

    def encode(self, coeffs: Sequence[int]) -> int:
        index = 0
        for c in reversed(coeffs):
            index = index * self.p + c
        return index

    @cached_property
    def coeff_table(self) -> List[Tuple[int, ...]]:
        table = []
        for index in range(self.q):
            coeffs = []
            for _ in range(self.m):
                index, c = divmod(index, self.p)
                coeffs.append(c)
            table.append(tuple(coeffs))
        return table

    def element(self, value: Union[int, Sequence[int]]) -> "FieldElement":
        """Element from its integer index or from a coordinate list."""
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.q:
                raise PreconditionError(f"index {value} outside GF({self.q})")
            return FieldElement(self, self.coeff_table[int(value)])
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.m:
            raise PreconditionError(f"{len(coeffs)} coordinates for a degree-{self.m} field")
        coeffs += [0] * (self.m - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def scalar(self, k: int) -> "FieldElement":
        return self.element([k % self.p])

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    @property
    def gen(self) -> "FieldElement":
        """The class of x, i.e. the root of the modulus."""
        if self.m == 1:
            return self.scalar(-self.modulus[0])
        return self.element([0, 1])

    def elements(self) -> Iterator["FieldElement"]:
        for index in range(self.q):
            yield self.element(index)

    # ----- multiplicative structure -----

    def _slow_mul(self, a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                for i in range(m + 1):
                    prod[k - m + i] = (prod[k - m + i] - c * self.modulus[i]) % p
        return tuple(prod[:m])

    def _slow_pow(self, a: Tuple[int, ...], e: int) -> Tuple[int, ...]:
        result = self.coeff_table[1]
        while e:
            if e & 1:
                result = self._slow_mul(result, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return result

    @cached_property
    def primitive_index(self) -> int:
        order = self.q - 1
        one = self.coeff_table[1]
        primes = list(factorint(order)) if order > 1 else []
        for index in range(1, self.q):
            a = self.coeff_table[index]
            if all(self._slow_pow(a, order // l) != one for l in primes):
                return index
        raise ConsistencyError(f"no primitive element found in {self!r}")

    @cached_property
    def _tables(self) -> Tuple[np.ndarray, np.ndarray]:
        logger.debug("Building exp/log tables for %r", self)
        order = self.q - 1
        exp_table = np.zeros(order, dtype=np.int64)
        log_table = np.full(self.q, -1, dtype=np.int64)
        g = self.coeff_table[self.primitive_index]
        current = self.coeff_table[1]
        for k in range(order):
            index = self.encode(current)
            exp_table[k] = index
            log_table[index] = k
            current = self._slow_mul(current, g)
        return exp_table, log_table

    @property
    def exp_table(self) -> np.ndarray:
        return self._tables[0]

    @property
    def log_table(self) -> np.ndarray:
        return self._tables[1]

    @property
    def primitive_element(self) -> "FieldElement":
        return self.element(self.primitive_index)

    @cached_property
    def add_table(self) -> np.ndarray:
        """q x q table of element indices; used by vectorised code searches."""
        coords = np.array(self.coeff_table, dtype=np.int64)
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        summed = (coords[:, None, :] + coords[None, :, :]) % self.p
        return summed @ weights

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        table = np.zeros((q, q), dtype=np.int64)
        logs = self.log_table[1:]
        table[1:, 1:] = self.exp_table[(logs[:, None] + logs[None, :]) % (q - 1)]
        return table


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of GF(p^m); equality is coordinate-wise."""

    spec: FieldSpec
    coeffs: Tuple[int, ...]

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatchError(f"cannot combine {self.spec!r} and {other.spec!r}")
            return other
        if isinstance(other, int):
            return self.spec.scalar(other)
        return NotImplemented

    @property
    def index(self) -> int:
        return self.spec.encode(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.spec.p
        return FieldElement(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.spec.p
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return self.spec.zero
        spec = self.spec
        logs = spec.log_table
        k = (int(logs[self.index]) + int(logs[other.index])) % (spec.q - 1)
        return spec.element(int(spec.exp_table[k]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"zero has no inverse in {self.spec!r}")
        spec = self.spec
        k = (-int(spec.log_table[self.index])) % (spec.q - 1)
        return spec.element(int(spec.exp_table[k]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        spec = self.spec
        if self.is_zero():
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return spec.one if e == 0 else spec.zero
        k = (int(spec.log_table[self.index]) * e) % (spec.q - 1)
        return spec.element(int(spec.exp_table[k]))

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise PreconditionError("zero has no multiplicative order")
        order = self.spec.q - 1
        k = int(self.spec.log_table[self.index])
        return order // gcd(order, k)

    def to_list(self) -> List[int]:
        return list(self.coeffs)

    def __repr__(self):
        return f"{self.spec!r}{list(self.coeffs)}"


@dataclass(frozen=True)
class Automorphism:
    """theta(a) = a^(p^r) on GF(p^m)."""

    spec: FieldSpec
    r: int

    def __post_init__(self):
        if not 1 <= self.r <= self.spec.m:
            raise PreconditionError(
                f"Frobenius exponent r={self.r} must lie in [1, {self.spec.m}]"
            )

    @property
    def order(self) -> int:
        return self.spec.m // gcd(self.spec.m, self.r)

    def is_identity(self) -> bool:
        return self.order == 1

    def power(self, k: int) -> "Automorphism":
        r = (self.r * k) % self.spec.m
        return Automorphism(self.spec, r or self.spec.m)

    def __call__(self, a: FieldElement) -> FieldElement:
        return apply_automorphism(self, a)


# ================= OPERATIONS =================

_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def field_arithmetic(a: FieldElement, b, op: str) -> FieldElement:
    """Dispatch one of add/sub/mul/div/pow; for pow, b is an integer exponent."""
    if op == "pow":
        if not isinstance(b, int):
            raise PreconditionError("pow takes an integer exponent")
        return a ** b
    if op not in _OPS:
        raise PreconditionError(f"unknown field operation {op!r}")
    if a.spec != b.spec:
        raise FieldMismatchError(f"cannot combine {a.spec!r} and {b.spec!r}")
    return _OPS[op](a, b)


def apply_automorphism(theta: Automorphism, a: FieldElement) -> FieldElement:
    if a.spec != theta.spec:
        raise FieldMismatchError(f"automorphism of {theta.spec!r} applied to {a.spec!r}")
    return a ** (theta.spec.p ** theta.r)


def automorphism_order(theta: Automorphism) -> int:
    return theta.order


# ================= FIELD CONSTRUCTION =================

def _is_primitive_modulus(p: int, m: int, modulus: Tuple[int, ...]) -> bool:
    spec = FieldSpec(p, m, modulus)
    return spec.gen.multiplicative_order() == spec.q - 1


def _search_modulus(p: int, m: int) -> Tuple[int, ...]:
    logger.info("No tabulated modulus for GF(%d^%d), searching", p, m)
    for tail in range(p ** m):
        coeffs = []
        for _ in range(m):
            tail, c = divmod(tail, p)
            coeffs.append(c)
        if coeffs[0] == 0:
            continue
        modulus = tuple(coeffs) + (1,)
        if _is_irreducible_mod_p(modulus, p) and _is_primitive_modulus(p, m, modulus):
            return modulus
    raise ConsistencyError(f"no primitive polynomial of degree {m} over GF({p})")


@lru_cache(maxsize=None)
def default_field(p: int, m: int = 1) -> FieldSpec:
    if p ** m > MAX_FIELD_SIZE:
        raise PreconditionError(
            f"GF({p}^{m}) has more than {MAX_FIELD_SIZE} elements; fields are limited to 16 bits"
        )
    modulus = DEFAULT_MODULI.get((p, m)) or _search_modulus(p, m)
    return FieldSpec(p, m, modulus)


def prime_power(q: int) -> Tuple[int, int]:
    """(p, m) with q = p^m, or PreconditionError."""
    if q < 2:
        raise PreconditionError(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise PreconditionError(f"{q} is not a prime power")
    (p, m), = factors.items()
    return p, m


def field_of_order(q: int) -> FieldSpec:
    return default_field(*prime_power(q))


def primitive_nth_root(spec: FieldSpec, n: int) -> Tuple[FieldSpec, FieldElement]:
    """
    Extension GF(q^t), t = ord_n(q), together with an element of order exactly n.
    The extension is spec itself when t = 1.
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if gcd(n, spec.p) != 1:
        raise PreconditionError(f"gcd(n={n}, p={spec.p}) != 1: no primitive {n}-th root exists")
    t = 1 if n == 1 else int(n_order(spec.q, n))
    ext = spec if t == 1 else default_field(spec.p, spec.m * t)
    alpha = ext.primitive_element ** ((ext.q - 1) // n)
    logger.debug("Primitive %d-th root of unity lives in %r (t=%d)", n, ext, t)
    return ext, alpha


class FieldEmbedding:
    """A fixed embedding of base = GF(p^m) into ext = GF(p^(mt))."""

    def __init__(self, base: FieldSpec, ext: FieldSpec):
        if base.p != ext.p or ext.m % base.m != 0:
            raise PreconditionError(f"{base!r} is not a subfield of {ext!r}")
        self.base = base
        self.ext = ext
        self.root = self._find_root()
        self._powers = [self.root ** i for i in range(base.m)]
        self._inverse: Dict[FieldElement, FieldElement] = {}
        for a in base.elements():
            self._inverse[self.image(a)] = a

    def _find_root(self) -> FieldElement:
        if self.base == self.ext:
            return self.ext.gen
        step = (self.ext.q - 1) // (self.base.q - 1)
        gamma = self.ext.primitive_element ** step
        candidate = self.ext.one
        for _ in range(self.base.q - 1):
            value = self.ext.zero
            for c in reversed(self.base.modulus):
                value = value * candidate + c
            if value.is_zero():
                return candidate
            candidate = candidate * gamma
        raise ConsistencyError(f"modulus of {self.base!r} has no root in {self.ext!r}")

    def image(self, a: FieldElement) -> FieldElement:
        if self.base == self.ext:
            return a
        result = self.ext.zero
        for c, power in zip(a.coeffs, self._powers):
            if c:
                result = result + power * c
        return result

    def preimage(self, b: FieldElement) -> FieldElement:
        if self.base == self.ext:
            return b
        try:
            return self._inverse[b]
        except KeyError:
            raise ConsistencyError(f"{b!r} does not lie in the subfield {self.base!r}") from None


@lru_cache(maxsize=None)
def embedding(base: FieldSpec, ext: FieldSpec) -> FieldEmbedding:
    return FieldEmbedding(base, ext)
