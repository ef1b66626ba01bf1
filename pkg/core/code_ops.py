"""
Linear codes as explicit subspaces of GF(q)^n.

A LinearCode always carries its generator matrix in reduced row-echelon
form, so two codes are equal exactly when their matrices are equal. Closure
under a shift operator is decided on generator rows only.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import DomainError, FieldMismatchError, GuardExceededError
from core.gf_core import Automorphism, FieldElement, FieldSpec
from core.polyring import Polynomial

logger = logging.getLogger(__name__)

Vector = Tuple[FieldElement, ...]

DEFAULT_GUARD = 2 ** 24

# Above this field size the q x q tables get too large for the numpy path.
_TABLE_LIMIT = 256
# Codewords enumerated per numpy block.
_BLOCK = 2 ** 16


def _rref(spec: FieldSpec, n: int, rows: Iterable[Sequence[FieldElement]]) -> Tuple[Vector, ...]:
    matrix = [list(r) for r in rows]
    for r in matrix:
        if len(r) != n:
            raise DomainError(f"row of length {len(r)} in a length-{n} code")
        for c in r:
            if c.spec != spec:
                raise FieldMismatchError(f"entry {c!r} is not in {spec!r}")
    out = []
    col = 0
    while matrix and col < n:
        pivot = next((i for i, r in enumerate(matrix) if not r[col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        row = matrix.pop(pivot)
        inv = row[col].inverse()
        row = [c * inv for c in row]
        for others in (matrix, out):
            for i, r in enumerate(others):
                factor = r[col]
                if not factor.is_zero():
                    others[i] = [a - factor * b for a, b in zip(r, row)]
        out.append(row)
        matrix = [r for r in matrix if any(not c.is_zero() for c in r)]
        col += 1
    return tuple(tuple(r) for r in out)


@dataclass(frozen=True)
class LinearCode:
    spec: FieldSpec
    n: int
    rows: Tuple[Vector, ...]

    @classmethod
    def from_rows(cls, spec: FieldSpec, n: int, rows: Iterable[Sequence[FieldElement]]) -> "LinearCode":
        return cls(spec, n, _rref(spec, n, rows))

    @classmethod
    def zero(cls, spec: FieldSpec, n: int) -> "LinearCode":
        return cls(spec, n, ())

    @classmethod
    def full(cls, spec: FieldSpec, n: int) -> "LinearCode":
        return cls.from_rows(spec, n, [
            tuple(spec.one if i == j else spec.zero for j in range(n)) for i in range(n)
        ])

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return [next(i for i, c in enumerate(r) if not c.is_zero()) for r in self.rows]

    def contains(self, v: Sequence[FieldElement]) -> bool:
        if len(v) != self.n:
            raise DomainError(f"vector of length {len(v)} tested against a length-{self.n} code")
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if not c.is_zero():
                v = [a - c * b for a, b in zip(v, row)]
        return all(c.is_zero() for c in v)

    def to_dict(self) -> Dict:
        return {
            "field": self.spec.describe(),
            "n": self.n,
            "k": self.k,
            "generator_matrix": [[c.to_list() for c in r] for r in self.rows],
        }


@dataclass(frozen=True)
class WeightEnumerator:
    counts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_list(self) -> List[int]:
        return list(self.counts)


class ShiftKind(Enum):
    T = "T"
    T_L = "T^l"
    T_THETA = "T_theta"


# ================= VECTORS =================

def euclidean_product(c: Sequence[FieldElement], c2: Sequence[FieldElement]) -> FieldElement:
    if len(c) != len(c2):
        raise DomainError(f"length mismatch: {len(c)} vs {len(c2)}")
    if not c:
        raise DomainError("empty vectors")
    total = c[0].spec.zero
    for a, b in zip(c, c2):
        total = total + a * b
    return total


def shift(c: Sequence[FieldElement], l: int = 1) -> Vector:
    """T^l(c) = (c_{n-l}, c_{n-l+1}, ..., c_{n-l-1})."""
    n = len(c)
    return tuple(c[(i - l) % n] for i in range(n))


def theta_shift(c: Sequence[FieldElement], theta: Automorphism) -> Vector:
    """T_theta(c) = (theta(c_{n-1}), theta(c_0), ..., theta(c_{n-2}))."""
    return tuple(theta(a) for a in shift(c, 1))


def apply_shift(c: Sequence[FieldElement], kind: ShiftKind, l: int = 1,
                theta: Optional[Automorphism] = None) -> Vector:
    if kind is ShiftKind.T:
        return shift(c, 1)
    if kind is ShiftKind.T_L:
        return shift(c, l)
    if theta is None:
        raise DomainError("T_theta needs an automorphism")
    return theta_shift(c, theta)


def iterate(op: Callable[[Vector], Vector], c: Sequence[FieldElement], times: int) -> Vector:
    c = tuple(c)
    for _ in range(times):
        c = op(c)
    return c


def shift_power_identity(n: int, theta: Automorphism) -> Tuple[int, int]:
    """
    (e, s) with s = gcd(n, |theta|) and e = p1*|theta| = s + p2*n for the
    smallest p1 >= 1, so that T_theta^e = T^s as maps.
    """
    order = theta.order
    s = gcd(n, order)
    for p1 in range(1, n + 1):
        if (p1 * order - s) % n == 0:
            return p1 * order, s
    raise DomainError(f"no exponent reduces T_theta to a shift for n={n}, |theta|={order}")


# ================= CODES =================

def dual(C: LinearCode) -> LinearCode:
    spec = C.spec
    pivots = C.pivots
    free = [j for j in range(C.n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [spec.zero] * C.n
        v[f] = spec.one
        for row, p in zip(C.rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return LinearCode.from_rows(spec, C.n, basis)


def is_self_orthogonal(C: LinearCode) -> bool:
    return all(
        euclidean_product(a, b).is_zero()
        for i, a in enumerate(C.rows) for b in C.rows[i:]
    )


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.k == C.n and is_self_orthogonal(C)


def image(C: LinearCode, op: Callable[[Vector], Vector]) -> LinearCode:
    return LinearCode.from_rows(C.spec, C.n, [op(r) for r in C.rows])


def is_invariant(C: LinearCode, op: Callable[[Vector], Vector]) -> bool:
    return all(C.contains(op(r)) for r in C.rows)


def classify(C: LinearCode, l: Optional[int] = None,
             theta: Optional[Automorphism] = None) -> Dict[str, bool]:
    result = {"is_cyclic": is_invariant(C, shift)}
    if l is not None:
        result["is_quasicyclic"] = is_invariant(C, lambda c: shift(c, l))
    if theta is not None:
        result["is_theta_cyclic"] = is_invariant(C, lambda c: theta_shift(c, theta))
    return result


def rho(C: LinearCode, theta: Automorphism) -> int:
    """0 if T_theta(C) is contained in C, 1 otherwise."""
    return 0 if is_invariant(C, lambda c: theta_shift(c, theta)) else 1


def theta_cyclic_closure(spec: FieldSpec, n: int, vectors: Iterable[Sequence[FieldElement]],
                         theta: Automorphism) -> LinearCode:
    """Smallest theta-cyclic code containing the given vectors."""
    code = LinearCode.from_rows(spec, n, vectors)
    while True:
        missing = [v for v in (theta_shift(r, theta) for r in code.rows) if not code.contains(v)]
        if not missing:
            return code
        code = LinearCode.from_rows(spec, n, list(code.rows) + missing)


def cyclic_code_from_poly(g: Polynomial, n: int) -> LinearCode:
    """The cyclic code <g> of length n, spanned by x^i g for i < n - deg g."""
    xn1 = Polynomial.x_n_minus_1(g.spec, n)
    if g.is_zero() or not g.divides(xn1):
        raise DomainError(f"{g} does not divide x^{n} - 1")
    rows = [g.shift(i).to_vector(n) for i in range(n - g.degree)]
    return LinearCode.from_rows(g.spec, n, rows)


# ================= WEIGHTS =================

def weight_enumerator(C: LinearCode, guard: int = DEFAULT_GUARD) -> WeightEnumerator:
    q, k, n = C.spec.q, C.k, C.n
    if q ** k > guard:
        raise GuardExceededError(f"weight enumerator of a [{n},{k}] code over GF({q})", q ** k, guard)
    if q > _TABLE_LIMIT:
        return _weight_enumerator_plain(C)

    spec = C.spec
    add, mul = spec.add_table, spec.mul_table
    rows = np.array([[c.index for c in r] for r in C.rows], dtype=np.int64).reshape(k, n)

    # inner rows are expanded with numpy, outer rows in a python loop
    inner = 0
    while inner < k and q ** (inner + 1) <= _BLOCK:
        inner += 1
    words = np.zeros((1, n), dtype=np.int64)
    for row in rows[k - inner:]:
        scaled = mul[:, row]  # (q, n): every multiple of the row
        words = add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)

    counts = np.zeros(n + 1, dtype=np.int64)
    outer_rows = rows[:k - inner]
    for coeffs in itertools.product(range(q), repeat=len(outer_rows)):
        offset = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, outer_rows):
            offset = add[offset, mul[c, row]]
        block = add[words, offset[None, :]]
        counts += np.bincount((block != 0).sum(axis=1), minlength=n + 1)
    return WeightEnumerator(tuple(int(a) for a in counts))


def _weight_enumerator_plain(C: LinearCode) -> WeightEnumerator:
    spec = C.spec
    counts = [0] * (C.n + 1)
    for coeffs in itertools.product(list(spec.elements()), repeat=C.k):
        word = [spec.zero] * C.n
        for c, row in zip(coeffs, C.rows):
            if not c.is_zero():
                word = [a + c * b for a, b in zip(word, row)]
        counts[sum(1 for a in word if not a.is_zero())] += 1
    return WeightEnumerator(tuple(counts))
