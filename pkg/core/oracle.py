"""
Brute-force ground truth for every count in the library.

theta-cyclic codes are found as left ideals generated by monic skew
polynomials g that right-divide x^n - 1 in GF(q)[x; theta]; self-dual cyclic
codes by walking the divisor lattice of x^n - 1; subspace counts and (for
tiny lengths) self-dual codes by exhaustive search of all subspaces.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from core.code_ops import LinearCode, is_self_dual, rho
from core.errors import FieldMismatchError, GuardExceededError, PreconditionError
from core.gf_core import Automorphism, FieldElement, FieldSpec, field_of_order
from core.polyring import Polynomial, factor_xn_minus_1
from utils.parallel import run_tasks, split_range

logger = logging.getLogger(__name__)

DEFAULT_GUARD = 2 ** 24
SUBSPACE_GUARD = 2 ** 20
FULL_SEARCH_MAX_LENGTH = 4

FieldLike = Union[int, FieldSpec]


def _field(q: FieldLike) -> FieldSpec:
    return q if isinstance(q, FieldSpec) else field_of_order(q)


@dataclass(frozen=True)
class SkewPolynomial:
    """Element of GF(q)[x; theta], where x * a = theta(a) * x."""

    theta: Automorphism
    coeffs: Tuple[FieldElement, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def spec(self) -> FieldSpec:
        return self.theta.spec

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.spec.zero

    def __add__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        _check(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial(self.theta, tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __sub__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        _check(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPolynomial(self.theta, tuple(self.coeff(i) - other.coeff(i) for i in range(n)))

    def __mul__(self, other: "SkewPolynomial") -> "SkewPolynomial":
        return skew_mul(self, other)

    def left_shift(self, k: int) -> "SkewPolynomial":
        """x^k * self = sum theta^k(c_i) x^(i+k)."""
        twist = self.theta.power(k)
        return SkewPolynomial(self.theta, (self.spec.zero,) * k + tuple(twist(c) for c in self.coeffs))

    def to_vector(self, n: int) -> Tuple[FieldElement, ...]:
        return self.coeffs + (self.spec.zero,) * (n - len(self.coeffs))


def _check(f: SkewPolynomial, g: SkewPolynomial):
    if f.theta != g.theta:
        raise FieldMismatchError("skew polynomials over different rings")


def skew_x_n_minus_1(theta: Automorphism, n: int) -> SkewPolynomial:
    spec = theta.spec
    return SkewPolynomial(theta, (-spec.one,) + (spec.zero,) * (n - 1) + (spec.one,))


def skew_mul(f: SkewPolynomial, g: SkewPolynomial) -> SkewPolynomial:
    _check(f, g)
    if f.is_zero() or g.is_zero():
        return SkewPolynomial(f.theta)
    spec = f.spec
    prod = [spec.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a.is_zero():
            continue
        twist = f.theta.power(i)
        for j, b in enumerate(g.coeffs):
            prod[i + j] = prod[i + j] + a * twist(b)
    return SkewPolynomial(f.theta, tuple(prod))


def skew_right_divmod(f: SkewPolynomial, g: SkewPolynomial) -> Tuple[SkewPolynomial, SkewPolynomial]:
    """(Q, R) with f = Q * g + R and deg R < deg g."""
    _check(f, g)
    if g.is_zero():
        raise ZeroDivisionError("right division by the zero skew polynomial")
    spec = f.spec
    d = g.degree
    quotient = [spec.zero] * max(f.degree - d + 1, 0)
    remainder = f
    while not remainder.is_zero() and remainder.degree >= d:
        k = remainder.degree - d
        lead = f.theta.power(k)(g.coeffs[-1])
        t = remainder.coeffs[-1] / lead
        quotient[k] = quotient[k] + t
        term = SkewPolynomial(f.theta, (spec.zero,) * k + (t,))
        remainder = remainder - skew_mul(term, g)
    return SkewPolynomial(f.theta, tuple(quotient)), remainder


def left_ideal_code(g: SkewPolynomial, n: int) -> LinearCode:
    """Code spanned by x^i g for i < n - deg g."""
    rows = [g.left_shift(i).to_vector(n) for i in range(n - g.degree)]
    return LinearCode.from_rows(g.spec, n, rows)


# ================= THETA-CYCLIC SEARCH =================

def _monic_candidate(spec: FieldSpec, theta: Automorphism, k: int, index: int) -> SkewPolynomial:
    coeffs = []
    for _ in range(k):
        index, c = divmod(index, spec.q)
        coeffs.append(spec.element(c))
    return SkewPolynomial(theta, tuple(coeffs) + (spec.one,))


def _scan_skew_divisors(spec: FieldSpec, n: int, r: int, start: int, stop: int) -> List[LinearCode]:
    theta = Automorphism(spec, r)
    target = skew_x_n_minus_1(theta, n)
    k = n // 2
    found = []
    for index in range(start, stop):
        g = _monic_candidate(spec, theta, k, index)
        if g.coeffs[0].is_zero():
            continue
        _, remainder = skew_right_divmod(target, g)
        if not remainder.is_zero():
            continue
        code = left_ideal_code(g, n)
        if is_self_dual(code):
            found.append(code)
    return found


def _code_key(code: LinearCode) -> Tuple:
    return tuple(tuple(c.index for c in row) for row in code.rows)


def _dedup(codes) -> List[LinearCode]:
    return sorted(set(codes), key=_code_key)


def enumerate_theta_cyclic_selfdual(q: FieldLike, n: int, r: int, guard: int = DEFAULT_GUARD,
                                    jobs: int = 1) -> List[LinearCode]:
    """Self-dual codes generated by monic degree-n/2 right divisors of x^n - 1."""
    spec = _field(q)
    Automorphism(spec, r)
    if n % 2:
        logger.info("Odd length %d: no self-dual codes", n)
        return []
    candidates = spec.q ** (n // 2)
    if candidates > guard:
        raise GuardExceededError(f"skew divisor search over {spec!r}, n={n}", candidates, guard)
    logger.info("Scanning %d monic skew polynomials of degree %d over %r", candidates, n // 2, spec)
    tasks = [(spec, n, r, start, stop) for start, stop in split_range(candidates, jobs)]
    chunks = run_tasks(_scan_skew_divisors, tasks, jobs)
    codes = _dedup(code for chunk in chunks for code in chunk)
    logger.info("Found %d self-dual theta-cyclic codes", len(codes))
    return codes


# ================= CYCLIC SEARCH =================

def enumerate_selfdual_cyclic(q: FieldLike, n: int) -> List[LinearCode]:
    """Self-dual codes among all cyclic codes <g>, g | x^n - 1 monic of degree n/2."""
    spec = _field(q)
    if n % 2:
        return []
    factorization = factor_xn_minus_1(spec, n)
    reps = sorted(factorization.factors)
    polys = [factorization.factors[s] for s in reps]
    top = factorization.multiplicity
    found = []
    for mult in itertools.product(range(top + 1), repeat=len(polys)):
        if 2 * sum(k * f.degree for k, f in zip(mult, polys)) != n:
            continue
        g = Polynomial.constant(spec, 1)
        for k, f in zip(mult, polys):
            g = g * f ** k
        code = LinearCode.from_rows(spec, n, [g.shift(i).to_vector(n) for i in range(n - g.degree)])
        if is_self_dual(code):
            found.append(code)
    return _dedup(found)


# ================= EXHAUSTIVE SUBSPACES =================

def _vectors(spec: FieldSpec, d: int):
    elements = list(spec.elements())
    return itertools.product(elements, repeat=d)


def all_subspaces(spec: FieldSpec, d: int, guard: int = SUBSPACE_GUARD) -> List[LinearCode]:
    """Every subspace of GF(q)^d, found by closing spans one vector at a time."""
    if spec.q ** d > guard:
        raise GuardExceededError(f"subspace search in GF({spec.q})^{d}", spec.q ** d, guard)
    vectors = list(_vectors(spec, d))
    start = LinearCode.zero(spec, d)
    seen = {start}
    frontier = [start]
    while frontier:
        space = frontier.pop()
        for v in vectors:
            if space.contains(v):
                continue
            bigger = LinearCode.from_rows(spec, d, list(space.rows) + [v])
            if bigger not in seen:
                seen.add(bigger)
                frontier.append(bigger)
    return _dedup(seen)


def count_subspaces(d: int, q: FieldLike, method: str = "exhaustive", guard: int = SUBSPACE_GUARD) -> int:
    if method == "formula":
        from core.quasicyclic import N_formula

        return N_formula(d, q.q if isinstance(q, FieldSpec) else q)
    if method != "exhaustive":
        raise PreconditionError(f"unknown counting method {method!r}")
    return len(all_subspaces(_field(q), d, guard))


def enumerate_selfdual_subspaces(q: FieldLike, n: int, theta: Optional[Automorphism] = None,
                                 guard: int = SUBSPACE_GUARD) -> List[LinearCode]:
    """
    All self-dual codes of length n <= 4 by walking every reduced echelon
    matrix of rank n/2; with theta given, only the theta-cyclic ones.
    """
    spec = _field(q)
    if n > FULL_SEARCH_MAX_LENGTH:
        raise PreconditionError(f"full subspace search is limited to n <= {FULL_SEARCH_MAX_LENGTH}")
    if n % 2:
        return []
    k = n // 2
    if spec.q ** (k * (n - k)) > guard:
        raise GuardExceededError(f"self-dual subspace search over {spec!r}, n={n}", spec.q ** (k * (n - k)), guard)
    elements = list(spec.elements())
    found = []
    for pivots in itertools.combinations(range(n), k):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
        for values in itertools.product(elements, repeat=len(free)):
            rows = [[spec.zero] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = spec.one
            for (i, j), c in zip(free, values):
                rows[i][j] = c
            code = LinearCode(spec, n, tuple(tuple(r) for r in rows))
            if not is_self_dual(code):
                continue
            if theta is not None and rho(code, theta):
                continue
            found.append(code)
    return _dedup(found)
