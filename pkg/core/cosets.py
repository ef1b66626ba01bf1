"""
q-cyclotomic cosets modulo an integer coprime to q, and the arithmetic
functions behind the self-dual cyclic count: Euler phi, multiplicative order,
the good/bad pair indicator chi, and the coset relabelling maps lambda_r and
Lambda_r.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, List, Tuple

from sympy import factorint, n_order, totient

from core.errors import ConsistencyError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CyclotomicCoset:
    rep: int
    elements: Tuple[int, ...]
    modulus: int
    base: int

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a % self.modulus in self.elements


@dataclass(frozen=True)
class CosetStructure:
    """
    Cosets of n_tilde under q, with the reciprocal classification used for
    self-dual generators: C_s is self-reciprocal iff -s lies in C_s, otherwise
    C_s and C_{-s} form a reciprocal pair (listed once, smaller rep first).
    """

    n: int
    q: int
    p: int
    v: int
    n_tilde: int
    cosets: Tuple[CyclotomicCoset, ...]
    self_reciprocal: Tuple[int, ...]
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def multiplicity(self) -> int:
        return self.p ** self.v

    def coset(self, rep: int) -> CyclotomicCoset:
        for c in self.cosets:
            if c.rep == rep:
                return c
        raise PreconditionError(f"{rep} is not a coset representative mod {self.n_tilde}")


# ================= COSETS =================

@lru_cache(maxsize=None)
def _cosets_cached(n_tilde: int, q: int) -> Tuple[CyclotomicCoset, ...]:
    seen = set()
    cosets = []
    for s in range(n_tilde):
        if s in seen:
            continue
        orbit = []
        a = s
        while a not in orbit:
            orbit.append(a)
            a = (a * q) % n_tilde
        seen.update(orbit)
        cosets.append(CyclotomicCoset(s, tuple(sorted(orbit)), n_tilde, q))
    return tuple(cosets)


def cyclotomic_cosets(n_tilde: int, q: int) -> List[CyclotomicCoset]:
    """Partition of {0, ..., n_tilde-1} into orbits under multiplication by q."""
    if n_tilde < 1:
        raise PreconditionError(f"modulus must be positive, got {n_tilde}")
    if gcd(n_tilde, q) != 1:
        raise PreconditionError(f"gcd({n_tilde}, {q}) != 1")
    return list(_cosets_cached(n_tilde, q))


def coset_of(a: int, cosets: List[CyclotomicCoset]) -> CyclotomicCoset:
    for c in cosets:
        if a in c:
            return c
    raise ConsistencyError(f"{a} is not covered by the coset partition")


def characteristic_of(q: int) -> int:
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise PreconditionError(f"{q} is not a prime power")
    return next(iter(factors))


def split_length(n: int, p: int) -> Tuple[int, int]:
    """(v, n_tilde) with n = p^v * n_tilde and p not dividing n_tilde."""
    if n < 1:
        raise PreconditionError(f"length must be positive, got {n}")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def reciprocal_structure(n: int, q: int) -> CosetStructure:
    p = characteristic_of(q)
    v, n_tilde = split_length(n, p)
    cosets = cyclotomic_cosets(n_tilde, q)
    self_reciprocal = []
    pairs = []
    for c in cosets:
        partner = coset_of(-c.rep, cosets)
        if partner.rep == c.rep:
            self_reciprocal.append(c.rep)
        elif c.rep < partner.rep:
            pairs.append((c.rep, partner.rep))
    return CosetStructure(
        n=n, q=q, p=p, v=v, n_tilde=n_tilde, cosets=tuple(cosets),
        self_reciprocal=tuple(self_reciprocal), pairs=tuple(pairs),
    )


# ================= NUMBER THEORY =================

def euler_phi(j: int) -> int:
    if j < 1:
        raise PreconditionError(f"phi is defined for j >= 1, got {j}")
    return int(totient(j))


def multiplicative_order(j: int, i: int) -> int:
    """Smallest e >= 1 with i^e = 1 (mod j)."""
    if j < 1:
        raise PreconditionError(f"modulus must be positive, got {j}")
    if gcd(i, j) != 1:
        raise PreconditionError(f"gcd({i}, {j}) != 1, ord_{j}({i}) is undefined")
    if j == 1:
        return 1
    return int(n_order(i, j))


def chi(j: int, m: int) -> int:
    """
    0 if (j, m) is good, i.e. j divides (2^m)^k + 1 for some k >= 0, else 1.
    Powers of 2^m modulo j repeat with period ord_j(2^m), so k stays below it.
    """
    if j < 1 or j % 2 == 0:
        raise PreconditionError(f"chi needs an odd positive j, got {j}")
    q = 2 ** m
    for k in range(multiplicative_order(j, q)):
        if (pow(q, k, j) + 1) % j == 0:
            return 0
    return 1


def lambda_map(a: int, n_tilde: int, r: int, p: int = 2) -> int:
    if not 0 <= a < n_tilde:
        raise PreconditionError(f"{a} is not a residue mod {n_tilde}")
    return (p ** r * a) % n_tilde


def induced_Lambda(coset: CyclotomicCoset, r: int, p: int = 2) -> CyclotomicCoset:
    """The coset containing lambda_r of the representative."""
    cosets = cyclotomic_cosets(coset.modulus, coset.base)
    return coset_of(lambda_map(coset.rep, coset.modulus, r, p), cosets)


def Lambda_permutation(structure: CosetStructure, r: int) -> Dict[int, int]:
    """rep -> rep of its image under Lambda_r, for every coset of the structure."""
    cosets = list(structure.cosets)
    return {
        c.rep: coset_of(lambda_map(c.rep, structure.n_tilde, r, structure.p), cosets).rep
        for c in cosets
    }
