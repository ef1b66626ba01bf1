"""
Counting and constructing Euclidean self-dual cyclic codes over GF(2^m), and
the theta-cyclic count obtained by discarding the selections moved by the
coset relabelling Lambda_r.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from sympy import divisors

from core.cosets import (
    CosetStructure,
    Lambda_permutation,
    chi,
    euler_phi,
    multiplicative_order,
    reciprocal_structure,
)
from core.errors import ConsistencyError, PreconditionError
from core.gf_core import FieldSpec, default_field
from core.polyring import Polynomial, factor_xn_minus_1

logger = logging.getLogger(__name__)


def _log2_exact(q: int) -> Optional[int]:
    if q < 2 or q & (q - 1):
        return None
    return q.bit_length() - 1


@dataclass(frozen=True)
class GeneratorSelection:
    """
    One element of the set A: a multiplicity for every irreducible factor of
    x^n - 1 (keyed by coset representative). The generator is the product of
    the factors raised to their multiplicities.
    """

    structure: CosetStructure
    multiplicities: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.multiplicities)

    def degree(self) -> int:
        mult = self.as_dict()
        return sum(mult[c.rep] * len(c) for c in self.structure.cosets)

    def relabel(self, r: int) -> "GeneratorSelection":
        """Image under Lambda_r: the multiplicity of C moves to Lambda_r(C)."""
        perm = Lambda_permutation(self.structure, r)
        moved = {perm[rep]: mult for rep, mult in self.multiplicities}
        return GeneratorSelection(self.structure, tuple(sorted(moved.items())))

    def to_dict(self) -> Dict:
        return {str(rep): mult for rep, mult in self.multiplicities}


# ================= EXISTENCE AND COUNTS =================

def selfdual_cyclic_exists(q: int, n: int) -> bool:
    return _log2_exact(q) is not None and n >= 1 and n % 2 == 0


def count_selfdual_cyclic(q: int, n: int) -> int:
    """(1 + 2^v)^( 1/2 * sum_{j | n_tilde} chi(j, m) phi(j) / ord_j(2^m) )."""
    if not selfdual_cyclic_exists(q, n):
        logger.warning("No Euclidean self-dual cyclic codes exist for q=%d, n=%d", q, n)
        return 0
    m = _log2_exact(q)
    structure = reciprocal_structure(n, q)
    total = 0
    for j in divisors(structure.n_tilde):
        if chi(j, m):
            phi = euler_phi(j)
            order = multiplicative_order(j, q)
            if phi % order:
                raise ConsistencyError(f"ord_{j}({q})={order} does not divide phi({j})={phi}")
            total += phi // order
    if total % 2:
        raise ConsistencyError(f"odd number {total} of bad cosets for q={q}, n={n}")
    return (1 + 2 ** structure.v) ** (total // 2)


def build_selection_set_A(q: int, n: int) -> List[GeneratorSelection]:
    """
    Every multiplicity assignment of a self-dual generator: self-reciprocal
    factors get 2^(v-1), each reciprocal pair (h, h*) gets (b, 2^v - b).
    """
    if not selfdual_cyclic_exists(q, n):
        logger.warning("Empty selection set: q=%d, n=%d admits no self-dual cyclic code", q, n)
        return []
    structure = reciprocal_structure(n, q)
    top = 2 ** structure.v
    fixed = {s: top // 2 for s in structure.self_reciprocal}

    selections = []
    for choice in itertools.product(range(top + 1), repeat=len(structure.pairs)):
        mult = dict(fixed)
        for (a, b), k in zip(structure.pairs, choice):
            mult[a] = k
            mult[b] = top - k
        sel = GeneratorSelection(structure, tuple(sorted(mult.items())))
        if 2 * sel.degree() != n:
            raise ConsistencyError(f"selection {mult} has degree {sel.degree()}, expected {n // 2}")
        selections.append(sel)
    return selections


def Lambda_bar(selections: List[GeneratorSelection], r: int) -> int:
    """Number of selections not fixed by Lambda_r."""
    return sum(1 for sel in selections if sel.relabel(r) != sel)


def count_selfdual_theta_cyclic(q: int, n: int, r: int) -> int:
    m = _log2_exact(q)
    if m is None:
        raise PreconditionError(f"q={q} is not a power of 2")
    if not 1 <= r <= m:
        raise PreconditionError(f"r={r} must lie in [1, {m}]")
    selections = build_selection_set_A(q, n)
    count = count_selfdual_cyclic(q, n) - Lambda_bar(selections, r)
    if count < 0:
        raise ConsistencyError(f"negative theta-cyclic count {count} for q={q}, n={n}, r={r}")
    return count


def fixed_selections(selections: List[GeneratorSelection], r: int) -> List[GeneratorSelection]:
    return [sel for sel in selections if sel.relabel(r) == sel]


# ================= GENERATORS =================

def selection_to_generator(sel: GeneratorSelection, spec: Optional[FieldSpec] = None) -> Polynomial:
    structure = sel.structure
    if spec is None:
        spec = default_field(structure.p, _log2_exact(structure.q) or 1)
    if spec.q != structure.q:
        raise PreconditionError(f"selection built for q={structure.q}, field has {spec.q} elements")
    factorization = factor_xn_minus_1(spec, structure.n)
    g = Polynomial.constant(spec, 1)
    for rep, mult in sel.multiplicities:
        g = g * factorization.factors[rep] ** mult
    return g
