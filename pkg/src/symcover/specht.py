"""Subset-inclusion maps between levels of GF(2) function spaces.

alpha_matrix(j, k, n) is the map F2^{[n]^j} -> F2^{[n]^k} summing a
function over the j-subsets of each k-set; beta_matrix(k, j, n) is the
dual map on the span of subsets.  Sums of alpha images are the standard
submodules; their lattice, the top-level module M avoiding the degree-2
factor, and the Specht kernels all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from symcover.errors import MathExpectationError, SizeBoundExceeded
from symcover.gf2 import GF2Mat, Subspace, image_basis, kernel_basis
from symcover.kcomb import KSubsetIndexer, Perm, binom_parity

__all__ = [
    "AlphaMap",
    "LatticeNode",
    "LatticeReport",
    "SubmoduleSpec",
    "alpha_matrix",
    "beta_matrix",
    "composition_identity_check",
    "has_s2_factor",
    "lattice_report",
    "m_index_set",
    "m_submodule",
    "specht_kernel",
    "standard_submodule",
]


@dataclass(frozen=True)
class AlphaMap:
    """The inclusion-incidence matrix of the level-raising map.

    mat has C(n,k) rows and C(n,j) columns; entry (w, v) is 1 iff v is a
    subset of w, rows and columns in colex rank order.
    """

    j: int
    k: int
    n: int
    mat: GF2Mat


@lru_cache(maxsize=None)
def alpha_matrix(j: int, k: int, n: int) -> AlphaMap:
    if not 0 <= j <= k <= n:
        raise ValueError(f"need 0 <= j <= k <= n, got ({j}, {k}, {n})")
    wk = KSubsetIndexer(n, k)
    wj = KSubsetIndexer(n, j)
    rows = []
    for w in wk.subsets:
        bits = 0
        for v in combinations(w, j):
            bits |= 1 << wj.rank(v)
        rows.append(bits)
    return AlphaMap(j, k, n, GF2Mat(tuple(rows), wj.size))


@lru_cache(maxsize=None)
def beta_matrix(k: int, j: int, n: int) -> GF2Mat:
    """Matrix of the level-lowering map sending a k-set to the sum of its j-subsets.

    Built directly from that definition; that it equals the transpose of
    alpha_matrix(j, k, n) is a tested invariant, not an assumption.
    """
    if not 0 <= j <= k <= n:
        raise ValueError(f"need 0 <= j <= k <= n, got ({k}, {j}, {n})")
    wk = KSubsetIndexer(n, k)
    wj = KSubsetIndexer(n, j)
    rows = [0] * wj.size
    for cw, w in enumerate(wk.subsets):
        for v in combinations(w, j):
            rows[wj.rank(v)] |= 1 << cw
    return GF2Mat(tuple(rows), wk.size)


def specht_kernel(k: int, n: int) -> Subspace:
    """Intersection of the kernels of all lowering maps below level k.

    Computed inside the span of k-subsets (dimension C(n,k)).  For k = 0
    the intersection is empty and the whole 1-dimensional space returns.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    size = comb(n, k)
    if k == 0:
        return Subspace.full(size)
    stacked = GF2Mat.vstack([beta_matrix(k, i, n) for i in range(k)])
    return kernel_basis(stacked)


@dataclass(frozen=True)
class SubmoduleSpec:
    """A standard submodule of F2^{[n]^k}: the sum of alpha images over J."""

    k: int
    n: int
    J: tuple[int, ...]
    materialized: Subspace


def standard_submodule(J, k: int, n: int) -> SubmoduleSpec:
    Jt = tuple(sorted(set(J)))
    if any(not 0 <= j <= k for j in Jt):
        raise ValueError(f"J must be a subset of 0..{k}, got {Jt}")
    size = comb(n, k)
    vectors = []
    for j in Jt:
        vectors.extend(image_basis(alpha_matrix(j, k, n).mat).basis)
    return SubmoduleSpec(k, n, Jt, Subspace.from_vectors(size, vectors))


def m_index_set(k: int) -> tuple[int, ...]:
    """Levels j whose image avoids the degree-2 composition factor at top index k."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return tuple(j for j in range(k + 1) if binom_parity(k - 2, j - 2) == 0)


def m_submodule(k: int, n: int) -> SubmoduleSpec:
    """The largest standard submodule without the degree-2 factor."""
    return standard_submodule(m_index_set(k), k, n)


def has_s2_factor(spec: SubmoduleSpec) -> bool:
    """Whether the degree-2 dual Specht factor occurs in this submodule.

    True iff some j in J has C(k-2, j-2) odd.  When true, the materialized
    space must contain the image of the level-2 map (an odd-parity j gives
    a factorization through level 2); that containment is checked here and
    a failure would be a real inconsistency.
    """
    if spec.k < 2:
        return False
    flag = any(binom_parity(spec.k - 2, j - 2) for j in spec.J)
    if flag:
        im2 = image_basis(alpha_matrix(2, spec.k, spec.n).mat)
        if not all(spec.materialized.contains_bits(b) for b in im2.basis):
            raise MathExpectationError(
                f"submodule J={spec.J} at (k={spec.k}, n={spec.n}) has the degree-2 "
                "factor but misses the level-2 image"
            )
    return flag


def composition_identity_check(j: int, k: int, ell: int, n: int) -> bool:
    """Check alpha(k,ell) . alpha(j,k) == C(ell-j, k-j) * alpha(j,ell) over GF(2)."""
    if not 0 <= j <= k <= ell <= n:
        raise ValueError(f"need j <= k <= ell <= n, got ({j}, {k}, {ell}, {n})")
    lhs = alpha_matrix(k, ell, n).mat.mul(alpha_matrix(j, k, n).mat)
    rhs = alpha_matrix(j, ell, n).mat.scale(binom_parity(ell - j, k - j))
    return lhs == rhs


@dataclass(frozen=True)
class LatticeNode:
    """One distinct standard submodule; J is the full set of contained levels."""

    J: tuple[int, ...]
    dim: int
    s2_factor: bool
    space: Subspace


@dataclass(frozen=True)
class LatticeReport:
    k: int
    n: int
    nodes: tuple[LatticeNode, ...]
    hasse: tuple[tuple[int, int], ...]


def lattice_report(k: int, n: int, size_bound: int | None = None) -> LatticeReport:
    """Enumerate all sums of alpha images, dedupe, and record the cover relation.

    All 2^(k+1) index sets J are materialized; distinct subspaces become
    nodes labelled by the closure J = {j : image of level j is contained}.
    Only standard submodules are listed; at small n the full lattice of
    invariant subspaces could in principle be larger, so this is a report,
    not a completeness claim.
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    size = comb(n, k)
    if size_bound is not None and size > size_bound:
        raise SizeBoundExceeded(f"C({n},{k}) = {size} exceeds size bound {size_bound}")

    levels = list(range(k + 1))
    images = {j: image_basis(alpha_matrix(j, k, n).mat) for j in levels}
    distinct: dict[Subspace, None] = {}
    for mask in range(1 << (k + 1)):
        J = [j for j in levels if (mask >> j) & 1]
        distinct.setdefault(standard_submodule(J, k, n).materialized, None)

    nodes = []
    for space in distinct:
        closure = tuple(
            j for j in levels if all(space.contains_bits(b) for b in images[j].basis)
        )
        spec = SubmoduleSpec(k, n, closure, space)
        nodes.append(LatticeNode(closure, space.dim, has_s2_factor(spec), space))
    nodes.sort(key=lambda nd: nd.J)

    below = {
        (i, j): nodes[i].space < nodes[j].space
        for i in range(len(nodes))
        for j in range(len(nodes))
        if i != j
    }
    hasse = []
    for (i, j), strict in sorted(below.items()):
        if not strict:
            continue
        if any(below[(i, m)] and below[(m, j)] for m in range(len(nodes)) if m not in (i, j)):
            continue
        hasse.append((i, j))

    # closure under the generating permutations, as a sanity check
    gens = [Perm.transposition(n, 1, 2), Perm.full_cycle(n)] if n >= 2 else []
    wk = KSubsetIndexer(n, k)
    for g in gens:
        ranks = [wk.rank(g.apply_subset(w)) for w in wk.subsets]
        for nd in nodes:
            for b in nd.space.basis:
                moved = 0
                while b:
                    i = (b & -b).bit_length() - 1
                    moved |= 1 << ranks[i]
                    b &= b - 1
                if not nd.space.contains_bits(moved):
                    raise MathExpectationError(
                        f"standard submodule J={nd.J} not invariant under {g}"
                    )

    return LatticeReport(k, n, tuple(nodes), tuple(hasse))
