"""The explicit 4-element-fibre cover of the k-subset action of Sym(n).

Points of the cover are pairs (a, w) with a in Z4 and w a k-subset.  The
cover group consists of pairs (f, g): a function f from k-subsets into
{0, 2} inside Z4 (stored as bits, bit value b encoding 2b) together with
a permutation g, acting by

    (f, g) . (a, w) = (a + f(gw) + eps_k(g, w), gw)   in Z4,

where eps_k(g, w) counts the order inversions g produces among the pairs
inside w.  Composing two of these bijections forces the group law

    (l, h) (f, g) = (l + h.f + c(h, g), hg),   (h.f)(w) = f(h^{-1} w),

with a 2-cocycle c whose values are always even, stored halved as bits.
Evaluating the inversion-count defect at the source k-set u and writing
the result at its target w = hg(u) is what makes this law associate; the
defect read off at w itself satisfies the mirror-image (right-twisted)
cocycle identity instead and does not match the left twist used here.
The tests pin the convention by checking both composition orders.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from symcover.errors import OddCocycleValue
from symcover.gf2 import GF2Vec
from symcover.kcomb import KSubsetIndexer, Perm, binom_parity, restriction_sign
from symcover.specht import alpha_matrix

__all__ = [
    "CocycleTable",
    "CoverPoint",
    "FibreAction",
    "Gamma",
    "GammaElement",
    "binding_group",
    "chi_w",
    "cocycle",
    "eps2",
    "eps_k",
    "fibre_group",
    "gamma_lift",
]


def eps2(g: Perm, w) -> int:
    """0 if g preserves the order of the pair w = {w1 < w2}, else 1."""
    w = tuple(sorted(w))
    if len(w) != 2:
        raise ValueError(f"expected a 2-subset, got {w!r}")
    return 0 if g(w[0]) < g(w[1]) else 1


def eps_k(g: Perm, w) -> int:
    """Inversion count of g over the pairs inside w, reduced mod 4."""
    w = tuple(sorted(w))
    if len(w) < 2:
        raise ValueError(f"expected a k-subset with k >= 2, got {w!r}")
    total = 0
    for y in combinations(w, 2):
        if g(y[0]) > g(y[1]):
            total += 1
    return total & 3


class CoverPoint(NamedTuple):
    """A point of the cover: a residue mod 4 over a k-subset."""

    a: int
    w: tuple[int, ...]


@dataclass(frozen=True)
class GammaElement:
    """A cover automorphism: bits of a {0,2}-valued function plus a permutation."""

    k: int
    n: int
    f: GF2Vec
    g: Perm


class Gamma:
    """Working context for the cover group at fixed (k, n): products,
    inverses, the action, and the order cocycle, with per-permutation
    caches for the inversion counts and the induced rank permutations."""

    def __init__(self, k: int, n: int):
        if not 2 <= k <= n:
            raise ValueError(f"need 2 <= k <= n, got ({k}, {n})")
        self.k = k
        self.n = n
        self.indexer = KSubsetIndexer(n, k)
        self._eps: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._ranks: dict[tuple[int, ...], tuple[int, ...]] = {}

    # -- per-permutation tables -------------------------------------------

    def eps_table(self, g: Perm) -> tuple[int, ...]:
        """eps_k(g, w) mod 4 for every w, indexed by colex rank."""
        tab = self._eps.get(g.images)
        if tab is None:
            tab = tuple(eps_k(g, w) for w in self.indexer.subsets)
            self._eps[g.images] = tab
        return tab

    def rank_action(self, g: Perm) -> tuple[int, ...]:
        """rank(g w) for every w, indexed by rank(w)."""
        tab = self._ranks.get(g.images)
        if tab is None:
            tab = tuple(self.indexer.rank(g.apply_subset(w)) for w in self.indexer.subsets)
            self._ranks[g.images] = tab
        return tab

    def twist_bits(self, h: Perm, f_bits: int) -> int:
        """Bits of w -> f(h^{-1} w): bit rank(h v) receives bit rank(v)."""
        act = self.rank_action(h)
        out = 0
        while f_bits:
            i = (f_bits & -f_bits).bit_length() - 1
            out |= 1 << act[i]
            f_bits &= f_bits - 1
        return out

    # -- cocycle -----------------------------------------------------------

    def cocycle_bits(self, h: Perm, g: Perm) -> int:
        """Halved values of the composition cocycle c(h, g), packed as bits.

        For each source k-set u, the Z4 defect
        eps_k(g, u) + eps_k(h, gu) - eps_k(hg, u) is asserted even and its
        half is written at the target coordinate rank(hg u).
        """
        eg = self.eps_table(g)
        eh = self.eps_table(h)
        hg = h * g
        ehg = self.eps_table(hg)
        gact = self.rank_action(g)
        hgact = self.rank_action(hg)
        bits = 0
        for u in range(self.indexer.size):
            val = (eg[u] + eh[gact[u]] - ehg[u]) & 3
            if val & 1:
                raise OddCocycleValue(
                    f"odd cocycle value {val} at source rank {u} for h={h}, g={g}"
                )
            if val:
                bits |= 1 << hgact[u]
        return bits

    def cocycle(self, h: Perm, g: Perm) -> GF2Vec:
        return GF2Vec(self.indexer.size, self.cocycle_bits(h, g))

    # -- group structure ---------------------------------------------------

    def identity(self) -> GammaElement:
        return GammaElement(self.k, self.n, GF2Vec.zero(self.indexer.size), Perm.identity(self.n))

    def element(self, f_bits: int, g: Perm) -> GammaElement:
        return GammaElement(self.k, self.n, GF2Vec(self.indexer.size, f_bits), g)

    def _check(self, x: GammaElement):
        if (x.k, x.n) != (self.k, self.n):
            raise ValueError(f"element of Gamma_{x.k}({x.n}) used in Gamma_{self.k}({self.n})")

    def mult(self, x: GammaElement, y: GammaElement) -> GammaElement:
        """(l, h)(f, g) = (l + h.f + c(h, g), hg)."""
        self._check(x)
        self._check(y)
        bits = x.f.bits ^ self.twist_bits(x.g, y.f.bits) ^ self.cocycle_bits(x.g, y.g)
        return self.element(bits, x.g * y.g)

    def inv(self, x: GammaElement) -> GammaElement:
        """(f, g)^{-1} = (g^{-1}.f + c(g^{-1}, g), g^{-1}); verified two-sided in tests."""
        self._check(x)
        gi = x.g.inv()
        bits = self.twist_bits(gi, x.f.bits) ^ self.cocycle_bits(gi, x.g)
        return self.element(bits, gi)

    def act(self, x: GammaElement, p: CoverPoint) -> CoverPoint:
        """(f, g).(a, w) = (a + f(gw) + eps_k(g, w), gw) in Z4."""
        self._check(x)
        r = self.indexer.rank(p.w)
        tr = self.rank_action(x.g)[r]
        a = (p.a + 2 * ((x.f.bits >> tr) & 1) + self.eps_table(x.g)[r]) & 3
        return CoverPoint(a, self.indexer.unrank(tr))

    def points(self) -> list[CoverPoint]:
        return [CoverPoint(a, w) for w in self.indexer.subsets for a in range(4)]

    def random_element(self, rng) -> GammaElement:
        imgs = list(range(1, self.n + 1))
        rng.shuffle(imgs)
        return self.element(rng.getrandbits(self.indexer.size), Perm(tuple(imgs)))


def cocycle(h: Perm, g: Perm, k: int) -> GF2Vec:
    """Convenience wrapper around Gamma(k, n).cocycle for n = degree of g."""
    return _gamma(k, g.n).cocycle(h, g)


@lru_cache(maxsize=None)
def _gamma(k: int, n: int) -> Gamma:
    return Gamma(k, n)


class CocycleTable:
    """Cache of cocycle vectors over ordered pairs of permutations."""

    def __init__(self, k: int, n: int):
        self.gamma = _gamma(k, n)
        self.k = k
        self.n = n
        self.size = self.gamma.indexer.size
        self._vals: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}

    def bits(self, h: Perm, g: Perm) -> int:
        key = (h.images, g.images)
        val = self._vals.get(key)
        if val is None:
            val = self.gamma.cocycle_bits(h, g)
            self._vals[key] = val
        return val

    def vec(self, h: Perm, g: Perm) -> GF2Vec:
        return GF2Vec(self.size, self.bits(h, g))


# -- fibre data -------------------------------------------------------------


@dataclass(frozen=True)
class FibreAction:
    """Permutations of one 4-element fibre induced by a subgroup of the cover."""

    maps: frozenset[tuple[int, int, int, int]]

    @property
    def translations(self) -> frozenset[int] | None:
        """The shift amounts, if every induced map is a + t; else None."""
        shifts = set()
        for m in self.maps:
            t = m[0]
            if any(m[a] != (a + t) & 3 for a in range(4)):
                return None
            shifts.add(t)
        return frozenset(shifts)

    @property
    def is_regular_z4(self) -> bool:
        return self.translations == frozenset({0, 1, 2, 3})

    @property
    def is_z2(self) -> bool:
        return self.translations == frozenset({0, 2})

    @property
    def order(self) -> int:
        return len(self.maps)

    def contains(self, other: "FibreAction") -> bool:
        return other.maps <= self.maps


def _close_maps(gens: list[tuple[int, int, int, int]]) -> frozenset:
    ident = (0, 1, 2, 3)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for m in frontier:
            for gmap in gens:
                comp = tuple(gmap[m[a]] for a in range(4))
                if comp not in seen:
                    seen.add(comp)
                    nxt.append(comp)
        frontier = nxt
    return frozenset(seen)


def _stabilizer_generators(w, n: int) -> list[Perm]:
    w = tuple(sorted(w))
    rest = tuple(x for x in range(1, n + 1) if x not in w)
    gens = []
    for grp in (w, rest):
        for a, b in zip(grp, grp[1:]):
            gens.append(Perm.transposition(n, a, b))
    return gens


def fibre_group(w, k: int, n: int) -> FibreAction:
    """The permutation group induced on the fibre over w by its setwise
    stabilizer in the cover group.  Expected: all four translations of Z4."""
    gam = _gamma(k, n)
    w = tuple(sorted(w))
    r = gam.indexer.rank(w)
    gens = []
    # kernel part: a function supported on w shifts the fibre by 2
    gens.append(tuple((a + 2) & 3 for a in range(4)))
    for g in _stabilizer_generators(w, n):
        t = gam.eps_table(g)[r]
        gens.append(tuple((a + t) & 3 for a in range(4)))
    return FibreAction(_close_maps(gens))


def binding_group(w, k: int, n: int) -> FibreAction:
    """The permutation group induced on the fibre over w by the kernel
    (all (f, id)).  Expected: the two translations {+0, +2}."""
    gam = _gamma(k, n)
    w = tuple(sorted(w))
    gens = [tuple((a + 2) & 3 for a in range(4))]
    # functions vanishing at w act trivially; include one for completeness
    gens.append((0, 1, 2, 3))
    del gam
    return FibreAction(_close_maps(gens))


def chi_w(g: Perm, w) -> int:
    """Sign of g restricted to a setwise-stabilized w; equals eps_k(g, w) mod 2."""
    return restriction_sign(g, w)


# -- lifting between levels --------------------------------------------------


def gamma_lift(x: GammaElement, ell: int) -> GammaElement:
    """Push an element of the level-k cover group up to level ell.

    The kernel part is pushed through the inclusion map alpha(k, ell); the
    permutation part is unchanged.  This is a homomorphism precisely when
    C(ell-2, k-2) is odd, so that parity is a hard precondition.
    """
    k, n = x.k, x.n
    if not k <= ell <= n:
        raise ValueError(f"need k <= ell <= n, got k={k}, ell={ell}, n={n}")
    if binom_parity(ell - 2, k - 2) != 1:
        raise ValueError(
            f"lift from level {k} to {ell} requires C({ell - 2}, {k - 2}) odd; "
            "an even value makes the pushed cocycle vanish and the map is no "
            "longer a homomorphism"
        )
    amat = alpha_matrix(k, ell, n).mat
    return GammaElement(ell, n, amat.mat_vec(x.f), x.g)
