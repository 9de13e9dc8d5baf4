"""k-subsets of {1..n} in colex order, permutations, and binomial parity.

A k-subset is always a sorted tuple of ints from the ground set {1..n}.
Colex order compares subsets by their largest differing element, so a
subset keeps its rank when n grows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from math import comb

__all__ = [
    "KSubsetIndexer",
    "Perm",
    "apply_subset",
    "binom_parity",
    "parse_perm",
    "restriction_sign",
]


def binom_parity(a: int, b: int) -> int:
    """Return 1 if C(a, b) is odd, 0 otherwise.

    Base-2 digit criterion: C(a, b) is odd iff every binary digit of b is
    dominated by the matching digit of a.  For b < 0 or b > a the binomial
    coefficient is 0, hence parity 0; in particular a negative lower index
    is allowed and contributes nothing.
    """
    if a < 0:
        raise ValueError(f"binom_parity requires a >= 0, got a={a}")
    if b < 0 or b > a:
        return 0
    return int(a & b == b)


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation of {1..n}, stored as its tuple of images.

    ``images[i-1]`` is the image of the point i.  Products compose right
    to left: ``(g * h)(x) == g(h(x))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    @staticmethod
    def identity(n: int) -> "Perm":
        return Perm(tuple(range(1, n + 1)))

    @staticmethod
    def transposition(n: int, a: int, b: int) -> "Perm":
        if not (1 <= a <= n and 1 <= b <= n and a != b):
            raise ValueError(f"bad transposition ({a} {b}) on 1..{n}")
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return Perm(tuple(images))

    @staticmethod
    def full_cycle(n: int) -> "Perm":
        """The n-cycle 1 -> 2 -> ... -> n -> 1."""
        return Perm(tuple(range(2, n + 1)) + (1,))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if other.n != self.n:
            raise ValueError(f"degree mismatch: {self.n} vs {other.n}")
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inv(self) -> "Perm":
        out = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            out[im - 1] = i
        return Perm(tuple(out))

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images, start=1))

    def apply_subset(self, w) -> tuple[int, ...]:
        """Elementwise image of a subset, re-sorted."""
        return tuple(sorted(self.images[i - 1] for i in w))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least point."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_perm(text: str, n: int) -> Perm:
    """Parse cycle notation like ``(1 2)(3 4 5)`` into a permutation of {1..n}.

    The identity is spelled ``id``.  Points inside a cycle may be separated
    by spaces or commas.
    """
    text = text.strip()
    if text == "id":
        return Perm.identity(n)
    pieces = _CYCLE_RE.findall(text)
    if not pieces or _CYCLE_RE.sub("", text).strip():
        raise ValueError(f"cannot parse permutation {text!r}")
    images = list(range(1, n + 1))
    for body in reversed(pieces):
        pts = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if len(pts) != len(set(pts)):
            raise ValueError(f"repeated point in cycle ({body})")
        if any(not 1 <= p <= n for p in pts):
            raise ValueError(f"point out of range 1..{n} in cycle ({body})")
        if len(pts) < 2:
            continue
        # apply this cycle after the ones parsed so far (right-to-left product)
        cyc = {pts[i]: pts[(i + 1) % len(pts)] for i in range(len(pts))}
        images = [cyc.get(im, im) for im in images]
    return Perm(tuple(images))


def apply_subset(g: Perm, w) -> tuple[int, ...]:
    return g.apply_subset(w)


def restriction_sign(g: Perm, w) -> int:
    """Parity (0 even, 1 odd) of the permutation g induces on the set w.

    g must stabilize w setwise.
    """
    w = tuple(sorted(w))
    if g.apply_subset(w) != w:
        raise ValueError(f"{g} does not stabilize {w} setwise")
    pos = {x: i for i, x in enumerate(w)}
    target = [pos[g(x)] for x in w]
    seen = [False] * len(w)
    parity = 0
    for i in range(len(w)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = target[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


class KSubsetIndexer:
    """Colex bijection between k-subsets of {1..n} and ranks [0, C(n,k)).

    w < w' in colex iff the largest element of the symmetric difference
    lies in w'.  Equivalently rank(w) = sum_i C(w_i - 1, i) over the sorted
    elements w_1 < ... < w_k.
    """

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        self.n = n
        self.k = k
        self.size = comb(n, k)
        self.subsets: tuple[tuple[int, ...], ...] = tuple(
            sorted(combinations(range(1, n + 1), k), key=lambda w: w[::-1])
        )
        self._rank = {w: r for r, w in enumerate(self.subsets)}

    def rank(self, w) -> int:
        key = tuple(sorted(w))
        if len(key) != self.k:
            raise ValueError(f"expected a {self.k}-subset, got {w!r}")
        try:
            return self._rank[key]
        except KeyError:
            raise ValueError(f"{w!r} is not a subset of 1..{self.n}") from None

    def unrank(self, r: int) -> tuple[int, ...]:
        if not 0 <= r < self.size:
            raise ValueError(f"rank {r} out of range [0, {self.size})")
        return self.subsets[r]

    def __len__(self) -> int:
        return self.size
