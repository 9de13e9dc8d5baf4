"""Cohomology of Sym(n) on GF(2) modules by exact linear algebra.

Two independent solver paths decide whether a 2-cocycle is a coboundary
(equivalently, whether a kernel admits a full subgroup) and compute the
dimension of degree-1 cohomology:

* the generator-propagation solver parametrizes an unknown 1-cochain u by
  its values on the generating pair {(1 2), (1 2 .. n)}, propagates affine
  forms along a breadth-first Cayley tree, and imposes consistency on the
  non-tree edges, so the unknown count is 2*dim instead of |G|*dim;

* the dense solver keeps one unknown block u(g) per group element and
  eliminates explicit equation rows.  It uses literally all |G|^2 pairs
  while |G|*dim stays small, and otherwise the right-translation family
  {(h, s) : h in G, s a generator}, which determines the full system: the
  2-cocycle identity propagates the remaining equations by induction on
  word length.  Elimination pivots on the deepest group element first,
  which keeps fill-in near the Cayley-tree depth.

SAT certificates are re-verified pointwise over every ordered pair before
a positive answer is returned; UNSAT answers carry the rank gap of the
inconsistent system.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from symcover.errors import MathExpectationError
from symcover.gamma import CocycleTable
from symcover.gf2 import GF2Mat, GF2Vec, Subspace, kernel_basis, quotient_map
from symcover.kcomb import KSubsetIndexer, Perm
from symcover.specht import SubmoduleSpec

__all__ = [
    "CayleyGroup",
    "CoboundaryCertificate",
    "DENSE_ALL_PAIRS_LIMIT",
    "GModule",
    "full_subgroup_exists",
    "h1_dim",
    "is_2coboundary",
]

# Above this many unknowns (|G| * dim) the dense solver switches from all
# |G|^2 equation pairs to the generator-translate family.
DENSE_ALL_PAIRS_LIMIT = 5000


def symmetric_generators(n: int) -> tuple[Perm, ...]:
    """The fixed generating pair: a transposition and the full cycle."""
    if n < 2:
        return (Perm.identity(n),) if n == 1 else ()
    gens = [Perm.transposition(n, 1, 2), Perm.full_cycle(n)]
    if gens[0] == gens[1]:
        gens = gens[:1]
    return tuple(gens)


class CayleyGroup:
    """Sym(n) enumerated breadth-first from the fixed generators.

    Element 0 is the identity; tree[i] = (parent index, generator position)
    reconstructs each element as a left product of generators.
    """

    def __init__(self, n: int):
        self.n = n
        self.generators = symmetric_generators(n)
        elems = [Perm.identity(n)]
        index = {elems[0].images: 0}
        tree: list[tuple[int, int] | None] = [None]
        frontier = [0]
        while frontier:
            nxt = []
            for gi in frontier:
                g = elems[gi]
                for pos, s in enumerate(self.generators):
                    t = s * g
                    if t.images not in index:
                        index[t.images] = len(elems)
                        elems.append(t)
                        tree.append((gi, pos))
                        nxt.append(index[t.images])
            frontier = nxt
        self.elements: tuple[Perm, ...] = tuple(elems)
        self.index = index
        self.tree = tree
        self._prod: dict[tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def product_index(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._prod.get(key)
        if out is None:
            out = self.index[(self.elements[i] * self.elements[j]).images]
            self._prod[key] = out
        return out


@lru_cache(maxsize=None)
def cayley_group(n: int) -> CayleyGroup:
    return CayleyGroup(n)


class GModule:
    """A finite GF(2) module for Sym(n), given by generator action matrices.

    origin_kind records where the module came from: the ambient function
    space on k-subsets, a quotient of it by an invariant subspace (carrying
    the projection matrix), or a trivial module.  Only the first two can
    receive projected cocycle values.
    """

    def __init__(
        self,
        n: int,
        dim: int,
        gen_mats: tuple[GF2Mat, ...],
        origin_kind: str,
        k: int | None = None,
        proj: GF2Mat | None = None,
    ):
        self.n = n
        self.dim = dim
        self.generators = symmetric_generators(n)
        if len(gen_mats) != len(self.generators):
            raise ValueError("one action matrix per generator required")
        for m in gen_mats:
            if (m.nrows, m.cols) != (dim, dim):
                raise ValueError("action matrix shape mismatch")
            if len(kernel_basis(m).basis) != 0:
                raise ValueError("action matrix is not invertible")
        self.gen_mats = gen_mats
        self.origin_kind = origin_kind
        self.k = k
        self.proj = proj
        self._element_mats: tuple[GF2Mat, ...] | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _ambient_gen_mats(k: int, n: int) -> tuple[GF2Mat, ...]:
        idx = KSubsetIndexer(n, k)
        mats = []
        for s in symmetric_generators(n):
            si = s.inv()
            rows = tuple(1 << idx.rank(si.apply_subset(w)) for w in idx.subsets)
            mats.append(GF2Mat(rows, idx.size))
        return tuple(mats)

    @classmethod
    def ambient(cls, k: int, n: int) -> "GModule":
        """The full function space on k-subsets with the permutation action."""
        dim = KSubsetIndexer(n, k).size
        return cls(n, dim, cls._ambient_gen_mats(k, n), "ambient", k=k)

    @classmethod
    def quotient(cls, kernel: Subspace | SubmoduleSpec, k: int, n: int) -> "GModule":
        """The quotient of the ambient space by an invariant subspace."""
        if isinstance(kernel, SubmoduleSpec):
            kernel = kernel.materialized
        amb = cls._ambient_gen_mats(k, n)
        size = KSubsetIndexer(n, k).size
        if kernel.ambient_dim != size:
            raise ValueError("kernel lives in the wrong ambient space")
        q, d = quotient_map(kernel)
        pivset = {(b & -b).bit_length() - 1 for b in kernel.basis}
        nonpivots = [j for j in range(size) if j not in pivset]
        mats = []
        for a in amb:
            for b in kernel.basis:
                if not kernel.contains_bits(_matvec_bits(a, b)):
                    raise ValueError("subspace is not invariant; quotient undefined")
            qa = q.mul(a)
            rows = tuple(
                sum(((qa.rows[r] >> j) & 1) << jj for jj, j in enumerate(nonpivots))
                for r in range(d)
            )
            mats.append(GF2Mat(rows, d))
        return cls(n, d, tuple(mats), "quotient", k=k, proj=q)

    @classmethod
    def trivial(cls, n: int, dim: int = 1) -> "GModule":
        mats = tuple(GF2Mat.identity(dim) for _ in symmetric_generators(n))
        return cls(n, dim, mats, "trivial")

    @classmethod
    def zero(cls, n: int) -> "GModule":
        return cls.trivial(n, dim=0)

    # -- derived data -------------------------------------------------------

    def project_bits(self, ambient_bits: int) -> int:
        if self.origin_kind == "ambient":
            return ambient_bits
        if self.origin_kind == "quotient":
            out = 0
            for r, row in enumerate(self.proj.rows):
                if (row & ambient_bits).bit_count() & 1:
                    out |= 1 << r
            return out
        raise ValueError(f"cannot project cover values into a {self.origin_kind} module")

    def element_matrices(self, cayley: CayleyGroup) -> tuple[GF2Mat, ...]:
        """Action matrix of every group element, built along the BFS tree.

        Revisits of known elements compare the two word products, so this
        doubles as the check that the action respects the group relations.
        """
        if self._element_mats is not None:
            return self._element_mats
        mats: list[GF2Mat | None] = [None] * len(cayley)
        mats[0] = GF2Mat.identity(self.dim)
        for i in range(1, len(cayley)):
            parent, pos = cayley.tree[i]
            mats[i] = self.gen_mats[pos].mul(mats[parent])
        for i, g in enumerate(cayley.elements):
            for pos, s in enumerate(self.generators):
                t = cayley.index[(s * g).images]
                expect = self.gen_mats[pos].mul(mats[i])
                if expect != mats[t]:
                    raise MathExpectationError(
                        "generator action violates the group relations"
                    )
        self._element_mats = tuple(mats)
        return self._element_mats

    def fixed_dim(self) -> int:
        if self.dim == 0:
            return 0
        stacked = GF2Mat.vstack([m + GF2Mat.identity(self.dim) for m in self.gen_mats])
        return kernel_basis(stacked).dim


def _matvec_bits(m: GF2Mat, v: int) -> int:
    out = 0
    for i, row in enumerate(m.rows):
        if (row & v).bit_count() & 1:
            out |= 1 << i
    return out


@dataclass(frozen=True)
class CoboundaryCertificate:
    """Outcome of a coboundary solve.

    SAT carries u on the generators plus the full table over the group
    (bits per element, BFS order) and the number of verified pairs; UNSAT
    carries the rank gap rank(augmented) - rank(homogeneous) >= 1.
    """

    sat: bool
    method: str
    u_on_generators: tuple[GF2Vec, ...] | None = None
    u_table: tuple[int, ...] | None = None
    rank_gap: int | None = None
    verified_pairs: int = 0


class _StreamREF:
    """Streaming row-echelon accumulator over packed rows; pivot = lowest bit."""

    def __init__(self, rhs_col: int):
        self.rhs_col = rhs_col
        self.pivrows: dict[int, int] = {}
        self.inconsistent = False

    def add(self, row: int) -> bool:
        while row:
            p = (row & -row).bit_length() - 1
            b = self.pivrows.get(p)
            if b is None:
                self.pivrows[p] = row
                if p == self.rhs_col:
                    self.inconsistent = True
                return not self.inconsistent
            row ^= b
        return True

    @property
    def rank_gap(self) -> int:
        return 1 if self.inconsistent else 0

    def rank_homogeneous(self) -> int:
        return len(self.pivrows) - self.rank_gap

    def particular_solution(self) -> int:
        """Free variables zero; valid only while consistent."""
        if self.inconsistent:
            raise ValueError("no solution: system is inconsistent")
        x = 0
        for p in sorted(self.pivrows, reverse=True):
            row = self.pivrows[p]
            val = (row >> self.rhs_col) & 1
            val ^= ((row & x)).bit_count() & 1
            if val:
                x |= 1 << p
        return x


# -- generator-propagation solver --------------------------------------------


def _propagate(
    cayley: CayleyGroup,
    module: GModule,
    cbar: Optional[Callable[[int, int], int]],
):
    """Affine forms u(g) = M_g x + b_g over x = (u on generators).

    Returns (forms, constraint REF).  Each form is a list of dim rows over
    nvars + 1 columns, the top column holding the affine constant.  cbar
    maps (generator position, element index) to projected cocycle bits;
    None means the zero cochain (the degree-1 setting).
    """
    d = module.dim
    m = len(cayley.generators)
    nvars = m * d
    const = 1 << nvars
    forms: list[list[int] | None] = [None] * len(cayley)
    forms[0] = [0] * d
    ref = _StreamREF(nvars)
    gen_rows = [mat.rows for mat in module.gen_mats]
    order = sorted(range(1, len(cayley)), key=lambda i: i)
    for i in [0] + order:
        fg = forms[i]
        if fg is None:
            raise MathExpectationError("BFS order broken")  # pragma: no cover
        for pos in range(m):
            t = cayley.product_index(cayley.index[cayley.generators[pos].images], i)
            rows_t = []
            for r in range(d):
                acc = 1 << (pos * d + r)
                ab = gen_rows[pos][r]
                while ab:
                    j = (ab & -ab).bit_length() - 1
                    acc ^= fg[j]
                    ab &= ab - 1
                if cbar is not None and (cbar(pos, i) >> r) & 1:
                    acc ^= const
                rows_t.append(acc)
            if forms[t] is None:
                forms[t] = rows_t
            else:
                for a, b in zip(rows_t, forms[t]):
                    ref.add(a ^ b)
    return forms, ref


def _prop_solve(table: CocycleTable, module: GModule) -> CoboundaryCertificate:
    cayley = cayley_group(module.n)
    d = module.dim
    m = len(cayley.generators)
    proj_cache: dict[tuple[int, int], int] = {}

    def cbar(pos: int, gi: int) -> int:
        key = (pos, gi)
        val = proj_cache.get(key)
        if val is None:
            val = module.project_bits(table.bits(cayley.generators[pos], cayley.elements[gi]))
            proj_cache[key] = val
        return val

    forms, ref = _propagate(cayley, module, cbar if d else None)
    if ref.inconsistent:
        return CoboundaryCertificate(False, "propagation", rank_gap=ref.rank_gap)
    x = ref.particular_solution() | (1 << (m * d))
    u_table = tuple(
        sum(((row & x).bit_count() & 1) << r for r, row in enumerate(forms[i]))
        for i in range(len(cayley))
    )
    u_gens = tuple(
        GF2Vec(d, u_table[cayley.index[s.images]]) for s in cayley.generators
    )
    return CoboundaryCertificate(True, "propagation", u_gens, u_table)


# -- dense solver --------------------------------------------------------------


def _dense_pairs(cayley: CayleyGroup, d: int) -> tuple[list[tuple[int, int]], bool]:
    n_elems = len(cayley)
    if n_elems * d <= DENSE_ALL_PAIRS_LIMIT:
        return [(h, g) for h in range(n_elems) for g in range(n_elems)], True
    gen_idx = [cayley.index[s.images] for s in cayley.generators]
    return [(h, s) for h in range(n_elems) for s in gen_idx], False


def _dense_solve(table: CocycleTable | None, module: GModule) -> CoboundaryCertificate:
    """Solve with one unknown block per group element.

    table = None solves the homogeneous (degree-1) system; the certificate
    then only reports the nullity through rank_gap abuse-free fields, so
    callers use _dense_solve for membership and _dense_z1_dim for H^1.
    """
    cayley = cayley_group(module.n)
    d = module.dim
    n_elems = len(cayley)
    if d == 0:
        return CoboundaryCertificate(True, "dense", (), (0,) * n_elems)
    pairs, _ = _dense_pairs(cayley, d)
    mats = module.element_matrices(cayley)
    rhs_col = n_elems * d
    ref = _StreamREF(rhs_col)

    def col(gi: int, r: int) -> int:
        return (n_elems - 1 - gi) * d + r

    for hi, gi in pairs:
        hgi = cayley.product_index(hi, gi)
        c = module.project_bits(table.bits(cayley.elements[hi], cayley.elements[gi])) if table else 0
        ah = mats[hi].rows
        for r in range(d):
            row = (1 << col(hgi, r)) ^ (1 << col(hi, r))
            ab = ah[r]
            while ab:
                j = (ab & -ab).bit_length() - 1
                row ^= 1 << col(gi, j)
                ab &= ab - 1
            if (c >> r) & 1:
                row ^= 1 << rhs_col
            if row and not ref.add(row):
                return CoboundaryCertificate(False, "dense", rank_gap=ref.rank_gap)
    x = ref.particular_solution()
    u_table = tuple(
        sum(((x >> col(gi, r)) & 1) << r for r in range(d)) for gi in range(n_elems)
    )
    u_gens = tuple(GF2Vec(d, u_table[cayley.index[s.images]]) for s in cayley.generators)
    return CoboundaryCertificate(True, "dense", u_gens, u_table)


def _dense_z1_dim(module: GModule) -> int:
    cayley = cayley_group(module.n)
    d = module.dim
    if d == 0:
        return 0
    pairs, _ = _dense_pairs(cayley, d)
    mats = module.element_matrices(cayley)
    n_elems = len(cayley)
    ref = _StreamREF(n_elems * d)

    def col(gi: int, r: int) -> int:
        return (n_elems - 1 - gi) * d + r

    for hi, gi in pairs:
        hgi = cayley.product_index(hi, gi)
        ah = mats[hi].rows
        for r in range(d):
            row = (1 << col(hgi, r)) ^ (1 << col(hi, r))
            ab = ah[r]
            while ab:
                j = (ab & -ab).bit_length() - 1
                row ^= 1 << col(gi, j)
                ab &= ab - 1
            if row:
                ref.add(row)
    return n_elems * d - ref.rank_homogeneous()


# -- public operations ---------------------------------------------------------


def _verify_pointwise(
    cayley: CayleyGroup,
    module: GModule,
    table: CocycleTable,
    u_table: tuple[int, ...],
) -> int:
    """Check u(hg) + u(h) + h.u(g) = cbar(h, g) on every ordered pair."""
    if module.dim == 0:
        return len(cayley) ** 2
    mats = module.element_matrices(cayley)
    checked = 0
    for hi, h in enumerate(cayley.elements):
        ah = mats[hi]
        uh = u_table[hi]
        for gi, g in enumerate(cayley.elements):
            hgi = cayley.product_index(hi, gi)
            lhs = u_table[hgi] ^ uh ^ _matvec_bits(ah, u_table[gi])
            if lhs != module.project_bits(table.bits(h, g)):
                raise MathExpectationError(
                    f"certificate fails at pair ({h}, {g}); the projected "
                    "cochain is not a genuine 2-cocycle"
                )
            checked += 1
    return checked


def is_2coboundary(
    table: CocycleTable, module: GModule, method: str = "propagation"
) -> CoboundaryCertificate:
    """Decide whether the projected cocycle is a coboundary over the module.

    method is "propagation", "dense", or "both" (solve twice and require
    matching verdicts).  A SAT certificate is verified pointwise over all
    |G|^2 pairs before it is returned.
    """
    if module.origin_kind not in ("ambient", "quotient"):
        raise ValueError("module does not carry cover coordinates")
    if table.n != module.n or table.k != module.k:
        raise ValueError(
            f"cocycle table is for (k={table.k}, n={table.n}), module for "
            f"(k={module.k}, n={module.n})"
        )
    if table.bits(Perm.identity(table.n), Perm.identity(table.n)) != 0:
        raise ValueError("cocycle table is not normalized")
    if method == "both":
        a = is_2coboundary(table, module, "propagation")
        b = is_2coboundary(table, module, "dense")
        if a.sat != b.sat:
            raise MathExpectationError(
                f"solver paths disagree: propagation={a.sat}, dense={b.sat}"
            )
        return a
    if method == "propagation":
        cert = _prop_solve(table, module)
    elif method == "dense":
        cert = _dense_solve(table, module)
    else:
        raise ValueError(f"unknown method {method!r}")
    if cert.sat:
        checked = _verify_pointwise(cayley_group(module.n), module, table, cert.u_table)
        cert = CoboundaryCertificate(
            True, cert.method, cert.u_on_generators, cert.u_table, None, checked
        )
    return cert


def h1_dim(module: GModule, method: str = "propagation") -> int:
    """dim Z^1 - dim B^1 for this module, a finite-scale value.

    This is computed for the finite group Sym(n); it need not agree with
    the continuous cohomology of the infinite-degree symmetric group.
    """
    if method == "both":
        a = h1_dim(module, "propagation")
        b = h1_dim(module, "dense")
        if a != b:
            raise MathExpectationError(f"H^1 solver paths disagree: {a} vs {b}")
        return a
    d = module.dim
    if d == 0:
        return 0
    b1 = d - module.fixed_dim()
    if method == "propagation":
        cayley = cayley_group(module.n)
        _, ref = _propagate(cayley, module, None)
        z1 = len(cayley.generators) * d - ref.rank_homogeneous()
    elif method == "dense":
        z1 = _dense_z1_dim(module)
    else:
        raise ValueError(f"unknown method {method!r}")
    return z1 - b1


def full_subgroup_exists(
    kernel: Subspace | SubmoduleSpec,
    k: int,
    n: int,
    method: str = "both",
) -> tuple[bool, CoboundaryCertificate]:
    """Whether the cover group has a full subgroup meeting the kernel in
    exactly this invariant subspace.

    Projects the order cocycle into the quotient by the subspace and asks
    whether it becomes a coboundary there.
    """
    module = GModule.quotient(kernel, k, n)
    table = CocycleTable(k, n)
    cert = is_2coboundary(table, module, method=method)
    return cert.sat, cert
