"""Exact linear algebra over the 2-element field on integer bitsets.

Vectors and matrix rows are Python ints used as packed bit arrays
(bit j = coordinate j), so row operations are word-parallel xors and
every value is immutable.  Vectors of a function space are columns;
matrices act by left multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "GF2Mat",
    "GF2Vec",
    "Subspace",
    "image_basis",
    "kernel_basis",
    "quotient_map",
    "rank",
    "solve",
    "subspace_sum",
]


@dataclass(frozen=True)
class GF2Vec:
    """A fixed-length vector over GF(2), coordinates packed into one int."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @staticmethod
    def zero(n: int) -> "GF2Vec":
        return GF2Vec(n, 0)

    @staticmethod
    def from_coords(coords: Iterable[int]) -> "GF2Vec":
        bits = 0
        n = 0
        for c in coords:
            if c & 1:
                bits |= 1 << n
            n += 1
        return GF2Vec(n, bits)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "GF2Vec") -> "GF2Vec":
        if other.length != self.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return GF2Vec(self.length, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def to01(self) -> str:
        return "".join(str((self.bits >> i) & 1) for i in range(self.length))


@dataclass(frozen=True)
class GF2Mat:
    """A rows x cols matrix over GF(2); each row is one packed int."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise ValueError("negative column count")
        for r in self.rows:
            if r < 0 or r >> self.cols:
                raise ValueError(f"row does not fit in {self.cols} columns")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @staticmethod
    def zeros(nrows: int, cols: int) -> "GF2Mat":
        return GF2Mat((0,) * nrows, cols)

    @staticmethod
    def identity(n: int) -> "GF2Mat":
        return GF2Mat(tuple(1 << i for i in range(n)), n)

    @staticmethod
    def from_entries(entries) -> "GF2Mat":
        nrows = len(entries)
        cols = len(entries[0]) if nrows else 0
        rows = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            bits = 0
            for j, e in enumerate(row):
                if e & 1:
                    bits |= 1 << j
            rows.append(bits)
        return GF2Mat(tuple(rows), cols)

    @staticmethod
    def vstack(mats: Iterable["GF2Mat"]) -> "GF2Mat":
        mats = list(mats)
        if not mats:
            raise ValueError("nothing to stack")
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column counts differ")
        return GF2Mat(tuple(r for m in mats for r in m.rows), cols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def row_vec(self, i: int) -> GF2Vec:
        return GF2Vec(self.cols, self.rows[i])

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.rows)

    def __add__(self, other: "GF2Mat") -> "GF2Mat":
        if (self.nrows, self.cols) != (other.nrows, other.cols):
            raise ValueError("shape mismatch")
        return GF2Mat(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.cols)

    def mul(self, other: "GF2Mat") -> "GF2Mat":
        """Matrix product self @ other over GF(2)."""
        if self.cols != other.nrows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.nrows}")
        out = []
        for r in self.rows:
            acc = 0
            while r:
                acc ^= other.rows[(r & -r).bit_length() - 1]
                r &= r - 1
            out.append(acc)
        return GF2Mat(tuple(out), other.cols)

    def mat_vec(self, v: GF2Vec) -> GF2Vec:
        """Apply to a column vector: (A v)_i = parity(row_i & v)."""
        if v.length != self.cols:
            raise ValueError(f"vector length {v.length} != cols {self.cols}")
        bits = 0
        for i, r in enumerate(self.rows):
            if (r & v.bits).bit_count() & 1:
                bits |= 1 << i
        return GF2Vec(self.nrows, bits)

    def transpose(self) -> "GF2Mat":
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            while r:
                j = (r & -r).bit_length() - 1
                out[j] |= 1 << i
                r &= r - 1
        return GF2Mat(tuple(out), self.nrows)

    def scale(self, bit: int) -> "GF2Mat":
        return self if bit & 1 else GF2Mat.zeros(self.nrows, self.cols)

    def to_text(self) -> str:
        """Dump format: first line ``rows cols``, then one 0/1 line per row."""
        lines = [f"{self.nrows} {self.cols}"]
        lines.extend(self.row_vec(i).to01() for i in range(self.nrows))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "GF2Mat":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, cols = map(int, lines[0].split())
        if len(lines) - 1 != nrows:
            raise ValueError("row count does not match header")
        rows = []
        for ln in lines[1:]:
            ln = ln.strip()
            if len(ln) != cols or set(ln) - {"0", "1"}:
                raise ValueError(f"bad row line {ln!r}")
            rows.append(int(ln[::-1], 2) if ln else 0)
        return GF2Mat(tuple(rows), cols)


def _reduce(v: int, basis: list[int]) -> int:
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def _rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row-echelon basis, rows sorted by pivot (lowest set bit)."""
    basis: list[int] = []
    for v in vectors:
        v = _reduce(v, basis)
        if not v:
            continue
        low = v & -v
        basis = [b ^ v if b & low else b for b in basis]
        basis.append(v)
        basis.sort(key=lambda r: r & -r)
    return tuple(basis)


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^ambient_dim with a canonical row-reduced basis.

    Equality of subspaces is plain equality of the canonical bases.
    """

    ambient_dim: int
    basis: tuple[int, ...]

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[int]) -> "Subspace":
        vecs = list(vectors)
        for v in vecs:
            if v < 0 or v >> ambient_dim:
                raise ValueError(f"vector does not fit in ambient dim {ambient_dim}")
        return Subspace(ambient_dim, _rref(vecs))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, tuple(1 << i for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_bits(self, bits: int) -> bool:
        return _reduce(bits, list(self.basis)) == 0

    def contains(self, v: GF2Vec) -> bool:
        if v.length != self.ambient_dim:
            raise ValueError(f"ambient mismatch: {v.length} vs {self.ambient_dim}")
        return self.contains_bits(v.bits)

    def __le__(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient mismatch")
        return all(other.contains_bits(b) for b in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def basis_vectors(self) -> list[GF2Vec]:
        return [GF2Vec(self.ambient_dim, b) for b in self.basis]


def rank(m: GF2Mat) -> int:
    """Row rank over GF(2)."""
    return len(_rref(m.rows))


def solve(a: GF2Mat, b: GF2Vec) -> Optional[GF2Vec]:
    """Some x with a @ x = b, or None if the system is inconsistent."""
    if b.length != a.nrows:
        raise ValueError(f"rhs length {b.length} != rows {a.nrows}")
    rhs_bit = 1 << a.cols
    aug = [r | (rhs_bit if (b.bits >> i) & 1 else 0) for i, r in enumerate(a.rows)]
    x = 0
    for e in _rref(aug):
        low = e & -e
        if low == rhs_bit:
            return None
        if e & rhs_bit:
            x |= low
    out = GF2Vec(a.cols, x)
    if a.mat_vec(out).bits != b.bits:  # pragma: no cover - elimination is exact
        raise AssertionError("solve produced a non-solution")
    return out


def kernel_basis(a: GF2Mat) -> Subspace:
    """The solution space {x : a @ x = 0} as a subspace of GF(2)^cols."""
    eqs = _rref(a.rows)
    pivots = [(e & -e).bit_length() - 1 for e in eqs]
    pivset = set(pivots)
    vecs = []
    for f in range(a.cols):
        if f in pivset:
            continue
        v = 1 << f
        for e, p in zip(eqs, pivots):
            if (e >> f) & 1:
                v |= 1 << p
        vecs.append(v)
    return Subspace.from_vectors(a.cols, vecs)


def image_basis(a: GF2Mat) -> Subspace:
    """The column space {a @ x} as a subspace of GF(2)^rows."""
    return Subspace.from_vectors(a.nrows, a.transpose().rows)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    if s1.ambient_dim != s2.ambient_dim:
        raise ValueError("ambient mismatch")
    return Subspace.from_vectors(s1.ambient_dim, s1.basis + s2.basis)


def quotient_map(k: Subspace) -> tuple[GF2Mat, int]:
    """A surjection q onto GF(2)^(ambient - dim k) whose kernel is exactly k.

    q sends x to the non-pivot coordinates of its canonical coset
    representative (x reduced modulo the basis of k).
    """
    pivots = [(b & -b).bit_length() - 1 for b in k.basis]
    pivset = set(pivots)
    nonpivots = [j for j in range(k.ambient_dim) if j not in pivset]
    rows = []
    for j in nonpivots:
        row = 1 << j
        for b, p in zip(k.basis, pivots):
            if (b >> j) & 1:
                row |= 1 << p
        rows.append(row)
    return GF2Mat(tuple(rows), k.ambient_dim), len(nonpivots)
