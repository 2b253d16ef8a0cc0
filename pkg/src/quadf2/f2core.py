"""Exact linear algebra over GF(2) on bit-packed Python ints.

A vector of length ``n`` is an ``int`` whose bit ``i`` is coordinate ``i``;
bits at positions ``>= n`` must be zero. Matrices store one packed int per
row. Subspaces are kept as reduced row-echelon bases, pivot = lowest set
bit, sorted by pivot, so equal subspaces have equal representations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .limits import check_bound


def parity(x: int) -> int:
    return x.bit_count() & 1


def lowbit(x: int) -> int:
    """Index of the lowest set bit of a nonzero int."""
    return (x & -x).bit_length() - 1


def bit_indices(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def unit(i: int) -> int:
    return 1 << i


def mask(n: int) -> int:
    return (1 << n) - 1


def vec_from_str(s: str) -> int:
    """Parse a 0/1 string, leftmost character is coordinate 0."""
    v = 0
    for i, ch in enumerate(s.strip()):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError(f"not a bit string: {s!r}")
    return v


def vec_to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def vectors(n: int) -> range:
    return range(1 << n)


# -- row reduction -----------------------------------------------------------


def rref(vecs: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis of the span of ``vecs``."""
    basis: dict[int, int] = {}
    for v in vecs:
        for p, b in basis.items():
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = lowbit(v)
        for q, b in basis.items():
            if (b >> p) & 1:
                basis[q] = b ^ v
        basis[p] = v
    return tuple(basis[p] for p in sorted(basis))


def _reduce(v: int, basis: Sequence[int]) -> int:
    for b in basis:
        if (v >> lowbit(b)) & 1:
            v ^= b
    return v


# -- matrices ----------------------------------------------------------------


@dataclass(frozen=True)
class BitMatrix:
    """An ``nrows x ncols`` matrix over GF(2), one packed int per row."""

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise ValueError("negative matrix shape")
        if len(self.rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.rows)}")
        m = mask(self.ncols)
        for r in self.rows:
            if r & ~m:
                raise ValueError("row has bits beyond the column count")

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def from_columns(cls, cols: Sequence[int], nrows: int) -> BitMatrix:
        rows = [0] * nrows
        for j, c in enumerate(cols):
            for i in bit_indices(c):
                if i >= nrows:
                    raise ValueError("column has bits beyond the row count")
                rows[i] |= 1 << j
        return cls(nrows, len(cols), tuple(rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> BitMatrix:
        rows = [r.strip() for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix rows")
        return cls(len(rows), ncols, tuple(vec_from_str(r) for r in rows))

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> BitMatrix:
        ncols = len(rows[0]) if rows else 0
        return cls.from_strings(["".join(str(x & 1) for x in r) for r in rows], ncols)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in bit_indices(r):
                cols[j] |= 1 << i
        return tuple(cols)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def apply(self, v: int) -> int:
        out = 0
        for i, r in enumerate(self.rows):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        rows = []
        for r in self.rows:
            acc = 0
            for j in bit_indices(r):
                acc ^= orows[j]
            rows.append(acc)
        return BitMatrix(self.nrows, other.ncols, tuple(rows))

    def __add__(self, other: BitMatrix) -> BitMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch in matrix sum")
        return BitMatrix(self.nrows, self.ncols, tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> BitMatrix:
        return BitMatrix(self.ncols, self.nrows, self.columns)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def to_strings(self) -> list[str]:
        return [vec_to_str(r, self.ncols) for r in self.rows]

    def __str__(self):
        return "\n".join(self.to_strings())


def block_diag(*ms: BitMatrix) -> BitMatrix:
    rows: list[int] = []
    shift = 0
    for m in ms:
        rows.extend(r << shift for r in m.rows)
        shift += m.ncols
    return BitMatrix(len(rows), shift, tuple(rows))


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(2)^ambient_dim in reduced echelon form."""

    ambient_dim: int
    basis: tuple[int, ...]

    def __post_init__(self):
        if self.basis != rref(self.basis) or any(b >> self.ambient_dim for b in self.basis):
            raise ValueError("basis is not canonical for this ambient dimension")

    @classmethod
    def span(cls, vecs: Iterable[int], ambient_dim: int) -> Subspace:
        return cls(ambient_dim, rref(vecs))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(1 << i for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(lowbit(b) for b in self.basis)

    def reduce(self, v: int) -> int:
        return _reduce(v, self.basis)

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def coords(self, v: int) -> int:
        """Coordinates of ``v`` with respect to ``basis``; ``v`` must lie in the subspace."""
        c = 0
        for k, p in enumerate(self.pivots):
            if (v >> p) & 1:
                c |= 1 << k
        return c

    def combine(self, c: int) -> int:
        out = 0
        for k in bit_indices(c):
            out ^= self.basis[k]
        return out

    def elements(self) -> Iterator[int]:
        for c in range(1 << self.dim):
            yield self.combine(c)

    def __le__(self, other: Subspace) -> bool:
        return all(b in other for b in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: Subspace) -> Subspace:
        # kernel of (x, y) -> sum x_i b_i + sum y_j c_j
        gens = self.basis + other.basis
        ker = kernel(BitMatrix.from_columns(gens, self.ambient_dim))
        k = self.dim
        return Subspace.span(
            (self.combine(c & mask(k)) for c in ker.basis), self.ambient_dim
        )

    def complement_basis(self) -> tuple[int, ...]:
        """Standard basis vectors at non-pivot positions; spans a complement."""
        piv = set(self.pivots)
        return tuple(1 << i for i in range(self.ambient_dim) if i not in piv)

    def __str__(self):
        inner = ", ".join(vec_to_str(b, self.ambient_dim) for b in self.basis)
        return f"<{inner}>"


# -- matrix operations -------------------------------------------------------


def rank(m: BitMatrix) -> int:
    return len(rref(m.rows))


def image(m: BitMatrix) -> Subspace:
    return Subspace.span(m.columns, m.nrows)


def kernel(m: BitMatrix) -> Subspace:
    """Solution space of ``m v = 0`` inside GF(2)^ncols."""
    red = rref(m.rows)
    piv = [lowbit(r) for r in red]
    pivset = set(piv)
    gens = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = 1 << f
        for r, p in zip(red, piv):
            if (r >> f) & 1:
                v |= 1 << p
        gens.append(v)
    return Subspace.span(gens, m.ncols)


def solve(m: BitMatrix, b: int) -> int | None:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if b >> m.nrows:
        raise ValueError("right-hand side longer than the row count")
    n = m.ncols
    aug = [r | (((b >> i) & 1) << n) for i, r in enumerate(m.rows)]
    x = 0
    for r in rref(aug):
        p = lowbit(r)
        if p == n:
            return None
        if (r >> n) & 1:
            x |= 1 << p
    return x


def inverse(m: BitMatrix) -> BitMatrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    cols = []
    for i in range(m.nrows):
        x = solve(m, 1 << i)
        if x is None:
            raise ValueError("matrix is singular")
        cols.append(x)
    return BitMatrix.from_columns(cols, m.ncols)


def is_independent(vecs: Sequence[int]) -> bool:
    return len(rref(vecs)) == len(vecs)


# -- enumeration -------------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(
    n: int, bound: int | None = None, max_dim: int | None = None
) -> list[Subspace]:
    """Every subspace of GF(2)^n, ordered by dimension then echelon matrix."""
    check_bound("enumerate_subspaces", n, bound)
    top = n if max_dim is None else min(n, max_dim)
    out: list[Subspace] = []
    for k in range(top + 1):
        for pivots in itertools.combinations(range(n), k):
            pivset = set(pivots)
            free = [[j for j in range(p + 1, n) if j not in pivset] for p in pivots]
            slots = [(row, j) for row, fs in enumerate(free) for j in fs]
            for fill in range(1 << len(slots)):
                rows = [1 << p for p in pivots]
                for s in bit_indices(fill):
                    row, j = slots[s]
                    rows[row] |= 1 << j
                out.append(Subspace(n, tuple(rows)))
    return out
