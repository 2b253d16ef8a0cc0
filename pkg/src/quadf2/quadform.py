"""Quadratic spaces over GF(2) and their isometry classification.

A form is stored as the Gram matrix of its (alternating) polar bilinear
form together with the values of ``q`` on the standard basis; the value on
any vector follows from ``q(x + y) = q(x) + q(y) + B(x, y)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .f2core import (
    BitMatrix,
    Subspace,
    bit_indices,
    kernel,
    mask,
    parity,
    vec_from_str,
    vec_to_str,
)

_QTABLE_MAX = 12


class DegenerateSpaceError(ValueError):
    """An operation that needs a non-degenerate space received a degenerate one."""


@dataclass(frozen=True)
class QuadSpace:
    dim: int
    gram: BitMatrix
    diag: int

    def __post_init__(self):
        g = self.gram
        if g.shape != (self.dim, self.dim):
            raise ValueError(f"gram shape {g.shape} does not match dim {self.dim}")
        if g.T != g:
            raise ValueError("gram matrix is not symmetric")
        if any((r >> i) & 1 for i, r in enumerate(g.rows)):
            raise ValueError("gram matrix has a nonzero diagonal (form must be alternating)")
        if self.diag >> self.dim:
            raise ValueError("diag has bits beyond the dimension")

    @classmethod
    def from_rows(cls, gram: Sequence[str], diag: str) -> QuadSpace:
        g = BitMatrix.from_strings(gram, len(gram))
        return cls(len(gram), g, vec_from_str(diag))

    @cached_property
    def _upper(self) -> tuple[int, ...]:
        return tuple(r & ~mask(i + 1) for i, r in enumerate(self.gram.rows))

    @cached_property
    def qtable(self) -> bytes | None:
        if self.dim > _QTABLE_MAX:
            return None
        n = self.dim
        table = bytearray(1 << n)
        rows = self.gram.rows
        for i in range(n):
            # q(v + e_i) = q(v) + q(e_i) + B(v, e_i) for v below e_i
            qi = (self.diag >> i) & 1
            ri = rows[i]
            base = 1 << i
            for v in range(base):
                table[base | v] = table[v] ^ qi ^ ((ri & v).bit_count() & 1)
        return bytes(table)

    def q(self, v: int) -> int:
        t = self.qtable
        if t is not None:
            return t[v]
        acc = parity(v & self.diag)
        for i in bit_indices(v):
            acc ^= (self._upper[i] & v).bit_count() & 1
        return acc

    def B(self, u: int, v: int) -> int:
        rows = self.gram.rows
        acc = 0
        for i in bit_indices(u):
            acc ^= (rows[i] & v).bit_count() & 1
        return acc

    def polar(self, v: int) -> int:
        """The linear functional ``B(v, -)`` as a packed row."""
        rows = self.gram.rows
        acc = 0
        for i in bit_indices(v):
            acc ^= rows[i]
        return acc

    def restrict(self, basis: Sequence[int]) -> QuadSpace:
        """The induced form on ``span(basis)``, in the coordinates of ``basis``."""
        k = len(basis)
        pol = [self.polar(b) for b in basis]
        rows = []
        for i in range(k):
            r = 0
            for j in range(k):
                if (pol[i] & basis[j]).bit_count() & 1:
                    r |= 1 << j
            rows.append(r)
        diag = 0
        for i, b in enumerate(basis):
            if self.q(b):
                diag |= 1 << i
        return QuadSpace(k, BitMatrix(k, k, tuple(rows)), diag)

    def is_nondegenerate(self) -> bool:
        return radical(self).dim == 0

    def to_text(self) -> str:
        lines = [str(self.dim)]
        lines.extend(self.gram.to_strings())
        lines.append(vec_to_str(self.diag, self.dim))
        return "\n".join(lines)

    def __str__(self):
        return f"QuadSpace(dim={self.dim}, class={iso_class(self)})"


def eval_q(s: QuadSpace, v: int) -> int:
    if v >> s.dim:
        raise ValueError(f"vector has bits beyond dim {s.dim}")
    return s.q(v)


def eval_B(s: QuadSpace, u: int, v: int) -> int:
    if (u | v) >> s.dim:
        raise ValueError(f"vector has bits beyond dim {s.dim}")
    return s.B(u, v)


def radical(s: QuadSpace) -> Subspace:
    return kernel(s.gram)


# -- model spaces --------------------------------------------------------------

ZERO = QuadSpace(0, BitMatrix.zero(0, 0), 0)
H0 = QuadSpace.from_rows(["01", "10"], "00")
H1 = QuadSpace.from_rows(["01", "10"], "11")
POINT0 = QuadSpace.from_rows(["0"], "0")
POINT1 = QuadSpace.from_rows(["0"], "1")

_STANDARD = {
    "0": ZERO,
    "H0": H0,
    "H1": H1,
    "x0": POINT0,
    "x1": POINT1,
    "point0": POINT0,
    "point1": POINT1,
}


def standard(name: str) -> QuadSpace:
    try:
        return _STANDARD[name]
    except KeyError:
        raise ValueError(f"unknown standard space {name!r}") from None


def orthogonal_sum(*spaces: QuadSpace) -> QuadSpace:
    rows: list[int] = []
    diag = 0
    shift = 0
    for s in spaces:
        rows.extend(r << shift for r in s.gram.rows)
        diag |= s.diag << shift
        shift += s.dim
    return QuadSpace(shift, BitMatrix(shift, shift, tuple(rows)), diag)


def power(s: QuadSpace, k: int) -> QuadSpace:
    return orthogonal_sum(*([s] * k))


_TERM = re.compile(r"^(H0|H1|x0|x1|0)(?:\^(\d+))?$")


def parse_descriptor(text: str) -> QuadSpace:
    """Parse an orthogonal-sum descriptor such as ``H0+H0+x1`` or ``H1+H0^2+x0``."""
    compact = "".join(text.split())
    if not compact:
        raise ValueError("empty space descriptor")
    parts = compact.split("+")
    blocks = []
    for p in parts:
        m = _TERM.match(p)
        if m is None:
            raise ValueError(f"bad space descriptor term {p!r}")
        blocks.extend([_STANDARD[m.group(1)]] * int(m.group(2) or 1))
    return orthogonal_sum(*blocks)


def parse_space(lines: Iterable[str]) -> QuadSpace:
    """Read the text format: dim, then ``dim`` gram rows, then the diag row."""
    it = iter(lines)
    dim = int(next(it))
    gram = [next(it) for _ in range(dim)]
    diag = next(it) if dim else ""
    return QuadSpace.from_rows(gram, diag)


# -- structure -----------------------------------------------------------------


def symplectic_reduce(s: QuadSpace, vecs: Sequence[int]) -> list[tuple[int, int]]:
    """Symplectic basis of ``span(vecs)``, which must carry a non-degenerate form."""
    todo = [v for v in vecs if v]
    pairs: list[tuple[int, int]] = []
    while todo:
        a = todo.pop(0)
        partner = next((i for i, w in enumerate(todo) if s.B(a, w)), None)
        if partner is None:
            # a is orthogonal to the whole remaining span
            raise DegenerateSpaceError("span carries a degenerate form")
        b = todo.pop(partner)
        rest = []
        for w in todo:
            w ^= (a if s.B(w, b) else 0) ^ (b if s.B(w, a) else 0)
            if w:
                rest.append(w)
        todo = rest
        pairs.append((a, b))
    return pairs


def symplectic_basis(s: QuadSpace) -> list[tuple[int, int]]:
    if s.dim % 2:
        raise DegenerateSpaceError("odd-dimensional spaces are degenerate")
    if not s.is_nondegenerate():
        raise DegenerateSpaceError("symplectic basis needs a non-degenerate space")
    return symplectic_reduce(s, [1 << i for i in range(s.dim)])


def arf_of_pairs(s: QuadSpace, pairs: Iterable[tuple[int, int]]) -> int:
    return sum(s.q(a) & s.q(b) for a, b in pairs) & 1


def arf(s: QuadSpace) -> int:
    return arf_of_pairs(s, symplectic_basis(s))


@dataclass(frozen=True)
class Decomposition:
    """``V = H ⊥ Rad(V)``: a symplectic basis of ``H`` plus a radical basis."""

    pairs: tuple[tuple[int, int], ...]
    rad_basis: tuple[int, ...]
    rad_type: int | None

    @property
    def nondeg_basis(self) -> tuple[int, ...]:
        return tuple(x for p in self.pairs for x in p)


def decompose(s: QuadSpace) -> Decomposition:
    """Split off the radical; a nonzero ``q`` on it is rebased to all-ones values.

    With a type-1 radical the non-degenerate part is normalised to Arf 0.
    """
    rad = radical(s)
    pairs = symplectic_reduce(s, rad.complement_basis())
    rbasis = list(rad.basis)
    rad_type = None
    if rbasis:
        ones = [r for r in rbasis if s.q(r)]
        rad_type = 1 if ones else 0
        if ones:
            u = ones[0]
            rbasis = [r if s.q(r) else r ^ u for r in rbasis]
            if arf_of_pairs(s, pairs):
                # q(a + u) = q(a) + 1 since u is radical; kill one odd product
                k = next(i for i, (a, b) in enumerate(pairs) if s.q(a) & s.q(b))
                a, b = pairs[k]
                pairs[k] = (a ^ u, b)
    return Decomposition(tuple(pairs), tuple(rbasis), rad_type)


@dataclass(frozen=True, order=True)
class IsoClass:
    dim: int
    rad_dim: int
    rad_type: int | None
    nondeg_class: int | None

    def __post_init__(self):
        h = self.dim - self.rad_dim
        if self.dim < 0 or self.rad_dim < 0 or h < 0 or h % 2:
            raise ValueError(f"malformed class {self!r}: non-degenerate part must have even dim")
        if self.rad_dim == 0 and self.rad_type is not None:
            raise ValueError("rad_type given for a non-degenerate class")
        if self.rad_dim > 0 and self.rad_type not in (0, 1):
            raise ValueError("rad_type must be 0 or 1")
        if self.rad_type == 1 or h == 0:
            if self.nondeg_class is not None:
                raise ValueError("nondeg_class is not an invariant here")
        elif self.nondeg_class not in (0, 1):
            raise ValueError("nondeg_class must be 0 or 1")

    def descriptor(self) -> str:
        m = (self.dim - self.rad_dim) // 2
        terms = []
        if m:
            if self.nondeg_class == 1:
                terms.append("H1")
                m -= 1
            if m:
                terms.append("H0" if m == 1 else f"H0^{m}")
        if self.rad_dim:
            x = f"x{self.rad_type}"
            terms.append(x if self.rad_dim == 1 else f"{x}^{self.rad_dim}")
        return "+".join(terms) or "0"

    def __str__(self):
        return self.descriptor()


def iso_class(s: QuadSpace) -> IsoClass:
    d = decompose(s)
    r = len(d.rad_basis)
    h = 2 * len(d.pairs)
    nd = None
    if h and d.rad_type != 1:
        nd = arf_of_pairs(s, d.pairs)
    return IsoClass(s.dim, r, d.rad_type, nd)


def from_class(c: IsoClass) -> QuadSpace:
    return parse_descriptor(c.descriptor())


def is_isometric(a: QuadSpace, b: QuadSpace) -> bool:
    return iso_class(a) == iso_class(b)
