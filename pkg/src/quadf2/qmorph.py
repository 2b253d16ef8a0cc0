"""Injective form-preserving linear maps between quadratic spaces."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .f2core import BitMatrix, Subspace, bit_indices, inverse, kernel, rref
from .limits import check_bound
from .quadform import DegenerateSpaceError, QuadSpace, orthogonal_sum


@dataclass(frozen=True)
class QuadMap:
    """A linear map ``dom -> cod``; ``mat`` is ``cod.dim x dom.dim``."""

    dom: QuadSpace
    cod: QuadSpace
    mat: BitMatrix

    def __post_init__(self):
        if self.mat.shape != (self.cod.dim, self.dom.dim):
            raise ValueError(
                f"matrix shape {self.mat.shape} does not fit {self.dom.dim} -> {self.cod.dim}"
            )
        if not _preserves(self.dom, self.cod, self.mat.columns):
            raise ValueError("map is not injective and form-preserving")

    @classmethod
    def from_images(cls, dom: QuadSpace, cod: QuadSpace, images: Sequence[int]) -> QuadMap:
        return cls(dom, cod, BitMatrix.from_columns(images, cod.dim))

    @property
    def images(self) -> tuple[int, ...]:
        return self.mat.columns

    def __call__(self, v: int) -> int:
        out = 0
        cols = self.mat.columns
        for i in bit_indices(v):
            out ^= cols[i]
        return out

    def __matmul__(self, other: QuadMap) -> QuadMap:
        """``self @ other`` is ``self`` after ``other``."""
        if other.cod != self.dom:
            raise ValueError("composing maps with mismatched spaces")
        return QuadMap(other.dom, self.cod, self.mat @ other.mat)

    def image(self) -> Subspace:
        return Subspace.span(self.images, self.cod.dim)

    def is_bijective(self) -> bool:
        return self.dom.dim == self.cod.dim


def _preserves(dom: QuadSpace, cod: QuadSpace, images: Sequence[int]) -> bool:
    if len(rref(images)) != len(images):
        return False
    for i, c in enumerate(images):
        if cod.q(c) != (dom.diag >> i) & 1:
            return False
        row = dom.gram.rows[i]
        pol = cod.polar(c)
        for j in range(i):
            if ((pol & images[j]).bit_count() & 1) != (row >> j) & 1:
                return False
    return True


def is_quad_morphism(dom: QuadSpace, cod: QuadSpace, mat: BitMatrix) -> bool:
    if mat.shape != (cod.dim, dom.dim):
        raise ValueError(f"matrix shape {mat.shape} does not fit {dom.dim} -> {cod.dim}")
    return _preserves(dom, cod, mat.columns)


def identity_map(V: QuadSpace) -> QuadMap:
    return QuadMap(V, V, BitMatrix.identity(V.dim))


def inclusion(space: QuadSpace, basis: Sequence[int]) -> QuadMap:
    """``span(basis)`` with its induced form, included into ``space``."""
    return QuadMap.from_images(space.restrict(basis), space, basis)


def block_inclusion(blocks: Sequence[QuadSpace], k: int, total: QuadSpace | None = None) -> QuadMap:
    total = total or orthogonal_sum(*blocks)
    shift = sum(b.dim for b in blocks[:k])
    return QuadMap.from_images(blocks[k], total, [1 << (shift + i) for i in range(blocks[k].dim)])


def map_sum(f: QuadMap, g: QuadMap) -> QuadMap:
    """``f ⊥ g`` between the orthogonal sums."""
    cols = list(f.images) + [c << f.cod.dim for c in g.images]
    return QuadMap.from_images(
        orthogonal_sum(f.dom, g.dom), orthogonal_sum(f.cod, g.cod), cols
    )


def invert(f: QuadMap) -> QuadMap:
    if not f.is_bijective():
        raise ValueError("only bijective maps can be inverted")
    return QuadMap(f.cod, f.dom, inverse(f.mat))


# -- enumeration -------------------------------------------------------------


def extensions(
    dom: QuadSpace,
    cod: QuadSpace,
    fixed: Sequence[int] = (),
    order: Sequence[int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Image tuples of all form-preserving injections extending ``fixed``.

    ``fixed`` gives the images of the first ``len(fixed)`` basis vectors of
    ``dom``; the rest are chosen by backtracking, candidates tried in
    ``order`` (default ascending), so the default yield order is
    lexicographic in the image tuple.
    """
    n = dom.dim
    cands = list(order) if order is not None else list(range(1, 1 << cod.dim))
    by_q: dict[int, list[int]] = {0: [], 1: []}
    for w in cands:
        if w:
            by_q[cod.q(w)].append(w)
    grows = dom.gram.rows
    imgs = list(fixed)
    pols = [cod.polar(c) for c in imgs]
    if not _preserves(dom.restrict([1 << i for i in range(len(imgs))]), cod, imgs):
        return
    # echelon of chosen images for the independence test
    ech: list[int] = list(rref(imgs))

    def reduce(v: int, basis: list[int]) -> int:
        for b in basis:
            if (v >> ((b & -b).bit_length() - 1)) & 1:
                v ^= b
        return v

    def rec(i: int, basis: list[int]):
        if i == n:
            yield tuple(imgs)
            return
        want = (dom.diag >> i) & 1
        row = grows[i]
        for w in by_q[want]:
            ok = True
            for j in range(i):
                if ((pols[j] & w).bit_count() & 1) != (row >> j) & 1:
                    ok = False
                    break
            if not ok:
                continue
            r = reduce(w, basis)
            if not r:
                continue
            imgs.append(w)
            pols.append(cod.polar(w))
            yield from rec(i + 1, _insert(basis, r))
            imgs.pop()
            pols.pop()

    yield from rec(len(imgs), ech)


def _insert(basis: list[int], r: int) -> list[int]:
    p = (r & -r).bit_length() - 1
    out = [b ^ r if (b >> p) & 1 else b for b in basis]
    out.append(r)
    return out


def enumerate_homs(V: QuadSpace, W: QuadSpace, bound: int | None = None) -> list[QuadMap]:
    check_bound("enumerate_homs", W.dim, bound)
    return [QuadMap.from_images(V, W, imgs) for imgs in extensions(V, W)]


def count_homs(V: QuadSpace, W: QuadSpace, bound: int | None = None) -> int:
    check_bound("count_homs", W.dim, bound)
    return sum(1 for _ in extensions(V, W))


def first_hom(V: QuadSpace, W: QuadSpace) -> QuadMap | None:
    for imgs in extensions(V, W):
        return QuadMap.from_images(V, W, imgs)
    return None


def random_hom(V: QuadSpace, W: QuadSpace, rng: random.Random) -> QuadMap | None:
    order = list(range(1, 1 << W.dim))
    rng.shuffle(order)
    for imgs in extensions(V, W, order=order):
        return QuadMap.from_images(V, W, imgs)
    return None


def orthogonal_group(V: QuadSpace, bound: int | None = None) -> list[QuadMap]:
    check_bound("orthogonal_group", V.dim, bound)
    return enumerate_homs(V, V, bound)


def isometries(V: QuadSpace, W: QuadSpace, fixed: Sequence[int] = ()) -> Iterator[QuadMap]:
    if V.dim != W.dim:
        return
    for imgs in extensions(V, W, fixed):
        yield QuadMap.from_images(V, W, imgs)


# -- complements and projections -----------------------------------------------


def _require_nondegenerate(f: QuadMap) -> None:
    if not f.dom.is_nondegenerate() or not f.cod.is_nondegenerate():
        raise DegenerateSpaceError("orthogonal complement needs non-degenerate spaces")


def orthogonal_complement(f: QuadMap) -> Subspace:
    """``{w : B(w, f(v)) = 0 for all v}`` inside ``f.cod``."""
    _require_nondegenerate(f)
    cod = f.cod
    rows = tuple(cod.polar(c) for c in f.images)
    return kernel(BitMatrix(len(rows), cod.dim, rows))


def complement_inclusion(f: QuadMap) -> QuadMap:
    return inclusion(f.cod, orthogonal_complement(f).basis)


def orthogonal_projection(f: QuadMap) -> BitMatrix:
    """The map ``cod -> dom`` inverting ``f`` on its image and killing the complement.

    ``B(w, f(e_j)) = B_dom(p(w), e_j)``, so ``p = G_dom^{-1} F^T G_cod``.
    """
    _require_nondegenerate(f)
    F = f.mat
    return inverse(f.dom.gram) @ F.T @ f.cod.gram

