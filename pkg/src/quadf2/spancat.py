"""Spans of injective form-preserving maps, stored as relation subspaces.

A span ``V <- D -> W`` is determined up to isomorphism of ``D`` by the
subspace ``{(f(d), g(d))}`` of ``V ⊕ W``. Coordinates of ``V`` occupy the
low ``V.dim`` bits of a relation vector, those of ``W`` the bits above.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .f2core import BitMatrix, Subspace, enumerate_subspaces, kernel, mask, rref, vec_to_str
from .limits import check_bound
from .qmorph import QuadMap
from .quadform import QuadSpace, orthogonal_sum


@dataclass(frozen=True)
class SpanMorphism:
    dom: QuadSpace
    cod: QuadSpace
    rel: Subspace

    def __post_init__(self):
        if self.rel.ambient_dim != self.dom.dim + self.cod.dim:
            raise ValueError("relation does not live in dom ⊕ cod")
        if not _valid_relation(self.dom, self.cod, self.rel.basis):
            raise ValueError("relation is not the graph of a span of form-preserving injections")

    def split(self, r: int) -> tuple[int, int]:
        n = self.dom.dim
        return r & mask(n), r >> n

    @property
    def left_images(self) -> tuple[int, ...]:
        return tuple(r & mask(self.dom.dim) for r in self.rel.basis)

    @property
    def right_images(self) -> tuple[int, ...]:
        n = self.dom.dim
        return tuple(r >> n for r in self.rel.basis)

    def middle(self) -> QuadSpace:
        return self.dom.restrict(self.left_images)

    def left_leg(self) -> QuadMap:
        return QuadMap.from_images(self.middle(), self.dom, self.left_images)

    def right_leg(self) -> QuadMap:
        return QuadMap.from_images(self.middle(), self.cod, self.right_images)

    @property
    def rank(self) -> int:
        return self.rel.dim

    def __matmul__(self, other: SpanMorphism) -> SpanMorphism:
        """``self @ other`` is ``self`` after ``other``."""
        return compose_spans(other, self)

    def __str__(self):
        n, m = self.dom.dim, self.cod.dim
        pairs = ", ".join(
            f"{vec_to_str(v, n)}|{vec_to_str(w, m)}" for v, w in map(self.split, self.rel.basis)
        )
        return f"[{n} <- {self.rel.dim} -> {m}]{{{pairs}}}"


def _valid_relation(V: QuadSpace, W: QuadSpace, basis: Sequence[int]) -> bool:
    n = V.dim
    lefts = [r & mask(n) for r in basis]
    rights = [r >> n for r in basis]
    k = len(basis)
    if len(rref(lefts)) != k or len(rref(rights)) != k:
        return False
    for i in range(k):
        if V.q(lefts[i]) != W.q(rights[i]):
            return False
        pv, pw = V.polar(lefts[i]), W.polar(rights[i])
        for j in range(i):
            if ((pv & lefts[j]).bit_count() ^ (pw & rights[j]).bit_count()) & 1:
                return False
    return True


def is_valid_relation(V: QuadSpace, W: QuadSpace, rel: Subspace) -> bool:
    return rel.ambient_dim == V.dim + W.dim and _valid_relation(V, W, rel.basis)


def canonicalize_span(f: QuadMap, g: QuadMap) -> SpanMorphism:
    if f.dom != g.dom:
        raise ValueError("span legs must share their domain")
    n = f.cod.dim
    gens = [a | (b << n) for a, b in zip(f.images, g.images)]
    return SpanMorphism(f.cod, g.cod, Subspace.span(gens, n + g.cod.dim))


def identity_span(V: QuadSpace) -> SpanMorphism:
    n = V.dim
    return SpanMorphism(V, V, Subspace(2 * n, tuple((1 << i) | (1 << (i + n)) for i in range(n))))


def zero_span(V: QuadSpace, W: QuadSpace) -> SpanMorphism:
    return SpanMorphism(V, W, Subspace.zero(V.dim + W.dim))


def pullback(alpha: QuadMap, beta: QuadMap) -> tuple[QuadSpace, QuadMap, QuadMap]:
    """Fibre product ``A ×_X B`` of ``alpha: A -> X`` and ``beta: B -> X``."""
    if alpha.cod != beta.cod:
        raise ValueError("pullback of maps with different codomains")
    a = alpha.dom.dim
    cols = list(alpha.images) + list(beta.images)
    ker = kernel(BitMatrix.from_columns(cols, alpha.cod.dim))
    pa = [c & mask(a) for c in ker.basis]
    pb = [c >> a for c in ker.basis]
    P = alpha.dom.restrict(pa)
    return P, QuadMap.from_images(P, alpha.dom, pa), QuadMap.from_images(P, beta.dom, pb)


def compose_spans(s1: SpanMorphism, s2: SpanMorphism) -> SpanMorphism:
    """``s2 ∘ s1`` for ``s1: V -> W`` and ``s2: W -> Y``, by relational composition."""
    if s1.cod != s2.dom:
        raise ValueError("composing spans with mismatched objects")
    n, m = s1.dom.dim, s1.cod.dim
    r1, r2 = s1.rel.basis, s2.rel.basis
    k1 = len(r1)
    # (c1, c2) with W-part(r1 . c1) == W-part(r2 . c2)
    cols = [r >> n for r in r1] + [r & mask(m) for r in r2]
    ker = kernel(BitMatrix.from_columns(cols, m))
    gens = []
    for c in ker.basis:
        v = y = 0
        for i in range(k1):
            if (c >> i) & 1:
                v ^= r1[i] & mask(n)
        for j in range(len(r2)):
            if (c >> (k1 + j)) & 1:
                y ^= r2[j] >> m
        gens.append(v | (y << n))
    return SpanMorphism(s1.dom, s2.cod, Subspace.span(gens, n + s2.cod.dim))


def compose_by_pullback(s1: SpanMorphism, s2: SpanMorphism) -> SpanMorphism:
    """``s2 ∘ s1`` through the explicit fibre product of the inner legs."""
    if s1.cod != s2.dom:
        raise ValueError("composing spans with mismatched objects")
    P, p1, p2 = pullback(s1.right_leg(), s2.left_leg())
    return canonicalize_span(s1.left_leg() @ p1, s2.right_leg() @ p2)


def e_alpha(V: QuadSpace, A: Subspace) -> SpanMorphism:
    """The idempotent ``[V <- A -> V]`` with both legs the inclusion of ``A``."""
    if A.ambient_dim != V.dim:
        raise ValueError("subspace is not in V")
    n = V.dim
    return SpanMorphism(V, V, Subspace.span((a | (a << n) for a in A.basis), 2 * n))


def transpose_span(s: SpanMorphism) -> SpanMorphism:
    n = s.dom.dim
    m = s.cod.dim
    gens = [(r >> n) | ((r & mask(n)) << m) for r in s.rel.basis]
    return SpanMorphism(s.cod, s.dom, Subspace.span(gens, n + m))


def span_orthogonal_sum(s1: SpanMorphism, s2: SpanMorphism) -> SpanMorphism:
    n1, n2 = s1.dom.dim, s2.dom.dim
    m1 = s1.cod.dim
    base = n1 + n2
    gens = []
    for r in s1.rel.basis:
        v, w = s1.split(r)
        gens.append(v | (w << base))
    for r in s2.rel.basis:
        v, w = s2.split(r)
        gens.append((v << n1) | (w << (base + m1)))
    dom = orthogonal_sum(s1.dom, s2.dom)
    cod = orthogonal_sum(s1.cod, s2.cod)
    return SpanMorphism(dom, cod, Subspace.span(gens, dom.dim + cod.dim))


def enumerate_span_homs(V: QuadSpace, W: QuadSpace, bound: int | None = None) -> list[SpanMorphism]:
    """Every span ``V -> W``, by filtering subspaces of ``V ⊕ W``."""
    n = V.dim + W.dim
    check_bound("enumerate_span_homs", n, bound)
    top = min(V.dim, W.dim)
    return [
        SpanMorphism(V, W, sub)
        for sub in enumerate_subspaces(n, bound, max_dim=top)
        if _valid_relation(V, W, sub.basis)
    ]


def enumerate_idempotents(V: QuadSpace, bound: int | None = None) -> list[SpanMorphism]:
    check_bound("enumerate_idempotents", 2 * V.dim, bound)
    return [s for s in enumerate_span_homs(V, V, bound) if compose_spans(s, s) == s]
