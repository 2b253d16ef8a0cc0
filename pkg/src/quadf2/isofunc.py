"""Finite evaluations of ``Q_V``, ``K_V`` and ``iso_V`` and the algebra of ``End_Sp(V)``.

``Q_V(X)`` has basis the spans ``V -> X``; ``K_V(X)`` is spanned by those
whose middle object is smaller than ``V``; ``iso_V = Q_V / K_V`` has one
basis vector per embedding ``V -> X`` (the spans of full rank).

Two matrix conventions are used and both are multiplicative:

* the functor action of ``a`` in ``F2[End(X)]`` on ``F(X)`` is by
  postcomposition, written with columns, so ``act(a b) = act(a) act(b)``;
* the module action of ``a`` in ``F2[End(V)]`` on ``Q_V(X)`` is by
  precomposition, written with rows (row vector times matrix), which again
  gives ``act(a b) = act(a) act(b)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .f2core import BitMatrix, Subspace, enumerate_subspaces, rank
from .qmorph import QuadMap
from .quadform import QuadSpace, iso_class
from .spancat import (
    SpanMorphism,
    compose_spans,
    e_alpha,
    enumerate_span_homs,
    identity_span,
    transpose_span,
)

FUNCTORS = ("Q", "iso", "K")


@dataclass(frozen=True)
class AlgebraElement:
    """A sum of endomorphisms of ``space`` with coefficients in GF(2)."""

    space: QuadSpace
    support: frozenset[SpanMorphism] = frozenset()

    def __post_init__(self):
        for s in self.support:
            if s.dom != self.space or s.cod != self.space:
                raise ValueError("support element is not an endomorphism of the space")

    @classmethod
    def one(cls, V: QuadSpace) -> AlgebraElement:
        return cls(V, frozenset([identity_span(V)]))

    @classmethod
    def of(cls, V: QuadSpace, spans: Iterable[SpanMorphism]) -> AlgebraElement:
        acc: set[SpanMorphism] = set()
        for s in spans:
            acc ^= {s}
        return cls(V, frozenset(acc))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _same_space(self, other)
        return AlgebraElement(self.space, self.support ^ other.support)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return algebra_mul(self, other)

    def is_zero(self) -> bool:
        return not self.support

    def __len__(self):
        return len(self.support)


def _same_space(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.space != b.space:
        raise ValueError("algebra elements live over different spaces")


def algebra_mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """``a b`` with ``s t`` meaning ``s`` after ``t``."""
    _same_space(a, b)
    return AlgebraElement.of(a.space, (compose_spans(t, s) for s in a.support for t in b.support))


def idempotent(V: QuadSpace, A: Subspace) -> AlgebraElement:
    return AlgebraElement(V, frozenset([e_alpha(V, A)]))


def one_plus_e(V: QuadSpace, A: Subspace) -> AlgebraElement:
    return AlgebraElement.one(V) + idempotent(V, A)


def _product(V: QuadSpace, factors: Iterable[AlgebraElement]) -> AlgebraElement:
    out = AlgebraElement.one(V)
    for f in factors:
        out = out * f
    return out


def big_E(V: QuadSpace) -> AlgebraElement:
    """``prod (1 + e_A)`` over the proper subspaces ``A`` of ``V``."""
    subs = enumerate_subspaces(V.dim)
    return _product(V, (one_plus_e(V, A) for A in subs if A.dim < V.dim))


def E_alpha(V: QuadSpace, A: Subspace) -> AlgebraElement:
    """``e_A prod (1 + e_B)`` over the proper subspaces ``B`` of ``A``."""
    subs = [B for B in enumerate_subspaces(V.dim, max_dim=A.dim) if B.dim < A.dim and B <= A]
    return idempotent(V, A) * _product(V, (one_plus_e(V, B) for B in subs))


# -- functor evaluations ---------------------------------------------------------


@dataclass(frozen=True)
class FunctorEval:
    """``F(at)`` for ``F`` one of ``Q_V``, ``iso_V``, ``K_V`` with ``V = param``.

    ``spans`` is the list of basis spans; for ``iso`` they are the full-rank
    spans, standing for their classes in the quotient.
    """

    functor_id: str
    param: QuadSpace
    at: QuadSpace
    spans: tuple[SpanMorphism, ...]

    @cached_property
    def index(self) -> dict[SpanMorphism, int]:
        return {s: i for i, s in enumerate(self.spans)}

    @property
    def dim(self) -> int:
        return len(self.spans)

    @property
    def basis(self) -> tuple:
        """Spans for ``Q`` and ``K``; embeddings ``param -> at`` for ``iso``."""
        if self.functor_id != "iso":
            return self.spans
        return tuple(_as_embedding(s) for s in self.spans)

    def coords(self, s: SpanMorphism) -> int:
        """Coordinates of the class of a span ``param -> at``."""
        if self.functor_id == "iso" and s.rank < self.param.dim:
            return 0
        try:
            return 1 << self.index[s]
        except KeyError:
            raise ValueError("span is not in this evaluation") from None


def _as_embedding(s: SpanMorphism) -> QuadMap:
    # full rank: every domain coordinate is a pivot, so the echelon basis
    # is (e_i, w_i) and the span is the graph of e_i -> w_i
    return QuadMap.from_images(s.dom, s.cod, s.right_images)


@lru_cache(maxsize=None)
def _span_basis(V: QuadSpace, X: QuadSpace, bound: int | None) -> tuple[SpanMorphism, ...]:
    return tuple(enumerate_span_homs(V, X, bound))


def eval_functor(functor_id: str, V: QuadSpace, X: QuadSpace, bound: int | None = None) -> FunctorEval:
    if functor_id not in FUNCTORS:
        raise ValueError(f"unknown functor {functor_id!r}; expected one of {FUNCTORS}")
    spans = _span_basis(V, X, bound)
    if functor_id == "iso":
        spans = tuple(s for s in spans if s.rank == V.dim)
    elif functor_id == "K":
        spans = tuple(s for s in spans if s.rank < V.dim)
    return FunctorEval(functor_id, V, X, spans)


def act_morphism(ev: FunctorEval, u: SpanMorphism) -> BitMatrix:
    """Matrix of ``F(u): F(ev.at) -> F(u.cod)`` in column convention."""
    if u.dom != ev.at:
        raise ValueError("morphism does not start at the evaluation point")
    target = eval_functor(ev.functor_id, ev.param, u.cod)
    cols = [target.coords(compose_spans(s, u)) for s in ev.spans]
    return BitMatrix.from_columns(cols, target.dim)


def act(ev: FunctorEval, a: AlgebraElement, side: str = "functor") -> BitMatrix:
    """Action of an algebra element on ``ev``.

    ``side="functor"``: ``a`` in ``F2[End(ev.at)]`` acting by postcomposition.
    ``side="module"``: ``a`` in ``F2[End(ev.param)]`` acting by
    precomposition on ``Q_V``/``K_V``/``iso_V`` (rows are images).
    """
    n = ev.dim
    if side == "functor":
        if a.space != ev.at:
            raise ValueError("functor action needs an endomorphism algebra of the evaluation point")
        cols = [0] * n
        for u in a.support:
            for i, s in enumerate(ev.spans):
                cols[i] ^= ev.coords(compose_spans(s, u))
        return BitMatrix.from_columns(cols, n)
    if side == "module":
        if a.space != ev.param:
            raise ValueError("module action needs an endomorphism algebra of the parameter")
        rows = [0] * n
        for u in a.support:
            for i, s in enumerate(ev.spans):
                rows[i] ^= ev.coords(compose_spans(u, s))
        return BitMatrix(n, n, tuple(rows))
    raise ValueError(f"unknown side {side!r}")


def hom_iso_dim(V: QuadSpace, W: QuadSpace, bound: int | None = None) -> int:
    """``dim Hom(iso_V, iso_W)`` as the rank of ``iso_W(E_V)`` on ``iso_W(V)``."""
    ev = eval_functor("iso", W, V, bound)
    if ev.dim == 0:
        return 0
    return rank(act(ev, big_E(V)))


# -- decomposition ---------------------------------------------------------------


@dataclass
class DecompositionReport:
    V: QuadSpace
    X: QuadSpace
    dim_Q: int
    dim_iso: int
    dim_K: int
    summands: list[tuple[str, int, int]]  # (class of A, dim iso_A(X), rank of E_A)
    rank_E: int
    rank_one_plus_E: int
    orthogonal: bool
    complete: bool

    @property
    def counting_ok(self) -> bool:
        return self.dim_Q == sum(d for _, d, _ in self.summands)

    @property
    def ranks_ok(self) -> bool:
        return (
            all(d == r for _, d, r in self.summands)
            and self.rank_E == self.dim_iso
            and self.rank_one_plus_E == self.dim_K
        )

    @property
    def ok(self) -> bool:
        return (
            self.counting_ok
            and self.ranks_ok
            and self.orthogonal
            and self.complete
            and self.dim_K + self.dim_iso == self.dim_Q
        )


@lru_cache(maxsize=None)
def _subspace_idempotents(V: QuadSpace) -> tuple[tuple[Subspace, AlgebraElement], ...]:
    return tuple((A, E_alpha(V, A)) for A in enumerate_subspaces(V.dim))


def decomposition_check(V: QuadSpace, X: QuadSpace, bound: int | None = None) -> DecompositionReport:
    Q = eval_functor("Q", V, X, bound)
    I = eval_functor("iso", V, X, bound)
    K = eval_functor("K", V, X, bound)
    EA = _subspace_idempotents(V)
    summands = []
    for A, E in EA:
        sub = V.restrict(A.basis)
        d = eval_functor("iso", sub, X, bound).dim
        summands.append((str(iso_class(sub)), d, rank(act(Q, E, "module"))))
    orthogonal = all(
        (E1 * E2).is_zero() for (A1, E1), (A2, E2) in itertools.combinations(EA, 2)
    ) and all((E * E) == E for _, E in EA)
    total = AlgebraElement(V)
    for _, E in EA:
        total = total + E
    EV = big_E(V)
    one = AlgebraElement.one(V)
    return DecompositionReport(
        V,
        X,
        Q.dim,
        I.dim,
        K.dim,
        summands,
        rank(act(Q, EV, "module")),
        rank(act(Q, one + EV, "module")),
        orthogonal,
        total == one,
    )


# -- duality -----------------------------------------------------------------------


def a_V_matrix(V: QuadSpace, X: QuadSpace, bound: int | None = None) -> BitMatrix:
    """Pairing on ``Q_V(X)``: entry ``(s, t)`` is 1 iff ``tr(t) ∘ s = Id_V``."""
    basis = eval_functor("Q", V, X, bound).spans
    ident = identity_span(V)
    rows = []
    for s in basis:
        r = 0
        for j, t in enumerate(basis):
            if compose_spans(s, transpose_span(t)) == ident:
                r |= 1 << j
        rows.append(r)
    return BitMatrix(len(basis), len(basis), tuple(rows))


def self_duality_check(V: QuadSpace, bound: int | None = None) -> bool:
    m = a_V_matrix(V, V, bound)
    return m == m.T and rank(m) == eval_functor("iso", V, V, bound).dim


# -- tables ------------------------------------------------------------------------


@dataclass
class IsoTable:
    names: list[str]
    rows: list[tuple[str, str, int, int, int]]  # (V, X, dim Q, dim iso, dim K)
    hom: list[list[int]]  # hom[i][j] = dim Hom(iso_{V_i}, iso_{V_j})

    def to_text(self) -> str:
        w = max([len(n) for n in self.names] + [5])
        out = [f"{'V':<{w}}  {'X':<{w}}  {'dimQ':>5}  {'dimIso':>6}  {'dimK':>5}"]
        for v, x, q, i, k in self.rows:
            out.append(f"{v:<{w}}  {x:<{w}}  {q:>5}  {i:>6}  {k:>5}")
        out.append("")
        out.append("Hom(iso_V, iso_W)")
        out.append(" " * w + "".join(f"  {n:>{w}}" for n in self.names))
        for n, row in zip(self.names, self.hom):
            out.append(f"{n:<{w}}" + "".join(f"  {d:>{w}}" for d in row))
        return "\n".join(out)

    def records(self) -> list[dict]:
        recs = [
            {"kind": "dims", "V": v, "X": x, "dim_Q": q, "dim_iso": i, "dim_K": k}
            for v, x, q, i, k in self.rows
        ]
        for n, row in zip(self.names, self.hom):
            for m, d in zip(self.names, row):
                recs.append({"kind": "hom_iso", "V": n, "W": m, "dim": d})
        return recs


def iso_table(objects: Sequence[tuple[str, QuadSpace]], bound: int | None = None) -> IsoTable:
    names = [n for n, _ in objects]
    rows = []
    for (vn, V), (xn, X) in itertools.product(objects, objects):
        q = eval_functor("Q", V, X, bound).dim
        i = eval_functor("iso", V, X, bound).dim
        rows.append((vn, xn, q, i, q - i))
    hom = [[hom_iso_dim(V, W, bound) for _, W in objects] for _, V in objects]
    return IsoTable(names, rows, hom)
