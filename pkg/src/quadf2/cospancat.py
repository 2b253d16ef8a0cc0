"""Cospans of non-degenerate quadratic spaces glued by pseudo push-out.

Includes the forgetful functor ``epsilon`` to linear maps, the functor
``sigma`` to spans, explicit preimages under both, and a bounded search for
the equivalence generated by apex embeddings.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .f2core import BitMatrix, Subspace, enumerate_subspaces, inverse, kernel, rref
from .qmorph import (
    QuadMap,
    enumerate_homs,
    extensions,
    first_hom,
    identity_map,
    invert,
    isometries,
    map_sum,
    orthogonal_group,
    orthogonal_complement,
    orthogonal_projection,
)
from .quadform import (
    H0,
    H1,
    DegenerateSpaceError,
    QuadSpace,
    arf,
    decompose,
    iso_class,
    orthogonal_sum,
    parse_space,
    symplectic_basis,
)
from .spancat import SpanMorphism


@dataclass(frozen=True)
class Cospan:
    """A representative ``[dom -left-> apex <-right- cod]``."""

    dom: QuadSpace
    cod: QuadSpace
    apex: QuadSpace
    left: QuadMap
    right: QuadMap

    def __post_init__(self):
        if self.left.dom != self.dom or self.right.dom != self.cod:
            raise ValueError("cospan legs do not start at dom/cod")
        if self.left.cod != self.apex or self.right.cod != self.apex:
            raise ValueError("cospan legs do not end at the apex")
        for s in (self.dom, self.cod, self.apex):
            if not s.is_nondegenerate():
                raise DegenerateSpaceError("cospan objects must be non-degenerate")

    @classmethod
    def of(cls, left: QuadMap, right: QuadMap) -> Cospan:
        return cls(left.dom, right.dom, left.cod, left, right)

    def to_text(self) -> str:
        parts = [self.dom.to_text(), self.cod.to_text(), self.apex.to_text()]
        parts.extend(self.left.mat.to_strings())
        parts.extend(self.right.mat.to_strings())
        return "\n".join(p for p in parts if p)


def parse_cospan(lines: Iterable[str]) -> Cospan:
    it = iter([ln for ln in (x.strip() for x in lines) if ln and not ln.startswith("#")])
    dom, cod, apex = parse_space(it), parse_space(it), parse_space(it)

    def matrix(ncols: int) -> BitMatrix:
        if ncols == 0:
            return BitMatrix.zero(apex.dim, 0)
        return BitMatrix.from_strings([next(it) for _ in range(apex.dim)], ncols)

    left = QuadMap(dom, apex, matrix(dom.dim))
    right = QuadMap(cod, apex, matrix(cod.dim))
    return Cospan(dom, cod, apex, left, right)


def identity_cospan(V: QuadSpace) -> Cospan:
    i = identity_map(V)
    return Cospan(V, V, V, i, i)


def disjoint_cospan(V: QuadSpace, W: QuadSpace) -> Cospan:
    """``[V -> V ⊥ W <- W]``."""
    X = orthogonal_sum(V, W)
    left = QuadMap.from_images(V, X, [1 << i for i in range(V.dim)])
    right = QuadMap.from_images(W, X, [1 << (V.dim + i) for i in range(W.dim)])
    return Cospan(V, W, X, left, right)


# -- pseudo push-out -----------------------------------------------------------


@dataclass(frozen=True)
class PseudoPushout:
    """``base ⊥ V' ⊥ V''`` with the inclusions of both codomains."""

    base: QuadSpace
    total: QuadSpace
    incl_W: QuadMap
    incl_X: QuadMap


def pseudo_pushout(f: QuadMap, g: QuadMap) -> PseudoPushout:
    if f.dom != g.dom:
        raise ValueError("pseudo push-out of maps with different domains")
    V = f.dom
    cW = orthogonal_complement(f)
    cX = orthogonal_complement(g)
    Vp = f.cod.restrict(cW.basis)
    Vpp = g.cod.restrict(cX.basis)
    total = orthogonal_sum(V, Vp, Vpp)

    def incl(h: QuadMap, comp: Subspace, shift: int) -> QuadMap:
        p = orthogonal_projection(h)
        imgs = []
        for j in range(h.cod.dim):
            w = 1 << j
            a = p.apply(w)
            imgs.append(a | (comp.coords(w ^ h(a)) << shift))
        return QuadMap.from_images(h.cod, total, imgs)

    return PseudoPushout(V, total, incl(f, cW, V.dim), incl(g, cX, V.dim + Vp.dim))


def compose_cospans(t1: Cospan, t2: Cospan) -> Cospan:
    """``t2 ∘ t1`` for ``t1: V -> W`` and ``t2: W -> Y``."""
    if t1.cod != t2.dom:
        raise ValueError("composing cospans with mismatched objects")
    P = pseudo_pushout(t1.right, t2.left)
    return Cospan(t1.dom, t2.cod, P.total, P.incl_W @ t1.left, P.incl_X @ t2.right)


def transpose_cospan(t: Cospan) -> Cospan:
    return Cospan(t.cod, t.dom, t.apex, t.right, t.left)


def cospan_orthogonal_sum(t1: Cospan, t2: Cospan) -> Cospan:
    left = map_sum(t1.left, t2.left)
    right = map_sum(t1.right, t2.right)
    return Cospan(left.dom, right.dom, left.cod, left, right)


def reindex_cospan(t: Cospan, dom_iso: QuadMap, cod_iso: QuadMap) -> Cospan:
    """Transport ``t`` along isometries ``t.dom -> V`` and ``t.cod -> W``."""
    return Cospan.of(t.left @ invert(dom_iso), t.right @ invert(cod_iso))


def enumerate_cospans(V: QuadSpace, W: QuadSpace, apexes: Sequence[QuadSpace]) -> list[Cospan]:
    """One cospan ``V -> X <- W`` per isomorphism class, for each apex ``X``.

    The orthogonal group of ``X`` acts transitively on embeddings of a
    non-degenerate ``V`` (Witt), so the left leg is fixed to the first
    embedding and right legs are taken up to its stabiliser.
    """
    out = []
    for X in apexes:
        left = first_hom(V, X)
        if left is None:
            continue
        stab = [g for g in orthogonal_group(X) if (g @ left) == left]
        seen: set[tuple[int, ...]] = set()
        for r in enumerate_homs(W, X):
            if r.images in seen:
                continue
            seen.update((g @ r).images for g in stab)
            out.append(Cospan(V, W, X, left, r))
    return out


# -- epsilon ---------------------------------------------------------------------


def epsilon(t: Cospan) -> BitMatrix:
    """Project onto the codomain after including the domain: ``p_right ∘ left``."""
    return orthogonal_projection(t.right) @ t.left.mat


def epsilon_lift(f: BitMatrix, V: QuadSpace, W: QuadSpace) -> Cospan:
    """A cospan ``[V -> W ⊥ Y <- W]`` whose epsilon is the linear map ``f``.

    Built one symplectic pair of ``V`` at a time; each new pair appends
    ``H0^k ⊥ H0^k ⊥ H1 ⊥ H0`` to ``Y`` so that the corrected images stay
    orthogonal to the earlier ones and keep their ``q`` values.
    """
    if f.shape != (W.dim, V.dim):
        raise ValueError(f"linear map shape {f.shape} does not fit {V.dim} -> {W.dim}")
    if not V.is_nondegenerate() or not W.is_nondegenerate():
        raise DegenerateSpaceError("epsilon_lift needs non-degenerate spaces")
    pairs = [] if V.dim == 0 else symplectic_basis(V)
    blocks: list[QuadSpace] = [W]
    width = W.dim

    def add(block: QuadSpace) -> int:
        nonlocal width
        blocks.append(block)
        off = width
        width += block.dim
        return off

    fa = [f.apply(a) for a, _ in pairs]
    fb = [f.apply(b) for _, b in pairs]
    ga: list[int] = []
    gb: list[int] = []
    for n, (a, b) in enumerate(pairs):
        a0 = [add(H0) for _ in range(n)]
        A0 = [add(H0) for _ in range(n)]
        A1 = add(H1)
        C0 = add(H0)
        for i in range(n):
            ga[i] |= 1 << a0[i]
            gb[i] |= 1 << A0[i]
        x = fa[n] | (1 << C0)
        y = fb[n]
        if V.q(a) ^ W.q(fa[n]):
            x |= 1 << A1
        if V.q(b) ^ W.q(fb[n]):
            y |= 1 << A1
        if not W.B(fa[n], fb[n]):
            y |= 1 << (C0 + 1)
        for i in range(n):
            # b0^i sits at a0[i] + 1 and B0^i at A0[i] + 1
            if W.B(fa[i], fa[n]):
                x |= 1 << (a0[i] + 1)
            if W.B(fb[i], fa[n]):
                x |= 1 << (A0[i] + 1)
            if W.B(fa[i], fb[n]):
                y |= 1 << (a0[i] + 1)
            if W.B(fb[i], fb[n]):
                y |= 1 << (A0[i] + 1)
        ga.append(x)
        gb.append(y)
    apex = orthogonal_sum(*blocks)
    # images are known on the symplectic basis; change back to the standard one
    S = BitMatrix.from_columns([v for p in pairs for v in p], V.dim)
    G = BitMatrix.from_columns([v for p in zip(ga, gb) for v in p], apex.dim)
    left = QuadMap(V, apex, G @ inverse(S))
    right = QuadMap.from_images(W, apex, [1 << i for i in range(W.dim)])
    return Cospan(V, W, apex, left, right)


# -- sigma -----------------------------------------------------------------------


def sigma(t: Cospan) -> SpanMorphism:
    """The span of the fibre product ``dom ×_apex cod``."""
    cols = list(t.left.images) + list(t.right.images)
    rel = kernel(BitMatrix.from_columns(cols, t.apex.dim))
    return SpanMorphism(t.dom, t.cod, rel)


def hyperbolic_partners(
    f: QuadMap, inside: Subspace | None = None
) -> tuple[list[int], Subspace]:
    """Split a non-degenerate space around the image of a totally radical ``D``.

    ``f: D -> H`` with ``D`` having zero bilinear form. Returns ``k_1..k_r``
    and a non-degenerate ``H'`` with ``H = ⊥ Vect(f(x_i), k_i) ⊥ H'`` and
    ``B(f(x_i), k_i) = 1``. With ``inside`` (a non-degenerate subspace
    containing the image) everything happens inside it instead of ``H``.
    """
    D, H = f.dom, f.cod
    if not D.gram.is_zero():
        raise ValueError("domain must carry the zero bilinear form")
    if inside is None:
        if not H.is_nondegenerate():
            raise DegenerateSpaceError("target must be non-degenerate")
        inside = Subspace.full(H.dim)
    elif not H.restrict(inside.basis).is_nondegenerate():
        raise DegenerateSpaceError("ambient subspace must be non-degenerate")
    xs = f.images
    if any(x not in inside for x in xs):
        raise ValueError("image is not inside the given subspace")
    ks: list[int] = []
    rest = list(inside.basis)
    for n, x in enumerate(xs):
        alphas = [H.B(x, k) for k in ks]
        h = x
        for i, al in enumerate(alphas):
            if al:
                h ^= xs[i]
        k = next((w for w in rest if H.B(h, w)), None)
        if k is None:
            raise AssertionError("no hyperbolic partner; image is not injective")
        for i, al in enumerate(alphas):
            if al:
                ks[i] ^= k
        ks.append(k)
        # orthogonal complement of Vect(h, k) inside the remaining space
        proj = [w ^ (h if H.B(w, k) else 0) ^ (k if H.B(w, h) else 0) for w in rest]
        rest = list(rref(proj))
    return ks, Subspace.span(rest, H.dim)


_T_CASES: dict[tuple[int, int, int], tuple[QuadSpace, QuadSpace, QuadSpace, int, int, list[int], list[int]]] = {
    # (eps, arf dom, arf cod): (dom, cod, apex, x in dom, x in cod, left images, right images)
    (0, 0, 0): (H0, H0, orthogonal_sum(H0, H0), 0b01, 0b01, [0b0001, 0b0110], [0b0001, 0b1010]),
    (1, 0, 0): (H0, H0, orthogonal_sum(H0, H0), 0b11, 0b11, [0b0101, 0b0110], [0b1001, 0b1010]),
    (1, 1, 1): (H1, H1, orthogonal_sum(H1, H0), 0b01, 0b01, [0b0001, 0b1010], [0b0001, 0b0110]),
    (1, 0, 1): (H0, H1, orthogonal_sum(H1, H0), 0b11, 0b01, [0b1111, 0b1110], [0b0001, 0b0010]),
}


def _line_cospan(P: QuadSpace, Q: QuadSpace, eps: int) -> Cospan:
    """A cospan ``P -> X <- Q`` whose sigma is the line spanned by ``(e_0, e_0)``."""
    key = (eps, arf(P), arf(Q))
    if key == (1, 1, 0):
        return transpose_cospan(_line_cospan(Q, P, eps))
    if key not in _T_CASES:
        raise ValueError(f"no span [{iso_class(P)} <- x{eps} -> {iso_class(Q)}]")
    dom, cod, apex, xd, xc, limgs, rimgs = _T_CASES[key]
    t = Cospan.of(
        QuadMap.from_images(dom, apex, limgs), QuadMap.from_images(cod, apex, rimgs)
    )
    # first isometries (lexicographic) sending e_0 to the normal-form vector
    phi = next(isometries(P, dom, fixed=[xd]))
    psi = next(isometries(Q, cod, fixed=[xc]))
    return Cospan.of(t.left @ phi, t.right @ psi)


def sigma_lift(s: SpanMorphism) -> Cospan:
    """A cospan whose sigma is ``s``.

    ``s`` splits as an identity on the non-degenerate part of its middle
    object, a disjoint part, and one plane-to-plane span per radical line;
    each piece has an explicit preimage and the pieces are summed.
    """
    V, W = s.dom, s.cod
    if not V.is_nondegenerate() or not W.is_nondegenerate():
        raise DegenerateSpaceError("sigma_lift needs non-degenerate endpoints")
    D = s.middle()
    f, g = s.left_leg(), s.right_leg()
    dec = decompose(D)
    hs = dec.nondeg_basis
    fh = [f(h) for h in hs]
    gh = [g(h) for h in hs]

    def perp(space: QuadSpace, vecs: Sequence[int]) -> Subspace:
        rows = tuple(space.polar(v) for v in vecs)
        return kernel(BitMatrix(len(rows), space.dim, rows))

    rad = dec.rad_basis
    R = D.restrict(rad)
    fr = QuadMap.from_images(R, V, [f(x) for x in rad])
    gr = QuadMap.from_images(R, W, [g(x) for x in rad])
    kv, Vp = hyperbolic_partners(fr, perp(V, fh))
    kw, Wp = hyperbolic_partners(gr, perp(W, gh))

    lines = []
    for i, x in enumerate(rad):
        pv = [fr.images[i], kv[i]]
        pw = [gr.images[i], kw[i]]
        P, Q = V.restrict(pv), W.restrict(pw)
        eps = D.q(x)
        lines.append(((eps, iso_class(P), iso_class(Q)), pv, pw, P, Q))
    lines.sort(key=lambda item: item[0])

    DH = V.restrict(fh)
    pieces = [identity_cospan(DH), disjoint_cospan(V.restrict(Vp.basis), W.restrict(Wp.basis))]
    dom_vecs = fh + list(Vp.basis)
    cod_vecs = gh + list(Wp.basis)
    # identity piece: dom and cod coordinates both follow hs
    for (eps, _, _), pv, pw, P, Q in lines:
        pieces.append(_line_cospan(P, Q, eps))
        dom_vecs += pv
        cod_vecs += pw
    big = pieces[0]
    for p in pieces[1:]:
        big = cospan_orthogonal_sum(big, p)
    # the identity piece's cod is DH in f-coordinates; g(h) carries the same form
    dom_iso = QuadMap.from_images(big.dom, V, dom_vecs)
    cod_iso = QuadMap.from_images(big.cod, W, cod_vecs)
    return reindex_cospan(big, dom_iso, cod_iso)


# -- equivalence -------------------------------------------------------------------


class Verdict(str, enum.Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


def r_move(a: Cospan, b: Cospan) -> QuadMap | None:
    """An apex embedding ``alpha`` with ``alpha ∘ a.left = b.left`` and same on the right."""
    if a.dom != b.dom or a.cod != b.cod or a.apex.dim > b.apex.dim:
        return None
    src = list(a.left.images) + list(a.right.images)
    tgt = list(b.left.images) + list(b.right.images)
    n = a.apex.dim
    # alpha is forced on span(src); it must be well defined there
    ker = kernel(BitMatrix.from_columns(src, n))
    for c in ker.basis:
        acc = 0
        for i, t in enumerate(tgt):
            if (c >> i) & 1:
                acc ^= t
        if acc:
            return None
    basis: list[int] = []
    fixed: list[int] = []
    ech: list[int] = []
    for v, t in zip(src, tgt):
        if len(rref(ech + [v])) > len(ech):
            ech = list(rref(ech + [v]))
            basis.append(v)
            fixed.append(t)
    comp = Subspace.span(basis, n).complement_basis()
    full = basis + list(comp)
    dom = a.apex.restrict(full)
    for imgs in extensions(dom, b.apex, fixed):
        mat = BitMatrix.from_columns(imgs, b.apex.dim) @ inverse(BitMatrix.from_columns(full, n))
        return QuadMap(a.apex, b.apex, mat)
    return None


def _restrictions(t: Cospan, max_free: int = 6) -> Iterator[Cospan]:
    n = t.apex.dim
    core = Subspace.span(list(t.left.images) + list(t.right.images), n)
    comp = core.complement_basis()
    if len(comp) > max_free:
        return
    for U in enumerate_subspaces(len(comp), bound=max_free):
        extra = [_combine(comp, u) for u in U.basis]
        S = Subspace.span(list(core.basis) + extra, n)
        if S.dim == n or S.dim % 2:
            continue
        X = t.apex.restrict(S.basis)
        if not X.is_nondegenerate():
            continue
        left = QuadMap.from_images(t.dom, X, [S.coords(v) for v in t.left.images])
        right = QuadMap.from_images(t.cod, X, [S.coords(v) for v in t.right.images])
        yield Cospan(t.dom, t.cod, X, left, right)


def _combine(vecs: Sequence[int], c: int) -> int:
    out = 0
    for i, v in enumerate(vecs):
        if (c >> i) & 1:
            out ^= v
    return out


def _extensions(t: Cospan, max_apex: int) -> Iterator[Cospan]:
    for Z in (H0, H1):
        if t.apex.dim + Z.dim > max_apex:
            continue
        X = orthogonal_sum(t.apex, Z)
        yield Cospan(
            t.dom,
            t.cod,
            X,
            QuadMap.from_images(t.dom, X, t.left.images),
            QuadMap.from_images(t.cod, X, t.right.images),
        )


def cospan_equiv(
    t1: Cospan,
    t2: Cospan,
    max_apex: int | None = None,
    layers: int = 3,
    max_nodes: int = 64,
) -> Verdict:
    """Sound, bounded test of the equivalence generated by apex embeddings.

    ``distinct`` is returned only when sigma or epsilon separate the two;
    ``equivalent`` only with an explicit chain of embeddings; otherwise
    ``unknown``.
    """
    if t1.dom != t2.dom or t1.cod != t2.cod:
        raise ValueError("cospans have different endpoints")
    if sigma(t1) != sigma(t2) or epsilon(t1) != epsilon(t2):
        return Verdict.DISTINCT
    if t1 == t2:
        return Verdict.EQUIVALENT
    if max_apex is None:
        max_apex = max(t1.dom.dim + t1.cod.dim + 4, t1.apex.dim, t2.apex.dim)
    side1, side2 = [t1], [t2]
    checked: set[tuple[int, int]] = set()
    for layer in range(layers + 1):
        for i, j in itertools.product(range(len(side1)), range(len(side2))):
            if (i, j) in checked:
                continue
            checked.add((i, j))
            a, b = side1[i], side2[j]
            if r_move(a, b) is not None or r_move(b, a) is not None:
                return Verdict.EQUIVALENT
        if layer == layers:
            break
        for side in (side1, side2):
            grown = []
            for t in side:
                for u in itertools.chain(_restrictions(t), _extensions(t, max_apex)):
                    if u not in side and u not in grown:
                        grown.append(u)
            side.extend(grown[: max(0, max_nodes - len(side))])
    return Verdict.UNKNOWN

