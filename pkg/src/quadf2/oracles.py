"""Slow, independent reference computations used to cross-check the library.

Nothing here shares code with the fast paths beyond ``QuadSpace.q``: the
isometry test walks all invertible matrices, Hom counts walk all matrices,
and the Arf invariant is read off from counting zeros of ``q``.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .f2core import BitMatrix, gaussian_binomial
from .quadform import QuadSpace


def _q_all(s: QuadSpace) -> list[int]:
    # direct evaluation from the definition, no lookup table
    out = []
    for v in range(1 << s.dim):
        acc = 0
        for i in range(s.dim):
            if (v >> i) & 1:
                acc ^= (s.diag >> i) & 1
                for j in range(i + 1, s.dim):
                    if (v >> j) & 1:
                        acc ^= (s.gram.rows[i] >> j) & 1
        out.append(acc)
    return out


def _apply(cols: tuple[int, ...], v: int) -> int:
    out = 0
    for i, c in enumerate(cols):
        if (v >> i) & 1:
            out ^= c
    return out


@lru_cache(maxsize=None)
def general_linear(n: int) -> tuple[tuple[int, ...], ...]:
    """Every invertible ``n x n`` matrix, as column tuples."""
    out = []
    for cols in itertools.product(range(1, 1 << n), repeat=n):
        span = {0}
        ok = True
        for c in cols:
            if c in span:
                ok = False
                break
            span |= {x ^ c for x in span}
        if ok:
            out.append(cols)
    return tuple(out)


def brute_isometric(a: QuadSpace, b: QuadSpace) -> bool:
    """Search all of GL_n for a matrix ``M`` with ``q_b(M v) = q_a(v)`` for every ``v``."""
    if a.dim != b.dim:
        return False
    qa, qb = _q_all(a), _q_all(b)
    n = a.dim
    for cols in general_linear(n):
        if all(qb[_apply(cols, v)] == qa[v] for v in range(1 << n)):
            return True
    return False


def brute_count_homs(V: QuadSpace, W: QuadSpace) -> int:
    """Injective ``q``-preserving maps, counted over every ``W.dim x V.dim`` matrix."""
    qv, qw = _q_all(V), _q_all(W)
    n = V.dim
    count = 0
    for cols in itertools.product(range(1 << W.dim), repeat=n):
        images = [_apply(cols, v) for v in range(1 << n)]
        if len(set(images)) != len(images):
            continue
        if all(qw[images[v]] == qv[v] for v in range(1 << n)):
            count += 1
    return count


def arf_by_count(s: QuadSpace) -> int:
    """0 when ``q`` has more zeros than ones (``2^(2m-1) + 2^(m-1)`` of them)."""
    zeros = _q_all(s).count(0)
    return 0 if 2 * zeros > (1 << s.dim) else 1


def subspace_count(n: int) -> int:
    return sum(gaussian_binomial(n, k) for k in range(n + 1))


def brute_subspaces(n: int) -> set[frozenset[int]]:
    """All subspaces of GF(2)^n as sets of vectors, by closing every subset of generators."""
    found: set[frozenset[int]] = set()
    frontier = {frozenset([0])}
    while frontier:
        found |= frontier
        nxt = set()
        for S in frontier:
            for v in range(1 << n):
                if v not in S:
                    T = frozenset(S | {x ^ v for x in S})
                    if T not in found:
                        nxt.add(T)
        frontier = nxt
    return found


def random_space(rng: random.Random, dim: int) -> QuadSpace:
    rows = [0] * dim
    for i in range(dim):
        for j in range(i + 1, dim):
            if rng.getrandbits(1):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return QuadSpace(dim, BitMatrix(dim, dim, tuple(rows)), rng.getrandbits(dim) if dim else 0)


def random_invertible(rng: random.Random, n: int) -> tuple[int, ...]:
    return rng.choice(general_linear(n))


def rebase(s: QuadSpace, cols: tuple[int, ...]) -> QuadSpace:
    """The form ``v -> q(M v)``, isometric to ``s`` when ``M`` is invertible."""
    return s.restrict(cols)


def random_pair(rng: random.Random, max_dim: int = 4) -> tuple[QuadSpace, QuadSpace]:
    """Half the time an isometric pair by a random change of basis, else independent."""
    n = rng.randint(0, max_dim)
    a = random_space(rng, n)
    if rng.random() < 0.5:
        return a, rebase(a, random_invertible(rng, n))
    return a, random_space(rng, n)
