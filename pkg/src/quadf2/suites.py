"""The verification suites behind ``quadf2 verify`` and the acceptance tests.

Each suite yields one :class:`CaseResult` per checked instance. Suites are
deterministic given the seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import oracles
from .cospancat import (
    Cospan,
    Verdict,
    compose_cospans,
    cospan_equiv,
    enumerate_cospans,
    epsilon,
    epsilon_lift,
    identity_cospan,
    pseudo_pushout,
    sigma,
    sigma_lift,
)
from .f2core import BitMatrix, enumerate_subspaces, rank
from .isofunc import (
    a_V_matrix,
    act,
    big_E,
    decomposition_check,
    eval_functor,
    hom_iso_dim,
)
from .qmorph import enumerate_homs, identity_map, random_hom
from .quadform import (
    H0,
    H1,
    POINT0,
    POINT1,
    ZERO,
    QuadSpace,
    arf,
    is_isometric,
    iso_class,
    orthogonal_sum,
    parse_descriptor,
    power,
)
from .spancat import compose_spans, e_alpha, enumerate_idempotents, enumerate_span_homs

DEFAULT_SEED = 20240611


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    expected: object
    actual: object
    passed: bool

    def record(self) -> dict:
        return {
            "suite": self.suite,
            "case": self.case,
            "expected": self.expected,
            "actual": self.actual,
            "status": "pass" if self.passed else "fail",
        }


@dataclass(frozen=True)
class Suite:
    name: str
    criterion: int
    theorem: str
    run: Callable[[int], Iterator[CaseResult]]


def _case(suite: str, case: str, expected, actual) -> CaseResult:
    return CaseResult(suite, case, expected, actual, expected == actual)


def _name(s: QuadSpace) -> str:
    return str(iso_class(s))


# nondegenerate objects of dimension at most 4, one per class plus H1+H1
NONDEG4 = [ZERO, H0, H1, power(H0, 2), orthogonal_sum(H1, H0), power(H1, 2)]
PLANES = [H0, H1]
APEX4 = [H0, H1, power(H0, 2), orthogonal_sum(H1, H0)]
SMALL_V = [parse_descriptor(d) for d in "0 x0 x1 H0 H1 x0^2 x1^2".split()]
SMALL_X = [parse_descriptor(d) for d in "0 x0 x1 H0 H1 x0^2 x1^2 H0+x0 H1+x0 H0+x1 x0^3 x1^3".split()]
ISO_OBJECTS = [("0", ZERO), ("x0", POINT0), ("x1", POINT1), ("H0", H0), ("H1", H1)]


def classification(seed: int) -> Iterator[CaseResult]:
    rng = random.Random(seed)
    for i in range(200):
        a, b = oracles.random_pair(rng)
        yield _case("classification", f"pair{i}:{_name(a)}~{_name(b)}", oracles.brute_isometric(a, b), is_isometric(a, b))


def arf_invariant(seed: int) -> Iterator[CaseResult]:
    for m in (1, 2, 3):
        s0 = power(H0, m)
        s1 = orthogonal_sum(H1, power(H0, m - 1))
        yield _case("arf", f"Arf(H0^{m})", 0, arf(s0))
        yield _case("arf", f"Arf(H1+H0^{m - 1})", 1, arf(s1))
        yield _case("arf", f"count-Arf(H0^{m})", 0, oracles.arf_by_count(s0))
        yield _case("arf", f"count-Arf(H1+H0^{m - 1})", 1, oracles.arf_by_count(s1))
    yield _case("arf", "H0+H0 ~ H1+H1", True, is_isometric(power(H0, 2), power(H1, 2)))
    yield _case("arf", "H0 !~ H1", False, is_isometric(H0, H1))


def degenerate_classes(seed: int) -> Iterator[CaseResult]:
    for r in (1, 2):
        a = orthogonal_sum(H0, power(POINT0, r))
        b = orthogonal_sum(H1, power(POINT0, r))
        yield _case("degenerate", f"H0+x0^{r} vs H1+x0^{r}", False, iso_class(a) == iso_class(b))
        a = orthogonal_sum(H0, power(POINT1, r))
        b = orthogonal_sum(H1, power(POINT1, r))
        yield _case("degenerate", f"H0+x1^{r} vs H1+x1^{r}", True, iso_class(a) == iso_class(b))


def _random_embedding(rng: random.Random, V: QuadSpace, max_dim: int = 4):
    targets = [X for X in NONDEG4 if X.dim >= V.dim and X.dim <= max_dim]
    rng.shuffle(targets)
    for X in targets:
        f = random_hom(V, X, rng)
        if f is not None:
            return f
    raise AssertionError("identity always embeds")


def pushout_laws(seed: int) -> Iterator[CaseResult]:
    rng = random.Random(seed)
    for i in range(50):
        V = rng.choice(NONDEG4[:4])
        g = _random_embedding(rng, V)
        P = pseudo_pushout(identity_map(V), g)
        yield _case("pushout", f"unit{i}", _name(g.cod), _name(P.total))
    for i in range(50):
        V = rng.choice(NONDEG4[:4])
        f, g = _random_embedding(rng, V), _random_embedding(rng, V)
        P, Q = pseudo_pushout(f, g), pseudo_pushout(g, f)
        square = (P.incl_W @ f) == (P.incl_X @ g)
        yield _case("pushout", f"symmetry{i}", (_name(P.total), True), (_name(Q.total), square))
    for i in range(50):
        # V -> X, V -> W <- Z, Z -> Y
        V = rng.choice(NONDEG4[:3])
        Z = rng.choice(NONDEG4[:3])
        vx = _random_embedding(rng, V)
        vw = _random_embedding(rng, V)
        W = vw.cod
        zw = random_hom(Z, W, rng)
        if zw is None:
            Z, zw = ZERO, random_hom(ZERO, W, rng)
        zy = _random_embedding(rng, Z)
        left = pseudo_pushout(vx, vw)  # X ⊥_V W
        lhs = pseudo_pushout(left.incl_X @ zw, zy).total
        right = pseudo_pushout(zw, zy)  # W ⊥_Z Y
        rhs = pseudo_pushout(vx, right.incl_W @ vw).total
        yield _case("pushout", f"associativity{i}", _name(lhs), _name(rhs))


def retraction_law(seed: int) -> Iterator[CaseResult]:
    rng = random.Random(seed)
    maps = [
        f
        for V, W in itertools.product(NONDEG4, NONDEG4)
        if V.dim <= W.dim
        for f in enumerate_homs(V, W)
    ]
    for i, f in enumerate(rng.sample(maps, 120)):
        V, W = f.dom, f.cod
        t1 = Cospan(V, W, W, f, identity_map(W))
        t2 = Cospan(W, V, W, identity_map(W), f)
        verdict = cospan_equiv(compose_cospans(t1, t2), identity_cospan(V))
        yield _case("retraction", f"f{i}:{_name(V)}->{_name(W)}", Verdict.EQUIVALENT.value, verdict.value)


def _all_maps(V: QuadSpace, W: QuadSpace) -> Iterator[BitMatrix]:
    for cols in itertools.product(range(1 << W.dim), repeat=V.dim):
        yield BitMatrix.from_columns(cols, W.dim)


def epsilon_fullness(seed: int) -> Iterator[CaseResult]:
    rng = random.Random(seed)
    for W in (H0, H1):
        for j, f in enumerate(_all_maps(H0, W)):
            yield _case("epsilon", f"H0->{_name(W)}#{j}", f.to_strings(), epsilon(epsilon_lift(f, H0, W)).to_strings())
    dim4 = [power(H0, 2), orthogonal_sum(H1, H0)]
    for i in range(200):
        V, W = rng.choice(dim4), rng.choice(dim4)
        f = BitMatrix.from_columns([rng.getrandbits(4) for _ in range(4)], 4)
        yield _case("epsilon", f"random{i}", f.to_strings(), epsilon(epsilon_lift(f, V, W)).to_strings())


def sigma_functor(seed: int) -> Iterator[CaseResult]:
    cos = {(a, b): enumerate_cospans(a, b, APEX4) for a in PLANES for b in PLANES}
    for (V, W), first in cos.items():
        for Y in PLANES:
            ok = total = 0
            for t1, t2 in itertools.product(first, cos[(W, Y)]):
                total += 1
                ok += sigma(compose_cospans(t1, t2)) == compose_spans(sigma(t1), sigma(t2))
            yield _case("sigma", f"functor {_name(V)}->{_name(W)}->{_name(Y)}", total, ok)
    for V, W in itertools.product(PLANES, PLANES):
        for j, s in enumerate(enumerate_span_homs(V, W)):
            yield _case("sigma", f"lift {_name(V)}->{_name(W)}#{j}", str(s), str(sigma(sigma_lift(s))))


def idempotents(seed: int) -> Iterator[CaseResult]:
    for V in (POINT0, POINT1, H0, H1):
        found = set(enumerate_idempotents(V))
        built = {e_alpha(V, A) for A in enumerate_subspaces(V.dim)}
        yield _case("idempotents", f"{_name(V)} set", sorted(map(str, built)), sorted(map(str, found)))
        comm = all(compose_spans(a, b) == compose_spans(b, a) for a, b in itertools.combinations(built, 2))
        yield _case("idempotents", f"{_name(V)} commute", True, comm)


def decomposition(seed: int) -> Iterator[CaseResult]:
    for V in SMALL_V:
        E = big_E(V)
        yield _case("decomposition", f"E_{_name(V)} idempotent", True, E * E == E)
    for V, X in itertools.product(SMALL_V, SMALL_X):
        r = decomposition_check(V, X)
        tag = f"V={_name(V)} X={_name(X)}"
        yield _case("decomposition", f"{tag} rank E", r.dim_iso, r.rank_E)
        yield _case("decomposition", f"{tag} rank 1+E", r.dim_K, r.rank_one_plus_E)
        yield _case("decomposition", f"{tag} count", r.dim_Q, sum(d for _, d, _ in r.summands))
        yield _case("decomposition", f"{tag} E_A ranks", [d for _, d, _ in r.summands], [k for _, _, k in r.summands])
        yield _case("decomposition", f"{tag} orthogonal complete", True, r.orthogonal and r.complete)


def hom_iso(seed: int) -> Iterator[CaseResult]:
    for (vn, V), (wn, W) in itertools.product(ISO_OBJECTS, ISO_OBJECTS):
        expected = oracles.brute_count_homs(V, V) if is_isometric(V, W) else 0
        yield _case("hom-iso", f"{vn},{wn}", expected, hom_iso_dim(V, W))


def self_duality(seed: int) -> Iterator[CaseResult]:
    for _, V in ISO_OBJECTS[1:]:
        m = a_V_matrix(V, V)
        yield _case("self-duality", f"{_name(V)} symmetric", True, m == m.T)
        yield _case("self-duality", f"{_name(V)} rank", eval_functor("iso", V, V).dim, rank(m))


def exactness(seed: int) -> Iterator[CaseResult]:
    for V, X in itertools.product(SMALL_V, SMALL_X):
        q = eval_functor("Q", V, X)
        k = eval_functor("K", V, X).dim
        i = eval_functor("iso", V, X).dim
        yield _case("exactness", f"V={_name(V)} X={_name(X)}", q.dim, k + i)
        # K is a sub-representation: the idempotent E_V kills it
        if q.dim:
            yield _case("exactness", f"V={_name(V)} X={_name(X)} E kills K", 0, _kills_K(V, X))


def _kills_K(V: QuadSpace, X: QuadSpace) -> int:
    """Number of K basis vectors not sent to zero by E_V (acting on Q)."""
    Q = eval_functor("Q", V, X)
    m = act(Q, big_E(V), "module")
    return sum(1 for i, s in enumerate(Q.spans) if s.rank < V.dim and m.rows[i])


SUITES: tuple[Suite, ...] = (
    Suite("classification", 1, "isometry classification agrees with exhaustive search", classification),
    Suite("arf", 2, "Arf invariant separates the two non-degenerate classes", arf_invariant),
    Suite("degenerate", 3, "classification of degenerate spaces by radical type", degenerate_classes),
    Suite("pushout", 4, "pseudo push-out unit, symmetry and associativity", pushout_laws),
    Suite("retraction", 5, "retraction law in the cospan category", retraction_law),
    Suite("epsilon", 6, "fullness of the forgetful functor epsilon", epsilon_fullness),
    Suite("sigma", 7, "functoriality and fullness of sigma", sigma_functor),
    Suite("idempotents", 8, "idempotents of End_Sp(V) are the e_A", idempotents),
    Suite("decomposition", 9, "E_V idempotent and Q_V splits into iso_A", decomposition),
    Suite("hom-iso", 10, "Hom(iso_V, iso_W) is F2[O(V)] or zero", hom_iso),
    Suite("self-duality", 11, "a_V pairing is symmetric of rank dim iso_V(V)", self_duality),
    Suite("exactness", 12, "0 -> K_V -> Q_V -> iso_V -> 0 is exact", exactness),
)


def suite(name: str) -> Suite:
    for s in SUITES:
        if s.name == name:
            return s
    raise KeyError(name)


def run_suite(s: Suite, seed: int = DEFAULT_SEED) -> list[CaseResult]:
    return list(s.run(seed))
