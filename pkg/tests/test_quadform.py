import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import spaces

from quadf2 import oracles
from quadf2.f2core import BitMatrix, Subspace
from quadf2.quadform import (
    H0,
    H1,
    POINT0,
    POINT1,
    ZERO,
    DegenerateSpaceError,
    IsoClass,
    QuadSpace,
    arf,
    arf_of_pairs,
    decompose,
    eval_B,
    eval_q,
    from_class,
    is_isometric,
    iso_class,
    orthogonal_sum,
    parse_descriptor,
    parse_space,
    power,
    radical,
    standard,
    symplectic_basis,
)

A0, B0 = 0b01, 0b10


def test_eval_q_on_planes():
    assert eval_q(H0, A0) == 0
    assert eval_q(H0, A0 | B0) == 1
    assert eval_q(H1, A0 | B0) == 1
    with pytest.raises(ValueError):
        eval_q(H0, 0b100)


def test_eval_B():
    assert eval_B(H0, A0, B0) == 1
    assert eval_B(POINT1, 1, 1) == 0
    with pytest.raises(ValueError):
        eval_B(POINT1, 2, 1)


@given(spaces(), st.data())
def test_polarisation(s, data):
    u = data.draw(st.integers(0, (1 << s.dim) - 1))
    v = data.draw(st.integers(0, (1 << s.dim) - 1))
    assert s.B(u, v) == s.q(u ^ v) ^ s.q(u) ^ s.q(v)
    assert s.B(v, v) == 0


@pytest.mark.parametrize("n", range(4))
def test_polarisation_exhaustive_small(n):
    rng = random.Random(n)
    for _ in range(20):
        s = oracles.random_space(rng, n)
        for u in range(1 << n):
            for v in range(1 << n):
                assert s.B(u, v) == s.q(u ^ v) ^ s.q(u) ^ s.q(v)


def test_q_without_table_matches_table():
    big = power(H1, 7)  # dim 14, beyond the lookup table
    assert big.qtable is None
    small = power(H1, 2)
    for v in range(16):
        assert big.q(v) == small.q(v)
    assert big.q((1 << 14) - 1) == 1


def test_space_validation():
    with pytest.raises(ValueError):
        QuadSpace(2, BitMatrix.from_strings(["01", "00"]), 0)
    with pytest.raises(ValueError):
        QuadSpace(1, BitMatrix.from_strings(["1"]), 0)
    with pytest.raises(ValueError):
        QuadSpace(1, BitMatrix.zero(1, 1), 0b10)


def test_radical():
    assert radical(H0) == Subspace.zero(2)
    assert radical(POINT1) == Subspace.full(1)
    assert radical(orthogonal_sum(H0, POINT0)) == Subspace.span([0b100], 3)


def test_orthogonal_sum():
    assert orthogonal_sum(H0, ZERO) == H0
    assert orthogonal_sum(H1, H0).dim == 4
    assert iso_class(power(H0, 2)) == iso_class(power(H1, 2))
    s = orthogonal_sum(H1, POINT0)
    assert s.restrict([1, 2]) == H1
    assert s.restrict([4]) == POINT0


def test_standard_spaces():
    assert standard("H0").diag == 0 and standard("H0").gram.rows == (B0, A0)
    assert standard("point1").dim == 1 and standard("point1").q(1) == 1
    with pytest.raises(ValueError):
        standard("H2")


def test_descriptors():
    assert parse_descriptor("H1+H0^2+x0").dim == 7
    assert parse_descriptor("0") == ZERO
    assert parse_descriptor("H0 + x1") == orthogonal_sum(H0, POINT1)
    for bad in ["", "H2", "x0^", "H0++"]:
        with pytest.raises(ValueError):
            parse_descriptor(bad)


def test_text_roundtrip():
    s = parse_descriptor("H1+x0")
    assert parse_space(s.to_text().splitlines()) == s
    assert parse_space(["0"]) == ZERO


def test_from_class_roundtrip_random():
    rng = random.Random(11)
    for _ in range(100):
        s = oracles.random_space(rng, rng.randint(0, 4))
        assert oracles.brute_isometric(from_class(iso_class(s)), s)


def test_iso_class_validation():
    with pytest.raises(ValueError):
        IsoClass(3, 0, None, 0)  # odd non-degenerate part
    with pytest.raises(ValueError):
        IsoClass(3, 1, 1, 0)  # nondeg class given with a type-1 radical
    with pytest.raises(ValueError):
        IsoClass(2, 0, 1, 0)
    assert IsoClass(3, 1, 0, 1).descriptor() == "H1+x0"
    assert IsoClass(6, 0, None, 1).descriptor() == "H1+H0^2"


def test_decompose_examples():
    d = decompose(H0)
    assert d.nondeg_basis and not d.rad_basis and d.rad_type is None
    mixed = orthogonal_sum(POINT0, POINT1)
    d = decompose(mixed)
    assert d.rad_type == 1 and len(d.rad_basis) == 2
    assert all(mixed.q(r) == 1 for r in d.rad_basis)
    s = orthogonal_sum(H1, POINT1)
    d = decompose(s)
    assert len(d.rad_basis) == 1 and d.rad_type == 1
    assert arf_of_pairs(s, d.pairs) == 0


@settings(max_examples=200)
@given(spaces(max_dim=5))
def test_decompose_postconditions(s):
    d = decompose(s)
    nd, rad = list(d.nondeg_basis), list(d.rad_basis)
    assert len(nd) + len(rad) == s.dim
    assert Subspace.span(nd + rad, s.dim).dim == s.dim
    assert all(s.B(x, r) == 0 for x in nd + rad for r in rad)
    assert s.restrict(nd).is_nondegenerate()
    if rad:
        assert {s.q(r) for r in rad} == {d.rad_type}
    reassembled = orthogonal_sum(s.restrict(nd), s.restrict(rad))
    assert is_isometric(reassembled, s)


def test_symplectic_basis():
    assert symplectic_basis(H0) == [(A0, B0)]
    s = orthogonal_sum(H0, H1)
    pairs = symplectic_basis(s)
    assert len(pairs) == 2
    flat = [v for p in pairs for v in p]
    for i, u in enumerate(flat):
        for j, v in enumerate(flat):
            assert s.B(u, v) == (1 if {i, j} in ({0, 1}, {2, 3}) else 0)
    with pytest.raises(DegenerateSpaceError):
        symplectic_basis(POINT0)
    with pytest.raises(DegenerateSpaceError):
        symplectic_basis(power(POINT0, 2))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_arf_values(m):
    assert arf(power(H0, m)) == 0
    assert arf(orthogonal_sum(H1, power(H0, m - 1))) == 1
    assert arf(power(H1, 2)) == 0


def test_arf_rejects_degenerate():
    with pytest.raises(DegenerateSpaceError):
        arf(orthogonal_sum(H0, POINT0))


@pytest.mark.parametrize("base", [power(H0, 2), orthogonal_sum(H1, H0)])
def test_arf_invariant_under_rebasing(base):
    rng = random.Random(5)
    expected = oracles.arf_by_count(base)
    for _ in range(50):
        s = oracles.rebase(base, oracles.random_invertible(rng, 4))
        assert arf(s) == expected
        # the symplectic basis of the rebased space is a fresh one each time
        assert arf_of_pairs(s, symplectic_basis(s)) == expected


def test_class_separations():
    assert iso_class(H0) != iso_class(H1)
    assert iso_class(orthogonal_sum(H0, POINT1)) == iso_class(orthogonal_sum(H1, POINT1))
    assert iso_class(orthogonal_sum(H0, POINT0)) != iso_class(orthogonal_sum(H1, POINT0))


@settings(max_examples=60, deadline=None)
@given(spaces(max_dim=4), spaces(max_dim=4))
def test_classification_matches_oracle(a, b):
    assert is_isometric(a, b) == oracles.brute_isometric(a, b)
