import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from strategies import matrices

from quadf2 import oracles
from quadf2.f2core import (
    BitMatrix,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    image,
    inverse,
    is_independent,
    kernel,
    rank,
    rref,
    solve,
    vec_from_str,
    vec_to_str,
)
from quadf2.limits import EnumerationLimitError


def M(*rows):
    return BitMatrix.from_strings(rows)


def test_rank_examples():
    assert rank(BitMatrix.identity(2)) == 2
    assert rank(BitMatrix.zero(2, 2)) == 0
    assert rank(M("11", "11")) == 1


def test_kernel_examples():
    assert kernel(BitMatrix.identity(2)) == Subspace.zero(2)
    assert kernel(BitMatrix.zero(2, 2)) == Subspace.full(2)
    assert kernel(M("11")) == Subspace.span([0b11], 2)


def test_solve_examples():
    assert solve(BitMatrix.identity(2), vec_from_str("10")) == vec_from_str("10")
    assert solve(BitMatrix.zero(1, 1), 1) is None
    m = M("11")
    x = solve(m, 0)
    assert x is not None and m.apply(x) == 0


def test_solve_rejects_long_rhs():
    with pytest.raises(ValueError):
        solve(BitMatrix.identity(2), 0b100)


def test_bit_strings_put_coordinate_zero_first():
    assert vec_from_str("100") == 1
    assert vec_to_str(0b110, 3) == "011"
    with pytest.raises(ValueError):
        vec_from_str("102")


def test_matrix_validation():
    with pytest.raises(ValueError):
        BitMatrix(1, 1, (0b10,))
    with pytest.raises(ValueError):
        BitMatrix(2, 1, (1,))


@pytest.mark.parametrize("n,count", [(1, 2), (2, 5), (3, 16)])
def test_subspace_counts(n, count):
    assert len(enumerate_subspaces(n)) == count


@pytest.mark.parametrize("n", range(6))
def test_subspaces_match_brute_force(n):
    subs = enumerate_subspaces(n)
    assert len(subs) == len(set(subs)) == oracles.subspace_count(n)
    if n <= 4:
        as_sets = {frozenset(S.elements()) for S in subs}
        assert as_sets == oracles.brute_subspaces(n)


def test_subspace_enumeration_bound():
    with pytest.raises(EnumerationLimitError):
        enumerate_subspaces(9)
    assert len(enumerate_subspaces(9, bound=9, max_dim=1)) == 1 + 511


def test_enumeration_order_is_dimension_first():
    dims = [S.dim for S in enumerate_subspaces(4)]
    assert dims == sorted(dims)


def test_gaussian_binomial():
    assert [gaussian_binomial(4, k) for k in range(5)] == [1, 15, 35, 15, 1]
    assert gaussian_binomial(3, 5) == 0


@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel(m).dim == m.ncols
    assert rank(m) == rank(m.T) == image(m).dim
    for v in kernel(m).basis:
        assert m.apply(v) == 0


@pytest.mark.parametrize("shape", [(1, 1), (2, 2), (2, 3), (3, 2)])
def test_rank_nullity_exhaustive(shape):
    r, c = shape
    for bits in range(1 << (r * c)):
        rows = tuple((bits >> (i * c)) & ((1 << c) - 1) for i in range(r))
        m = BitMatrix(r, c, rows)
        assert rank(m) + kernel(m).dim == c


@given(matrices(), st.data())
def test_solve_is_correct(m, data):
    b = data.draw(st.integers(0, (1 << m.nrows) - 1))
    x = solve(m, b)
    if x is None:
        assert b not in image(m)
    else:
        assert m.apply(x) == b


@given(st.lists(st.integers(0, 255), max_size=10), st.randoms(use_true_random=False))
def test_subspace_canonical_under_reshuffle(vecs, rng):
    S = Subspace.span(vecs, 8)
    gens = list(S.basis)
    # random invertible recombination of the basis
    for _ in range(20):
        if len(gens) > 1:
            i, j = rng.sample(range(len(gens)), 2)
            gens[i] ^= gens[j]
    rng.shuffle(gens)
    assert Subspace.span(gens, 8) == S
    assert all(v in S for v in vecs)


@given(st.lists(st.integers(0, 63), max_size=6), st.lists(st.integers(0, 63), max_size=6))
def test_intersection_and_sum(a, b):
    A, B = Subspace.span(a, 6), Subspace.span(b, 6)
    assert (A + B).dim + A.intersect(B).dim == A.dim + B.dim
    assert set(A.intersect(B).elements()) == set(A.elements()) & set(B.elements())
    assert A <= A + B


def test_coords_and_combine_roundtrip():
    S = Subspace.span([0b0110, 0b1011], 4)
    for c in range(4):
        assert S.coords(S.combine(c)) == c
    assert len(S.complement_basis()) == 2
    assert (S + Subspace.span(S.complement_basis(), 4)) == Subspace.full(4)


def test_inverse():
    rng = random.Random(3)
    for _ in range(50):
        cols = oracles.random_invertible(rng, 4)
        m = BitMatrix.from_columns(cols, 4)
        assert m @ inverse(m) == BitMatrix.identity(4)
    with pytest.raises(ValueError):
        inverse(M("11", "11"))


def test_rref_and_independence():
    assert rref([0b11, 0b01]) == (0b01, 0b10)
    assert is_independent([0b01, 0b10])
    assert not is_independent([0b11, 0b01, 0b10])
