"""The oracles themselves, on cases small enough to check by hand."""

import random

from quadf2 import oracles
from quadf2.quadform import H0, H1, POINT0, POINT1, orthogonal_sum, power


def test_general_linear_orders():
    assert [len(oracles.general_linear(n)) for n in range(5)] == [1, 1, 6, 168, 20160]


def test_brute_isometric():
    assert oracles.brute_isometric(power(H0, 2), power(H1, 2))
    assert not oracles.brute_isometric(H0, H1)
    assert oracles.brute_isometric(orthogonal_sum(H0, POINT1), orthogonal_sum(H1, POINT1))
    assert not oracles.brute_isometric(orthogonal_sum(H0, POINT0), orthogonal_sum(H1, POINT0))
    assert not oracles.brute_isometric(H0, POINT0)


def test_brute_hom_counts():
    assert oracles.brute_count_homs(POINT0, H0) == 2
    assert oracles.brute_count_homs(POINT1, H0) == 1
    assert oracles.brute_count_homs(POINT0, H1) == 0
    assert oracles.brute_count_homs(H1, H1) == 6


def test_arf_by_count():
    assert oracles.arf_by_count(H0) == 0
    assert oracles.arf_by_count(H1) == 1
    assert oracles.arf_by_count(orthogonal_sum(H1, H1, H1)) == 1


def test_random_pairs_are_well_formed():
    rng = random.Random(0)
    for _ in range(50):
        a, b = oracles.random_pair(rng)
        assert a.dim == b.dim <= 4
