from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import permutations
from removahedra import weakorder
from removahedra.polyhedra import ray_vector
from removahedra.shards import Shard


def test_counts():
    for n in range(1, 6):
        assert sum(1 for _ in weakorder.permutations(n)) == factorial(n)
        assert sum(1 for _ in weakorder.proper_subsets(n)) == 2**n - 2
    # n! (n-1) / 2 cover relations
    assert len(weakorder.hasse_edges(4)) == 36


def test_proper_subset_order():
    assert [sorted(s) for s in weakorder.proper_subsets(3)] == [[1], [2], [3], [1, 2], [1, 3], [2, 3]]


def test_cover_shard_example():
    assert weakorder.cover_shard((2, 4, 1, 3), 2) == Shard(1, 4, frozenset({2}))
    assert weakorder.cover_shard((1, 2), 1) == Shard(1, 2)


def test_bad_inputs():
    with pytest.raises(ValueError):
        weakorder.check_permutation((1, 1, 2))
    with pytest.raises(ValueError):
        weakorder.weak_leq((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        weakorder.swap((1, 2, 3), 3)


def test_alpha():
    assert weakorder.alpha(4) == (-3, -1, 1, 3)


@given(permutations(max_n=6))
def test_swap_is_involution_and_covers(p):
    for k, q in weakorder.neighbors(p):
        assert weakorder.swap(q, k) == p
        small, big = (p, q) if p[k - 1] < p[k] else (q, p)
        assert weakorder.weak_leq(small, big)
        assert len(weakorder.inversion_set(big)) == len(weakorder.inversion_set(small)) + 1
        # both sides of a wall see the same shard
        assert weakorder.cover_shard(p, k) == weakorder.cover_shard(q, k)


@given(permutations(min_n=2, max_n=6))
def test_chamber_rays_maximised_by_prefix_order(p):
    # x with x_{p_1} > x_{p_2} > ... lies in C(p); r(I) . x is largest at prefixes
    n = len(p)
    x = [0] * n
    for rank, v in enumerate(p):
        x[v - 1] = n - rank
    rays = weakorder.chamber_rays(p)
    assert len(rays) == n - 1
    for I in rays:
        best = sum(sorted(x, reverse=True)[: len(I)])
        assert sum(x[v - 1] for v in I) == best
        assert sum(ray_vector(I, n)) == 0


@given(permutations(max_n=5), permutations(max_n=5))
def test_weak_order_is_partial_order(p, q):
    if len(p) != len(q):
        return
    if weakorder.weak_leq(p, q) and weakorder.weak_leq(q, p):
        assert p == q


@given(st.integers(1, 6), st.data())
def test_subset_bits_roundtrip(n, data):
    s = data.draw(st.sets(st.integers(1, n)))
    bits = weakorder.subset_bits(s, n)
    assert {k + 1 for k, b in enumerate(bits) if b} == s
