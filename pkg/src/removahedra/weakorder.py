"""Permutations of [n], the weak order, and chambers/rays of the braid fan.

Permutations are tuples in one-line notation with values ``1..n``. Positions
and values are kept apart in every signature: ``k`` is always a position.
Subsets of [n] are frozensets of ints.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

Permutation = tuple
Subset = frozenset


def check_permutation(p: Sequence[int]) -> Permutation:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p!r} is not a permutation of [1..{len(p)}]")
    return p


def permutations(n: int):
    """All permutations of [n] in lexicographic order."""
    return itertools.permutations(range(1, n + 1))


def is_proper(subset: Iterable[int], n: int) -> bool:
    s = frozenset(subset)
    return 0 < len(s) < n and s <= frozenset(range(1, n + 1))


def proper_subsets(n: int):
    """Proper non-empty subsets of [n], by size then lexicographically."""
    for size in range(1, n):
        for c in itertools.combinations(range(1, n + 1), size):
            yield frozenset(c)


def subset_bits(subset: Iterable[int], n: int) -> tuple:
    s = frozenset(subset)
    return tuple(int(k in s) for k in range(1, n + 1))


def alpha(n: int) -> tuple:
    """The direction (-n+1, -n+3, ..., n-1) orienting the weak order."""
    return tuple(2 * i - n - 1 for i in range(1, n + 1))


def inversion_set(p: Sequence[int]) -> frozenset:
    """Value pairs ``(p_i, p_j)`` with ``i < j`` and ``p_i > p_j``."""
    return frozenset(
        (p[a], p[b])
        for a in range(len(p))
        for b in range(a + 1, len(p))
        if p[a] > p[b]
    )


def weak_leq(p: Sequence[int], q: Sequence[int]) -> bool:
    if len(p) != len(q):
        raise ValueError("permutations of different sizes")
    return inversion_set(p) <= inversion_set(q)


def swap(p: Sequence[int], k: int) -> Permutation:
    """Exchange positions k and k+1 (1-indexed)."""
    if not 1 <= k < len(p):
        raise ValueError(f"position {k} out of range for n={len(p)}")
    q = list(p)
    q[k - 1], q[k] = q[k], q[k - 1]
    return tuple(q)


def cover_shard(p: Sequence[int], k: int):
    """The shard on the wall between C(p) and C(p with positions k, k+1 swapped)."""
    from .shards import Shard

    if not 1 <= k < len(p):
        raise ValueError(f"position {k} out of range for n={len(p)}")
    a, b = sorted((p[k - 1], p[k]))
    below = frozenset(v for v in p[: k - 1] if a < v < b)
    return Shard(a, b, below)


def chamber_rays(p: Sequence[int]) -> list:
    """The n-1 proper prefixes ``{p_1..p_k}`` spanning the chamber C(p)."""
    return [frozenset(p[:k]) for k in range(1, len(p))]


def neighbors(p: Sequence[int]):
    """Yield ``(k, q)`` for the n-1 permutations adjacent to ``p``."""
    for k in range(1, len(p)):
        yield k, swap(p, k)


def hasse_edges(n: int) -> list:
    """Cover relations ``(p, q)`` of the weak order, ``p`` below ``q``."""
    edges = []
    for p in permutations(n):
        for k in range(1, n):
            if p[k - 1] < p[k]:
                edges.append((p, swap(p, k)))
    return edges
