"""Shards, the forcing order, shard ideals and the congruences they define.

A shard ``Shard(i, j, S)`` is the piece of the hyperplane ``x_i = x_j`` where
coordinates in ``S`` lie below and the rest of ``]i, j[`` above. In arc
notation, the arc from i to j passes above the dots of ``S``.

An ideal is *upper*: closed under adding every shard that forces a member.
Basic shards ``Shard(i, i+1, {})`` force everything above them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

from . import weakorder
from .decoration import Decoration


@dataclass(frozen=True, order=True)
class Shard:
    i: int
    j: int
    s: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "s", frozenset(self.s))
        if not 1 <= self.i < self.j:
            raise ValueError(f"bad shard endpoints ({self.i}, {self.j})")
        if not self.s <= self.between:
            raise ValueError(f"{sorted(self.s)} is not inside ]{self.i},{self.j}[")

    @property
    def between(self) -> frozenset:
        return frozenset(range(self.i + 1, self.j))

    @property
    def length(self) -> int:
        return self.j - self.i

    @property
    def is_up(self) -> bool:
        return self.s == self.between

    @property
    def is_down(self) -> bool:
        return not self.s

    @property
    def is_mixed(self) -> bool:
        return not (self.is_up or self.is_down)

    @property
    def is_basic(self) -> bool:
        return self.length == 1

    def sort_key(self):
        return (self.i, self.j, tuple(sorted(self.s)))

    def __repr__(self):
        inner = ",".join(map(str, sorted(self.s)))
        return f"Σ({self.i},{self.j},{{{inner}}})"

    def to_json(self) -> dict:
        return {"i": self.i, "j": self.j, "s": sorted(self.s)}

    @classmethod
    def from_json(cls, data: dict) -> "Shard":
        return cls(int(data["i"]), int(data["j"]), frozenset(data["s"]))

    def arc(self, n: int) -> str:
        """Two-line text drawing: ``^`` above the dots in S, ``v`` below the others."""
        top, mid = [], []
        for k in range(1, n + 1):
            if k in (self.i, self.j):
                top.append(" ")
                mid.append("*")
            elif self.i < k < self.j:
                top.append("^" if k in self.s else " ")
                mid.append("." if k in self.s else "v")
            else:
                top.append(" ")
                mid.append(".")
        return "".join(top).rstrip() + "\n" + "".join(mid)


class NotUpwardClosed(ValueError):
    """Raised when ``forcer`` forces ``member`` but only ``member`` is present."""

    def __init__(self, forcer: Shard, member: Shard):
        super().__init__(f"{forcer!r} forces {member!r} but is missing")
        self.forcer = forcer
        self.member = member


@dataclass(frozen=True)
class NotPermutree:
    """Normal return of :func:`ideal_decoration` for non-permutree ideals."""

    witness: Shard


def forces(a: Shard, b: Shard) -> bool:
    """True iff ``a`` is a sub-arc of ``b`` agreeing with it between its ends."""
    return b.i <= a.i and a.j <= b.j and a.s == (b.s & a.between)


def all_shards(n: int) -> list:
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            mid = list(range(i + 1, j))
            for size in range(len(mid) + 1):
                for s in itertools.combinations(mid, size):
                    out.append(Shard(i, j, frozenset(s)))
    return out


def shard_poset(n: int):
    """All shards of the braid arrangement and the strict forcing relation.

    Returns ``(shards, relation)`` where relation holds pairs ``(a, b)``
    with ``a != b`` and ``a`` forcing ``b``.
    """
    shards = all_shards(n)
    relation = {(a, b) for a in shards for b in shards if a != b and forces(a, b)}
    return shards, relation


def forcers(b: Shard) -> list:
    """Strict sub-arcs of ``b``; every one of them forces ``b``."""
    out = []
    for i in range(b.i, b.j):
        for j in range(i + 1, b.j + 1):
            if (i, j) != (b.i, b.j):
                a = Shard(i, j, frozenset(k for k in b.s if i < k < j))
                out.append(a)
    return out


@dataclass(frozen=True)
class ShardIdeal:
    n: int
    shards: frozenset

    @property
    def essential(self) -> bool:
        return all(Shard(i, i + 1) in self.shards for i in range(1, self.n))

    def __contains__(self, shard):
        return shard in self.shards

    def __len__(self):
        return len(self.shards)

    def missing(self) -> frozenset:
        return frozenset(all_shards(self.n)) - self.shards

    def to_json(self) -> dict:
        ordered = sorted(self.shards, key=Shard.sort_key)
        return {"n": self.n, "shards": [s.to_json() for s in ordered]}

    @classmethod
    def from_json(cls, data: dict) -> "ShardIdeal":
        return validate_ideal(int(data["n"]), [Shard.from_json(s) for s in data["shards"]])


def validate_ideal(n: int, shards: Iterable[Shard]) -> ShardIdeal:
    members = frozenset(shards)
    for b in members:
        if b.j > n:
            raise ValueError(f"{b!r} does not live in the braid arrangement of size {n}")
    for b in sorted(members, key=Shard.sort_key):
        for a in forcers(b):
            if a not in members:
                raise NotUpwardClosed(a, b)
    return ShardIdeal(n, members)


def full_ideal(n: int) -> ShardIdeal:
    return ShardIdeal(n, frozenset(all_shards(n)))


def remove_shards(n: int, removed: Iterable[Shard]) -> ShardIdeal:
    """The ideal of all shards except ``removed`` (validated)."""
    removed = set(removed)
    return validate_ideal(n, [s for s in all_shards(n) if s not in removed])


def sylvester_ideal(n: int) -> ShardIdeal:
    return ShardIdeal(n, frozenset(s for s in all_shards(n) if s.is_up))


def upper_ideals(n: int):
    """Yield every upper ideal of the shard poset.

    Shards are decided by increasing length, so all forcers of a shard are
    decided before it; a shard may only be added when all of them are in.
    """
    order = sorted(all_shards(n), key=lambda s: (s.length, s.sort_key()))
    needs = {s: forcers(s) for s in order}

    def extend(k, chosen):
        if k == len(order):
            yield ShardIdeal(n, frozenset(chosen))
            return
        s = order[k]
        yield from extend(k + 1, chosen)
        if all(a in chosen for a in needs[s]):
            chosen.add(s)
            yield from extend(k + 1, chosen)
            chosen.remove(s)

    yield from extend(0, set())


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True)
class Congruence:
    ideal: ShardIdeal
    classes: tuple

    @property
    def n(self) -> int:
        return self.ideal.n

    @property
    def essential(self) -> bool:
        return self.ideal.essential

    def class_of(self) -> dict:
        return {p: idx for idx, cls in enumerate(self.classes) for p in cls}


def congruence_classes(ideal: ShardIdeal) -> Congruence:
    """Glue adjacent chambers whose separating shard is not in the ideal."""
    n = ideal.n
    perms = list(weakorder.permutations(n))
    uf = _UnionFind(perms)
    for p in perms:
        for k in range(1, n):
            if p[k - 1] < p[k] and weakorder.cover_shard(p, k) not in ideal.shards:
                uf.union(p, weakorder.swap(p, k))
    groups = {}
    for p in perms:
        groups.setdefault(uf.find(p), []).append(p)
    classes = tuple(sorted(tuple(sorted(g)) for g in groups.values()))
    return Congruence(ideal, classes)


def permutree_ideal(d: Decoration) -> ShardIdeal:
    """Shards whose arc passes neither below a d/x node nor above a u/x node."""
    n = d.n
    keep = []
    for s in all_shards(n):
        mid = s.between
        if (d.down & mid) <= s.s and not (s.s & d.up):
            keep.append(s)
    return ShardIdeal(n, frozenset(keep))


def lower_generators(ideal: ShardIdeal) -> list:
    """Shards missing from the ideal that no other missing shard forces."""
    missing = ideal.missing()
    gens = [b for b in missing if not any(a in missing for a in forcers(b))]
    return sorted(gens, key=Shard.sort_key)


def ideal_decoration(ideal: ShardIdeal):
    """Recover the decoration of a permutree ideal, or a :class:`NotPermutree`.

    Boundary positions 1 and n are reported as ``o``.
    """
    letters = ["o"] * ideal.n
    for g in lower_generators(ideal):
        if g.length != 2:
            return NotPermutree(g)
        k = g.i + 1
        flag = "d" if g.is_down else "u"
        cur = letters[k - 1]
        letters[k - 1] = flag if cur == "o" else "x"
    return Decoration("".join(letters))


def ray_shards(subset: Iterable[int], n: int) -> frozenset:
    """The n-2 shards containing the braid ray of ``subset`` in their relative interior.

    Down shards joining consecutive members, up shards joining consecutive
    non-members.
    """
    inside = sorted(subset)
    outside = [k for k in range(1, n + 1) if k not in set(inside)]
    out = [Shard(a, b) for a, b in zip(inside, inside[1:])]
    out += [Shard(a, b, frozenset(range(a + 1, b))) for a, b in zip(outside, outside[1:])]
    return frozenset(out)


def quotient_rays(ideal: ShardIdeal) -> list:
    """Subsets whose braid ray survives as a ray of the quotient fan."""
    return [I for I in weakorder.proper_subsets(ideal.n) if ray_shards(I, ideal.n) <= ideal.shards]


def rewriting_classes(d: Decoration) -> tuple:
    """Classes of the closure of the permutree rewriting rules.

    ``U i k V j W == U k i V j W`` for ``j`` in the down set and
    ``U j V i k W == U j V k i W`` for ``j`` in the up set, ``i < j < k``.
    Independent of the shard machinery; used as a cross-check.
    """
    n = d.n
    perms = list(weakorder.permutations(n))
    uf = _UnionFind(perms)
    for p in perms:
        for k in range(1, n):
            a, b = p[k - 1], p[k]
            lo, hi = min(a, b), max(a, b)
            before, after = set(p[: k - 1]), set(p[k + 1:])
            mids = range(lo + 1, hi)
            if any(j in d.down and j in after for j in mids) or any(
                j in d.up and j in before for j in mids
            ):
                uf.union(p, weakorder.swap(p, k))
    groups = {}
    for p in perms:
        groups.setdefault(uf.find(p), []).append(p)
    return tuple(sorted(tuple(sorted(g)) for g in groups.values()))


def quotient_order(cong: Congruence) -> dict:
    """Transitive order on classes: X <= Y iff some x <= y (via covering chains)."""
    idx = cong.class_of()
    m = len(cong.classes)
    up = {c: set() for c in range(m)}
    for p, q in weakorder.hasse_edges(cong.n):
        a, b = idx[p], idx[q]
        if a != b:
            up[a].add(b)
    leq = {}
    for c in range(m):
        seen, stack = {c}, [c]
        while stack:
            x = stack.pop()
            for y in up[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        leq[c] = seen
    return leq


def is_lattice(leq: dict) -> bool:
    """Check that a finite order, given as up-sets, has all binary joins and meets."""
    elems = list(leq)
    down = {x: {y for y in elems if x in leq[y]} for x in elems}

    def has_extremum(bounds, rel):
        return any(all(b in rel[c] for b in bounds) for c in bounds)

    for a, b in itertools.combinations(elems, 2):
        upper = leq[a] & leq[b]
        # least element of the common upper bounds
        if not upper or not has_extremum(upper, leq):
            return False
        lower = down[a] & down[b]
        if not lower or not has_extremum(lower, down):
            return False
    return True
