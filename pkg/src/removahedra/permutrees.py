"""Permutrees: validity, edge cuts, linear extensions, rotations and vertices.

Edges are ordered pairs ``(i, j)`` read as ``i -> j``: ``i`` is a child of
``j``, so every linear extension lists ``i`` before ``j``. Blossoms (empty
parent/child slots) are never materialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import shards as _shards
from .decoration import Decoration


@dataclass(frozen=True)
class Permutree:
    decoration: Decoration
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))

    @property
    def n(self) -> int:
        return self.decoration.n

    def parents(self, j: int) -> list:
        return sorted(b for a, b in self.edges if a == j)

    def children(self, j: int) -> list:
        return sorted(a for a, b in self.edges if b == j)

    def adjacency(self) -> dict:
        adj = {k: set() for k in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def component(self, start: int, removed: int) -> frozenset:
        """Nodes reachable from ``start`` once ``removed`` is deleted."""
        adj = self.adjacency()
        seen, stack = {start}, [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y != removed and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return frozenset(seen)

    def side(self, node: int, centre: int) -> str:
        """'left'/'right' if the subtree of ``node`` away from ``centre`` is on one side, else 'mixed'."""
        comp = self.component(node, centre)
        if max(comp) < centre:
            return "left"
        if min(comp) > centre:
            return "right"
        return "mixed"

    def edge_sides(self, edge) -> tuple:
        """``(parent_side, child_side)``: the slot of ``i`` holding ``j`` and the slot of ``j`` holding ``i``."""
        i, j = edge
        parent_side = self.side(j, i) if i in self.decoration.up else "only"
        child_side = self.side(i, j) if j in self.decoration.down else "only"
        return parent_side, child_side

    def to_json(self) -> dict:
        out = []
        for i, j in sorted(self.edges):
            ps, cs = self.edge_sides((i, j))
            out.append({"from": i, "to": j, "parent_side": ps, "child_side": cs})
        return {"n": self.n, "decoration": str(self.decoration), "edges": out}

    @classmethod
    def from_json(cls, data: dict) -> "Permutree":
        edges = [(e["from"], e["to"]) for e in data["edges"]]
        return cls(Decoration(data["decoration"]), frozenset(edges))

    def dump(self) -> str:
        """One line per node: ``j[letter] <- children -> parents``."""
        lines = []
        for j in range(1, self.n + 1):
            kids = ",".join(map(str, self.children(j))) or "-"
            pars = ",".join(map(str, self.parents(j))) or "-"
            lines.append(f"{j}[{self.decoration[j]}] <- {kids} -> {pars}")
        return "\n".join(lines)


@dataclass
class Validation:
    ok: bool
    problems: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate(t: Permutree, d: Decoration | None = None) -> Validation:
    """Check the tree shape, slot counts and left/right label conditions."""
    d = t.decoration if d is None else d
    n = d.n
    problems = []
    nodes = set(range(1, n + 1))
    for a, b in t.edges:
        if a not in nodes or b not in nodes or a == b:
            problems.append(f"edge {a}->{b} has a bad endpoint")
    if problems:
        return Validation(False, problems)
    undirected = {frozenset(e) for e in t.edges}
    if len(undirected) != len(t.edges) or len(t.edges) != n - 1:
        return Validation(False, [f"expected {n - 1} distinct edges, got {len(t.edges)}"])
    if n > 1 and t.component(1, 0) != frozenset(nodes):
        return Validation(False, ["underlying graph is disconnected"])

    t = Permutree(d, t.edges)
    for j in range(1, n + 1):
        for kind, nbrs, walled in (
            ("parent", t.parents(j), j in d.up),
            ("child", t.children(j), j in d.down),
        ):
            if len(nbrs) > (2 if walled else 1):
                problems.append(f"node {j} has {len(nbrs)} {kind}s but decoration {d[j]}")
                continue
            if not walled:
                continue
            sides = [t.side(k, j) for k in nbrs]
            for k, s in zip(nbrs, sides):
                if s == "mixed":
                    problems.append(f"{kind} subtree of node {j} through {k} crosses the wall at {j}")
            if len(sides) == 2 and sides[0] == sides[1] != "mixed":
                problems.append(f"both {kind} subtrees of node {j} lie on the {sides[0]}")
    return Validation(not problems, problems)


def edge_cuts(t: Permutree) -> frozenset:
    """Source sides of all edges."""
    return frozenset(t.component(i, j) for i, j in t.edges)


def edge_cut_map(t: Permutree) -> dict:
    return {(i, j): t.component(i, j) for i, j in t.edges}


def linear_extensions(t: Permutree) -> frozenset:
    n = t.n
    preds = {k: {a for a, b in t.edges if b == k} for k in range(1, n + 1)}
    out = []

    def grow(prefix, placed):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for k in range(1, n + 1):
            if k not in placed and preds[k] <= placed:
                prefix.append(k)
                placed.add(k)
                grow(prefix, placed)
                placed.remove(k)
                prefix.pop()

    grow([], set())
    return frozenset(out)


def tree_from_class(d: Decoration, perms) -> Permutree:
    """Intersect the linear orders of a congruence class and keep the Hasse diagram."""
    perms = list(perms)
    n = d.n
    pos = [{v: k for k, v in enumerate(p)} for p in perms]
    less = {
        (a, b)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        if a != b and all(q[a] < q[b] for q in pos)
    }
    hasse = {
        (a, b)
        for a, b in less
        if not any((a, c) in less and (c, b) in less for c in range(1, n + 1))
    }
    return Permutree(d, frozenset(hasse))


def enumerate_permutrees(d: Decoration) -> list:
    """One permutree per class of the permutree congruence, in class order."""
    cong = _shards.congruence_classes(_shards.permutree_ideal(d))
    return [tree_from_class(d, cls) for cls in cong.classes]


def rotate(t: Permutree, edge) -> Permutree:
    """Reverse ``i -> j`` and swap the subtrees ``D`` (below i) and ``U`` (above j)."""
    i, j = edge
    if (i, j) not in t.edges:
        raise KeyError(f"{i}->{j} is not an edge")
    d = t.decoration
    # D is the child subtree of i on the side facing j, U the parent subtree of j facing i
    towards = "right" if i < j else "left"
    away = "left" if i < j else "right"
    kids = t.children(i)
    if i in d.down:
        kids = [c for c in kids if t.side(c, i) == towards]
    pars = [p for p in t.parents(j) if p != i]
    if j in d.up:
        pars = [p for p in pars if t.side(p, j) == away]
    assert len(kids) <= 1 and len(pars) <= 1
    edges = set(t.edges)
    edges.remove((i, j))
    edges.add((j, i))
    for c in kids:
        edges.remove((c, i))
        edges.add((c, j))
    for p in pars:
        edges.remove((j, p))
        edges.add((i, p))
    return Permutree(d, frozenset(edges))


def _subtree_sizes(t: Permutree, j: int):
    d = t.decoration
    desc = {"left": 0, "right": 0, "total": 0}
    anc = {"left": 0, "right": 0}
    for c in t.children(j):
        size = len(t.component(c, j))
        desc["total"] += size
        if j in d.down:
            desc[t.side(c, j)] += size
    if j in d.up:
        for p in t.parents(j):
            anc[t.side(p, j)] += len(t.component(p, j))
    return desc, anc


def vertex_coordinates(t: Permutree, d: Decoration | None = None) -> tuple:
    """Coordinates ``1 + d + l_r_ - l^r^`` (products vanish off the walled nodes)."""
    if d is not None and d != t.decoration:
        t = Permutree(d, t.edges)
    out = []
    for j in range(1, t.n + 1):
        desc, anc = _subtree_sizes(t, j)
        out.append(
            Fraction(1 + desc["total"] + desc["left"] * desc["right"] - anc["left"] * anc["right"])
        )
    return tuple(out)


def loday_coordinates(t: Permutree) -> tuple:
    """Leaf-count products (left leaves x right leaves) for binary trees."""
    out = []
    for j in range(1, t.n + 1):
        left = right = 0
        for c in t.children(j):
            size = len(t.component(c, j))
            if t.side(c, j) == "left":
                left = size
            else:
                right = size
        out.append(Fraction((left + 1) * (right + 1)))
    return tuple(out)


@dataclass
class RotationLattice:
    trees: list
    arcs: list  # (source index, target index, edge) for increasing rotations
    leq: dict
    is_lattice: bool

    def graph(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(len(self.trees)))
        g.add_edges_from((a, b) for a, b, _ in self.arcs)
        return g


def rotation_lattice(d: Decoration) -> RotationLattice:
    trees = enumerate_permutrees(d)
    index = {t.edges: k for k, t in enumerate(trees)}
    arcs = []
    for k, t in enumerate(trees):
        for i, j in sorted(t.edges):
            if i < j:
                s = rotate(t, (i, j))
                arcs.append((k, index[s.edges], (i, j)))
    up = {k: set() for k in range(len(trees))}
    for a, b, _ in arcs:
        up[a].add(b)
    leq = {}
    for k in up:
        seen, stack = {k}, [k]
        while stack:
            x = stack.pop()
            for y in up[x] - seen:
                seen.add(y)
                stack.append(y)
        leq[k] = seen
    return RotationLattice(trees, arcs, leq, _shards.is_lattice(leq))


def all_oriented_trees(n: int):
    """Every orientation of every labelled tree on [n] (brute-force oracle, small n)."""
    nodes = range(1, n + 1)
    pairs = list(itertools.combinations(nodes, 2))
    for chosen in itertools.combinations(pairs, n - 1):
        adj = {k: set() for k in nodes}
        for a, b in chosen:
            adj[a].add(b)
            adj[b].add(a)
        seen, stack = {1}, [1]
        while stack:
            x = stack.pop()
            for y in adj[x] - seen:
                seen.add(y)
                stack.append(y)
        if len(seen) != n:
            continue
        for flips in itertools.product((False, True), repeat=n - 1):
            yield frozenset((b, a) if f else (a, b) for (a, b), f in zip(chosen, flips))
