"""Concrete realizations: removahedra, permutreehedra and kinematic polytopes."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import permutrees, polyhedra, shards, typecone
from .decoration import Decoration
from .polyhedra import HeightFunction, HPolytope, VPolytope, h_perm

__all__ = [
    "h_perm",
    "removahedron",
    "is_removahedral",
    "wall_crossing_defect",
    "permutreehedron",
    "realize_from_submodular",
    "kinematic_polytope",
    "simplicial_q_polytope",
]


def removahedron(n: int, rays, heights: HeightFunction | None = None) -> HPolytope:
    """Keep only the permutahedron inequalities indexed by ``rays``."""
    h = polyhedra.perm_heights(n) if heights is None else heights
    return HPolytope.from_heights(rays, h)


def shifted_constant_heights(n: int) -> HeightFunction:
    """Heights for ``sum_{i in I} x_i >= C(|I|+2, 2)`` on ``sum x = C(n+1, 2)``."""
    total = comb(n + 1, 2)

    def h(s):
        k = len(s)
        if k in (0, n):
            return 0
        return k * total - n * comb(k + 2, 2)

    return HeightFunction.from_function(n, h)


class NotEssential(ValueError):
    pass


def is_removahedral(cong: shards.Congruence) -> polyhedra.Realization:
    """Does the removahedron of the quotient rays realize the quotient fan?"""
    if not cong.essential:
        raise NotEssential("removahedrality is only tested for essential congruences")
    rays = shards.quotient_rays(cong.ideal)
    return polyhedra.check_realizes(cong.classes, rays, polyhedra.perm_heights(cong.n))


def pb_sets(n: int, i: int, j: int) -> dict:
    """The five subsets attached to an up-shard generator ``Shard(i, j, ]i,j[)``."""
    return {
        "I": frozenset(range(i + 2, j)),
        "J": frozenset(range(i + 1, j - 1)),
        "K": frozenset(range(1, j)),
        "L": frozenset(range(i + 1, n + 1)),
        "M": frozenset(range(i + 2, j - 1)),
    }


def wall_crossing_defect(n: int, i: int, j: int, check: bool = True) -> Fraction:
    """``h(I) + h(J) - h(K) - h(L) - h(M)`` for the permutahedron heights, in closed form."""
    if not (1 <= i and j <= n and i <= j - 3):
        raise ValueError(f"need 1 <= i <= j - 3 <= n - 3, got n={n}, i={i}, j={j}")
    value = Fraction(n * i * (j - n) + n * (1 - i))
    if check:
        s = pb_sets(n, i, j)
        direct = h_perm(s["I"], n) + h_perm(s["J"], n) - h_perm(s["K"], n) - h_perm(s["L"], n) - h_perm(s["M"], n)
        if direct != value:
            raise AssertionError(f"closed form {value} disagrees with direct value {direct}")
    return value


def mirror_shard(s: shards.Shard) -> shards.Shard:
    """Image under ``x -> -x``: the arc flips to the other side of every dot."""
    return shards.Shard(s.i, s.j, s.between - s.s)


def mirror_ideal(ideal: shards.ShardIdeal) -> shards.ShardIdeal:
    return shards.ShardIdeal(ideal.n, frozenset(mirror_shard(s) for s in ideal.shards))


def mirror_permutation(p) -> tuple:
    return tuple(reversed(p))


@dataclass
class LemmaCheck:
    generator: shards.Shard
    sets: dict
    all_rays: bool
    adjacent: bool
    defect: Fraction


def check_generator_lemmas(cong: shards.Congruence, gen: shards.Shard) -> LemmaCheck:
    """Rays and adjacency of the five subsets attached to a long up or down generator."""
    n = cong.n
    sets = pb_sets(n, gen.i, gen.j)
    if gen.is_down and not gen.is_up:
        full = frozenset(range(1, n + 1))
        sets = {k: full - v for k, v in sets.items()}
    elif not gen.is_up:
        raise ValueError("generator must be an up or a down shard")
    rays = frozenset(shards.quotient_rays(cong.ideal))
    needed = [v for v in sets.values() if 0 < len(v) < n]
    all_rays = all(v in rays for v in needed)
    common = {v for k, v in sets.items() if k in "KLM" and 0 < len(v) < n}
    chamber_rays = [polyhedra.class_rays(c, rays) for c in cong.classes]
    with_i = {k for k, r in enumerate(chamber_rays) if sets["I"] in r and common <= r}
    with_j = {k for k, r in enumerate(chamber_rays) if sets["J"] in r and common <= r}
    adjacent = any(
        (a in with_i and b in with_j) or (b in with_i and a in with_j)
        for a, b in polyhedra.adjacent_classes(cong.classes)
    )
    h = polyhedra.perm_heights(n)
    defect = h(sets["I"]) + h(sets["J"]) - h(sets["K"]) - h(sets["L"]) - h(sets["M"])
    return LemmaCheck(gen, sets, all_rays, adjacent, defect)


# -- permutreehedra ---------------------------------------------------------------


def vertex_points(d: Decoration) -> VPolytope:
    return VPolytope(tuple(permutrees.vertex_coordinates(t) for t in permutrees.enumerate_permutrees(d)))


def permutreehedron(d: Decoration) -> tuple:
    """``(V-form from the vertex formula, H-form from the permutree rays)``."""
    rays = typecone.permutree_rays(d).sorted()
    return vertex_points(d), removahedron(d.n, rays)


@dataclass
class Agreement:
    decoration: str
    constant: str
    agrees: bool
    detail: str = ""


def vh_agreement(d: Decoration, constant: str = "perm") -> Agreement:
    """Compare hull vertices from the formula with the vertices of the H-form."""
    V = vertex_points(d)
    rays = typecone.permutree_rays(d).sorted()
    if constant == "perm":
        heights = polyhedra.perm_heights(d.n)
    elif constant == "shifted":
        heights = shifted_constant_heights(d.n)
    else:
        raise ValueError("constant must be 'perm' or 'shifted'")
    H = removahedron(d.n, rays, heights)
    try:
        W = polyhedra.vertices(H)
    except polyhedra.Unbounded as exc:
        return Agreement(str(d), constant, False, f"unbounded: {exc}")
    if W.point_set == V.point_set:
        return Agreement(str(d), constant, True)
    return Agreement(str(d), constant, False, f"{len(W)} H-vertices vs {len(V)} formula points")


# -- submodular realizations --------------------------------------------------------


class NotStrictlySubmodular(ValueError):
    pass


def realize_from_submodular(d: Decoration, h: HeightFunction) -> polyhedra.Realization:
    """Realize the permutree fan of ``d`` with heights ``h`` restricted to its rays."""
    verdict = polyhedra.submodularity(h)
    if verdict.kind != "strict":
        raise NotStrictlySubmodular(f"heights are {verdict.kind}ly submodular at {verdict.witness}")
    ideal = shards.permutree_ideal(d)
    classes = shards.congruence_classes(ideal).classes
    return polyhedra.check_realizes(classes, typecone.permutree_rays(d).sorted(), h)


def _cut_function(n: int, weights: dict, shift: dict) -> HeightFunction:
    def h(s):
        if len(s) in (0, n):
            return 0
        cut = sum(w for (a, b), w in weights.items() if (a in s) != (b in s))
        return cut + sum(shift[a] for a in s)

    return HeightFunction.from_function(n, h)


def random_strictly_submodular(n: int, rng: random.Random) -> HeightFunction:
    """Positive-weight graph cut plus a modular term summing to zero."""
    weights = {
        (a, b): Fraction(rng.randint(1, 30), rng.randint(1, 6))
        for a, b in itertools.combinations(range(1, n + 1), 2)
    }
    raw = [Fraction(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(n)]
    mean = sum(raw) / n
    shift = {a: raw[a - 1] - mean for a in range(1, n + 1)}
    return _cut_function(n, weights, shift)


def weakly_submodular_examples(n: int, count: int, rng: random.Random) -> list:
    """Submodular but not strictly: zero heights, then cuts with a missing edge."""
    out = [HeightFunction.from_function(n, lambda s: 0)]
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    while len(out) < count:
        missing = rng.choice(pairs)
        weights = {p: (Fraction(0) if p == missing else Fraction(rng.randint(1, 9))) for p in pairs}
        out.append(_cut_function(n, weights, {a: Fraction(0) for a in range(1, n + 1)}))
    return out


# -- kinematic realizations ---------------------------------------------------------


def kinematic_free_pairs(d: Decoration) -> list:
    """Pairs ``i < j`` with no updown letter strictly between."""
    return [(i, j) for i, j, _ in typecone._free_intervals(d)]


def kinematic_bounds(d: Decoration, i: int, j: int) -> dict:
    """``p^+, p^-, q^+, q^-`` for a pair; indices may leave [1, n] when i or j is extreme."""
    sets = {"+": d.up, "-": d.down}
    out = {}
    for eps, walled in sets.items():
        mid = [k for k in range(i + 1, j) if k in walled]
        out["p" + eps] = (min([j] + mid) - 1) if i in walled else i - 1
        out["q" + eps] = (max([i] + mid) + 1) if j in walled else j + 1
    return out


def _check_kinematic_decoration(d: Decoration):
    if set(d.letters) - set("dux"):
        raise ValueError("kinematic realizations need decorations over d/u/x")


def kinematic_coordinate(d: Decoration, index):
    """Reduced coordinate of ``(l, p, q, r)``, or ``None`` when it is pinned to zero."""
    ell, p, q, r = index
    n = d.n
    free = set(kinematic_free_pairs(d))
    if (p, q) not in free:
        return None
    if p + 1 != q:
        return (p, q)
    if (ell, r) in ((1, 0), (0, 1)):
        return (ell, p, q, r)
    return None  # the empty set and [n]: their rays vanish


def kinematic_coordinates(d: Decoration) -> list:
    """Representatives of the identified index classes, in a fixed order."""
    out = set()
    n = d.n
    for ell, r in itertools.product((0, 1), repeat=2):
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                c = kinematic_coordinate(d, (ell, p, q, r))
                if c is not None:
                    out.add(c)
    return sorted(out, key=lambda c: (len(c), c))


def kinematic_subset(d: Decoration, coord) -> frozenset:
    """The ray attached to a reduced coordinate (used to compare with the type cone)."""
    n = d.n
    if len(coord) == 4:
        ell, p, q, r = coord
        return frozenset(range(1, p + 1)) if ell == 1 else frozenset(range(q, n + 1))
    p, q = coord
    for R in typecone.permutree_rays(d).sorted():
        if _runs(R, n) == (p, q):
            return R
    raise KeyError(coord)


def _runs(R, n):
    a = 1
    while a < n and ((a + 1) in R) == (1 in R):
        a += 1
    b = n
    while b > 1 and ((b - 1) in R) == (n in R):
        b -= 1
    return a, b


def kinematic_system(d: Decoration):
    """``(coordinates, pairs, K)``: one row per free pair over the reduced coordinates."""
    _check_kinematic_decoration(d)
    coords = kinematic_coordinates(d)
    pos = {c: k for k, c in enumerate(coords)}
    pairs = kinematic_free_pairs(d)
    K = []
    for i, j in pairs:
        b = kinematic_bounds(d, i, j)
        # the shifted bounds may fall outside [1, n]; such indices are pinned anyway
        b_right = kinematic_bounds(d, i, j + 1)
        b_left = kinematic_bounds(d, i - 1, j)
        row = [0] * len(coords)

        def add(index, sign):
            c = kinematic_coordinate(d, index)
            if c is not None:
                row[pos[c]] += sign

        add((1, b["p+"], b["q-"], 0), 1)
        add((0, b["p-"], b["q+"], 1), 1)
        add(
            (
                int(i not in d.down),
                b_right["p-"],
                b_left["q-"],
                int(j not in d.down),
            ),
            -1,
        )
        add(
            (
                int(i in d.up),
                b_right["p+"],
                b_left["q+"],
                int(j in d.up),
            ),
            -1,
        )
        K.append(row)
    return coords, pairs, K


def kinematic_polytope(d: Decoration, u) -> VPolytope:
    """Vertices of ``{z >= 0 : K z = u}`` for the kinematic system of ``d``.

    ``u`` is a mapping from free pairs ``(i, j)`` to positive rationals, or a
    sequence in the order of :func:`kinematic_free_pairs`.
    """
    coords, pairs, K = kinematic_system(d)
    u = _rhs(pairs, u)
    return VPolytope(tuple(polyhedra.orthant_slice_vertices(K, u)))


def _rhs(pairs, u) -> list:
    if isinstance(u, dict):
        vals = [Fraction(u[p]) for p in pairs]
    else:
        vals = [Fraction(x) for x in u]
    if len(vals) != len(pairs):
        raise ValueError(f"expected {len(pairs)} right-hand sides, got {len(vals)}")
    if any(v <= 0 for v in vals):
        raise ValueError("right-hand sides must be positive")
    return vals


def kinematic_graph(d: Decoration, verts: VPolytope):
    _, _, K = kinematic_system(d)
    return polyhedra.orthant_graph(K, list(verts.vertices))


def typecone_system(d: Decoration):
    """``(rays, facet pairs, K)`` with rows ``g_I + g_J - g_meet - g_join``."""
    rays = typecone.permutree_rays(d).sorted()
    facets = sorted(typecone.typecone_facets(d), key=lambda p: (p.i, p.j))
    K = [typecone.facet_row(p, rays) for p in facets]
    return rays, facets, K


def simplicial_q_polytope(d: Decoration, u) -> VPolytope:
    """``Q(u) = {z >= 0 : K z = u}`` over the rays of a simplicial type cone."""
    if not typecone.is_simplicial(d):
        raise ValueError(f"type cone of {d} is not simplicial")
    rays, facets, K = typecone_system(d)
    vals = _rhs([(p.i, p.j) for p in facets], u)
    return polyhedra.q_polytope(rays, K, vals, n=d.n)


def random_positive(count: int, rng: random.Random) -> list:
    return [Fraction(rng.randint(1, 40), rng.randint(1, 7)) for _ in range(count)]


def kinematic_decorations(n: int) -> list:
    """Decorations over d/u/x with both boundary letters x."""
    if n < 2:
        return []
    return [Decoration("x" + "".join(w) + "x") for w in itertools.product("dux", repeat=n - 2)]


def rotation_graph(d: Decoration):
    return permutrees.rotation_lattice(d).graph()


def hull_graph(d: Decoration):
    """1-skeleton of the H-form permutreehedron."""
    _, H = permutreehedron(d)
    return polyhedra.graph(H)

