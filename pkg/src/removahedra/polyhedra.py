"""Exact polyhedral kernel: rays, dependences, vertices, facets, normal fans.

Polytopes live in the hyperplane ``sum(x) = sum_level``. Every ray vector
``r(I)`` is orthogonal to the all-ones vector, so the sum level only
translates the polytope and never changes its normal fan.

Floating point appears in exactly two places, both as search accelerators
whose output is re-verified in exact arithmetic: the batched candidate
solve in :func:`vertices` and the LP calls in :mod:`._lp`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _lp, linalg, weakorder

_FEAS_TOL = 1e-7


class Unbounded(ValueError):
    """Raised with an exact recession direction or a failed spanning test."""


class Degenerate(ValueError):
    pass


@dataclass(frozen=True)
class Split:
    """Normal-partition marker: no single vertex maximises a whole chamber."""

    permutation: tuple


def ray_vector(subset: Iterable[int], n: int) -> tuple:
    """``r(I) = |I| * 1 - n * 1_I``."""
    s = frozenset(subset)
    if not weakorder.is_proper(s, n):
        raise ValueError(f"{sorted(s)} is not a proper non-empty subset of [{n}]")
    k = len(s)
    return tuple(Fraction(k - n) if i in s else Fraction(k) for i in range(1, n + 1))


def _ray_ints(subset, n) -> list:
    k = len(subset)
    return [k - n if i in subset else k for i in range(1, n + 1)]


def linear_dependence(vectors) -> list:
    """Kernel basis of the map ``c -> sum_k c_k vectors[k]`` (primitive integer rows)."""
    return linalg.left_kernel(vectors)


@dataclass(frozen=True)
class HeightFunction:
    """Heights on subsets of [n]; unspecified subsets read as 0 only at the boundary."""

    n: int
    values: Mapping

    def __post_init__(self):
        vals = {frozenset(k): Fraction(v) for k, v in dict(self.values).items()}
        full = frozenset(range(1, self.n + 1))
        for b in (frozenset(), full):
            if vals.get(b, 0) != 0:
                raise ValueError("heights of the empty set and of [n] must be 0")
            vals[b] = Fraction(0)
        object.__setattr__(self, "values", vals)

    def __call__(self, subset) -> Fraction:
        return self.values[frozenset(subset)]

    def scaled(self, factor) -> "HeightFunction":
        return HeightFunction(self.n, {k: Fraction(factor) * v for k, v in self.values.items()})

    def plus_linear(self, x) -> "HeightFunction":
        """Add ``<r(I), x>``; the realized polytope is translated by ``x``."""
        out = {}
        for k, v in self.values.items():
            if weakorder.is_proper(k, self.n):
                out[k] = v + linalg.dot(ray_vector(k, self.n), x)
            else:
                out[k] = v
        return HeightFunction(self.n, out)

    @classmethod
    def from_function(cls, n: int, func) -> "HeightFunction":
        vals = {}
        for size in range(n + 1):
            for c in itertools.combinations(range(1, n + 1), size):
                vals[frozenset(c)] = Fraction(func(frozenset(c)))
        return cls(n, vals)


def h_perm(subset, n: int) -> Fraction:
    k = len(frozenset(subset))
    return Fraction(n * k * (n - k), 2)


def perm_heights(n: int) -> HeightFunction:
    return HeightFunction.from_function(n, lambda s: h_perm(s, n))


@dataclass(frozen=True)
class HPolytope:
    """``{x : sum x = sum_level, <r(I), x> <= h_I}``."""

    n: int
    sum_level: Fraction
    ineqs: tuple  # of (frozenset, Fraction)

    def __post_init__(self):
        ineqs = tuple((frozenset(I), Fraction(h)) for I, h in self.ineqs)
        seen = set()
        for I, _ in ineqs:
            if not weakorder.is_proper(I, self.n):
                raise ValueError(f"{sorted(I)} is not proper")
            if I in seen:
                raise ValueError(f"duplicate inequality for {sorted(I)}")
            seen.add(I)
        object.__setattr__(self, "ineqs", ineqs)
        object.__setattr__(self, "sum_level", Fraction(self.sum_level))

    @classmethod
    def from_heights(cls, rays, h, sum_level=None) -> "HPolytope":
        n = h.n
        level = Fraction(n * (n + 1), 2) if sum_level is None else sum_level
        rays = sorted((frozenset(I) for I in rays), key=_subset_key)
        return cls(n, level, tuple((I, h(I)) for I in rays))

    @property
    def sets(self) -> list:
        return [I for I, _ in self.ineqs]

    def matrix(self) -> list:
        return [_ray_ints(I, self.n) for I, _ in self.ineqs]

    def contains(self, x) -> bool:
        if sum(x) != self.sum_level:
            return False
        return all(linalg.dot(ray_vector(I, self.n), x) <= h for I, h in self.ineqs)

    def tight(self, x) -> frozenset:
        return frozenset(
            k for k, (I, h) in enumerate(self.ineqs) if linalg.dot(ray_vector(I, self.n), x) == h
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sum_level": linalg.fmt(self.sum_level),
            "ineqs": [{"set": sorted(I), "h": linalg.fmt(h)} for I, h in self.ineqs],
        }

    @classmethod
    def from_json(cls, data) -> "HPolytope":
        return cls(
            int(data["n"]),
            Fraction(data["sum_level"]),
            tuple((frozenset(e["set"]), Fraction(e["h"])) for e in data["ineqs"]),
        )


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple

    def __post_init__(self):
        pts = sorted({tuple(Fraction(c) for c in v) for v in self.vertices})
        object.__setattr__(self, "vertices", tuple(pts))

    def __len__(self):
        return len(self.vertices)

    @property
    def point_set(self) -> frozenset:
        return frozenset(self.vertices)

    def scaled(self, factor) -> "VPolytope":
        return VPolytope(tuple(tuple(Fraction(factor) * c for c in v) for v in self.vertices))

    def to_json(self) -> dict:
        return {"vertices": [[linalg.fmt(c) for c in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "VPolytope":
        return cls(tuple(tuple(Fraction(c) for c in v) for v in data["vertices"]))


def _subset_key(s):
    return (len(s), sorted(s))


def check_bounded(p: HPolytope) -> None:
    """Raise :class:`Unbounded` unless the rays positively span the sum-zero hyperplane."""
    rows = p.matrix()
    if linalg.rank(rows) < p.n - 1:
        raise Unbounded("inequality normals do not span the hyperplane")
    # a strictly positive dependence sum (1 + mu_I) r(I) = 0 certifies positive spanning
    target = [-sum(r[c] for r in rows) for c in range(p.n)]
    if _lp.conic_combination(rows, target) is None:
        raise Unbounded("inequality normals do not positively span the hyperplane")


def _candidate_points(A: np.ndarray, b: np.ndarray, n: int, level: float):
    m = A.shape[0]
    combos = np.array(list(itertools.combinations(range(m), n - 1)), dtype=np.int64)
    if combos.size == 0:
        return []
    out = []
    ones = np.ones((1, n))
    for start in range(0, len(combos), 20000):
        chunk = combos[start : start + 20000]
        M = np.concatenate([A[chunk], np.broadcast_to(ones, (len(chunk), 1, n))], axis=1)
        rhs = np.concatenate([b[chunk], np.full((len(chunk), 1), level)], axis=1)
        dets = np.linalg.det(M)
        good = np.abs(dets) > 0.5  # integer matrices: |det| >= 1 or exactly 0
        if not good.any():
            continue
        X = np.linalg.solve(M[good], rhs[good][..., None])[..., 0]
        scale = 1.0 + np.abs(b).max()
        feas = (X @ A.T <= b[None, :] + _FEAS_TOL * scale).all(axis=1)
        for combo, x in zip(chunk[good][feas], X[feas]):
            out.append((tuple(combo), x))
    return out


def vertices(p: HPolytope, check: bool = True) -> VPolytope:
    """Exact vertices by solving every (n-1)-subset of tight inequalities."""
    n = p.n
    if check:
        check_bounded(p)
    if n == 1:
        return VPolytope(((p.sum_level,),))
    int_rows = p.matrix()
    A = np.array(int_rows, dtype=float)
    b = np.array([float(h) for _, h in p.ineqs], dtype=float)
    cands = _candidate_points(A, b, n, float(p.sum_level))
    found = {}
    for combo, x in cands:
        key = tuple(np.round(x, 6))
        if key in found:
            continue
        rows = [int_rows[k] for k in combo] + [[1] * n]
        rhs = [p.ineqs[k][1] for k in combo] + [p.sum_level]
        exact = linalg.solve(rows, rhs)
        if exact is None:
            continue
        if all(linalg.dot(r, exact) <= h for r, (_, h) in zip(int_rows, p.ineqs)):
            found[key] = tuple(exact)
    return VPolytope(tuple(found.values()))


def _argmax_sets(verts, rays_needed, n):
    out = {}
    for I in rays_needed:
        r = _ray_ints(I, n)
        vals = [linalg.dot(r, v) for v in verts]
        best = max(vals)
        out[I] = frozenset(k for k, v in enumerate(vals) if v == best)
    return out


def normal_partition(p: HPolytope, verts: VPolytope | None = None) -> dict:
    """Map each permutation to the vertex whose normal cone contains its chamber, else :class:`Split`."""
    verts = vertices(p) if verts is None else verts
    pts = list(verts.vertices)
    n = p.n
    argmax = _argmax_sets(pts, list(weakorder.proper_subsets(n)), n)
    out = {}
    for sigma in weakorder.permutations(n):
        common = None
        for I in weakorder.chamber_rays(sigma):
            common = argmax[I] if common is None else common & argmax[I]
        if common is None:
            common = frozenset(range(len(pts)))
        out[sigma] = pts[next(iter(common))] if len(common) == 1 else Split(sigma)
    return out


def partition_classes(partition: dict):
    """Group permutations by vertex; ``None`` if some chamber is split."""
    if any(isinstance(v, Split) for v in partition.values()):
        return None
    groups = {}
    for sigma, v in partition.items():
        groups.setdefault(v, []).append(sigma)
    return tuple(sorted(tuple(sorted(g)) for g in groups.values()))


def irredundant_facets(p: HPolytope, verts: VPolytope | None = None) -> list:
    """Indices of inequalities whose tight vertex set spans an (n-2)-face."""
    verts = vertices(p) if verts is None else verts
    n = p.n
    pts = list(verts.vertices)
    if len(pts) > 1:
        diffs = [[a - b for a, b in zip(v, pts[0])] for v in pts[1:]]
        if linalg.rank(diffs) < n - 1:
            raise Degenerate("polytope is not full-dimensional in the hyperplane")
    elif n > 1:
        raise Degenerate("polytope is a point")
    out = []
    for k, (I, h) in enumerate(p.ineqs):
        r = ray_vector(I, n)
        on = [v for v in pts if linalg.dot(r, v) == h]
        if not on:
            continue
        diffs = [[a - b for a, b in zip(v, on[0])] for v in on[1:]]
        if linalg.rank(diffs) == n - 2:
            out.append(k)
    return out


def graph(p: HPolytope, verts: VPolytope | None = None):
    """1-skeleton: vertices adjacent iff their common tight rows leave a 1-dim face."""
    import networkx as nx

    verts = vertices(p) if verts is None else verts
    pts = list(verts.vertices)
    rows = p.matrix()
    tight = [p.tight(v) for v in pts]
    g = nx.Graph()
    g.add_nodes_from(range(len(pts)))
    for a, b in itertools.combinations(range(len(pts)), 2):
        common = tight[a] & tight[b]
        if len(common) < p.n - 2:
            continue
        if linalg.rank([rows[k] for k in common] + [[1] * p.n]) == p.n - 1:
            g.add_edge(a, b)
    return g


def submodular_defect(h: HeightFunction, I, J) -> Fraction:
    I, J = frozenset(I), frozenset(J)
    return h(I) + h(J) - h(I & J) - h(I | J)


@dataclass
class Submodularity:
    kind: str  # "strict" | "weak" | "none"
    witness: tuple | None = None
    defect: Fraction | None = None


def submodularity(h: HeightFunction) -> Submodularity:
    """Classify over all pairs of incomparable subsets."""
    subsets = sorted(h.values, key=_subset_key)
    weakest = None
    for I, J in itertools.combinations(subsets, 2):
        if I <= J or J <= I:
            continue
        d = submodular_defect(h, I, J)
        if d < 0:
            return Submodularity("none", (I, J), d)
        if d == 0 and weakest is None:
            weakest = (I, J)
    if weakest is not None:
        return Submodularity("weak", weakest, Fraction(0))
    return Submodularity("strict")


# -- fans given by chamber partitions ---------------------------------------------


def class_rays(cls, fan_rays) -> frozenset:
    """Rays of the glued chamber: fan rays that are a prefix of some member."""
    prefixes = set()
    for sigma in cls:
        prefixes.update(weakorder.chamber_rays(sigma))
    return frozenset(prefixes) & frozenset(fan_rays)


def adjacent_classes(classes) -> list:
    """Pairs ``(a, b)`` with ``a < b`` of classes containing braid-adjacent permutations."""
    idx = {p: k for k, cls in enumerate(classes) for p in cls}
    pairs = set()
    for p, k in idx.items():
        for _, q in weakorder.neighbors(p):
            l = idx[q]
            if k != l:
                pairs.add((min(k, l), max(k, l)))
    return sorted(pairs)


@dataclass(frozen=True)
class WallCrossing:
    """``alpha r(I) + beta r(J) = sum_K c_K r(K)`` with ``alpha + beta = 2``."""

    n: int
    left: tuple  # ((I, alpha), (J, beta))
    right: tuple  # ((K, c_K), ...)

    @property
    def pair(self) -> frozenset:
        return frozenset(I for I, _ in self.left)

    def defect(self, h) -> Fraction:
        return sum(c * h(I) for I, c in self.left) - sum(c * h(K) for K, c in self.right)

    def row(self) -> dict:
        out = {}
        for I, c in self.left:
            out[I] = out.get(I, 0) + c
        for K, c in self.right:
            out[K] = out.get(K, 0) - c
        return {k: v for k, v in out.items() if v != 0}

    def holds(self) -> bool:
        total = [Fraction(0)] * self.n
        for I, c in self.left:
            total = [t + c * x for t, x in zip(total, ray_vector(I, self.n))]
        for K, c in self.right:
            total = [t - c * x for t, x in zip(total, ray_vector(K, self.n))]
        return not any(total)

    def describe(self) -> str:
        def term(I, c):
            s = "{" + ",".join(map(str, sorted(I))) + "}"
            return f"r({s})" if c == 1 else f"{c}*r({s})"

        lhs = " + ".join(term(I, c) for I, c in self.left)
        rhs = " + ".join(term(K, c) for K, c in self.right) or "0"
        return f"{lhs} = {rhs}"

    def to_json(self) -> dict:
        return {
            "left": [{"set": sorted(I), "coef": linalg.fmt(c)} for I, c in self.left],
            "right": [{"set": sorted(K), "coef": linalg.fmt(c)} for K, c in self.right],
            "text": self.describe(),
        }


def wall_crossing(n: int, r, s, common) -> WallCrossing | None:
    """The dependence among ``{r, s} + common`` with positive coefficients on ``r, s``.

    Returns ``None`` unless that dependence is unique up to scaling.
    """
    common = sorted(common, key=_subset_key)
    sets = [r, s] + common
    ker = linalg.left_kernel([ray_vector(I, n) for I in sets])
    if len(ker) != 1:
        return None
    c = ker[0]
    if c[0] < 0:
        c = [-x for x in c]
    if c[0] <= 0 or c[1] <= 0:
        return None
    scale = Fraction(2) / (c[0] + c[1])
    c = [x * scale for x in c]
    left = tuple(sorted(((r, c[0]), (s, c[1])), key=lambda t: _subset_key(t[0])))
    right = tuple((K, -x) for K, x in zip(common, c[2:]) if x != 0)
    return WallCrossing(n, left, right)


def fan_wall_crossings(classes, fan_rays, n: int) -> list:
    """Wall-crossing dependences over all adjacent chamber pairs (unique ones only)."""
    rays = [class_rays(cls, fan_rays) for cls in classes]
    out = []
    seen = set()
    for a, b in adjacent_classes(classes):
        common = rays[a] & rays[b]
        for r in sorted(rays[a] - rays[b], key=_subset_key):
            for s in sorted(rays[b] - rays[a], key=_subset_key):
                wc = wall_crossing(n, r, s, common)
                if wc is None:
                    continue
                key = (wc.left, wc.right)
                if key not in seen:
                    seen.add(key)
                    out.append(wc)
    return out


@dataclass
class Realization:
    ok: bool
    witnesses: list = field(default_factory=list)
    polytope: HPolytope | None = None
    partition_classes: tuple | None = None

    def __bool__(self):
        return self.ok


def check_realizes(fan_classes, fan_rays, h: HeightFunction) -> Realization:
    """Decide whether ``{<r(I), x> <= h(I) : I in fan_rays}`` has the given normal fan."""
    n = h.n
    target = tuple(sorted(tuple(sorted(c)) for c in fan_classes))
    p = HPolytope.from_heights(fan_rays, h)
    try:
        verts = vertices(p)
    except Unbounded as exc:
        return Realization(False, [{"kind": "unbounded", "detail": str(exc)}], p)
    got = partition_classes(normal_partition(p, verts))
    if got == target:
        return Realization(True, [], p, got)
    witnesses = []
    for wc in fan_wall_crossings(target, fan_rays, n):
        d = wc.defect(h)
        if d <= 0:
            witnesses.append({"kind": "wall_crossing", "dependence": wc, "defect": d})
    if not witnesses:
        for cls in target:
            rays = sorted(class_rays(cls, fan_rays), key=_subset_key)
            for dep in linalg.left_kernel([ray_vector(I, n) for I in rays]):
                val = sum(c * h(I) for I, c in zip(rays, dep))
                if val != 0:
                    witnesses.append({"kind": "chamber_equality", "rays": rays, "value": val})
    if not witnesses:
        witnesses.append({"kind": "class_mismatch", "expected": target, "found": got})
    return Realization(False, witnesses, p, got)


# -- cones given by inequality rows -------------------------------------------------


def cone_facets(rows) -> list:
    """Indices of irredundant rows of ``{y : row . y >= 0}``; duplicates keep their first index."""
    norm = []
    for r in rows:
        norm.append(tuple(linalg.primitive(r)))
    first = {}
    for k, r in enumerate(norm):
        first.setdefault(r, k)
    keys = sorted(first.values())
    uniq = [list(norm[k]) for k in keys]
    out = []
    for pos, k in enumerate(keys):
        redundant, _ = _lp.is_redundant(uniq, pos)
        if not redundant:
            out.append(k)
    return out


# -- simplicial type cones -------------------------------------------------------


def orthant_slice_vertices(K, u) -> list:
    """Vertices of ``{z >= 0 : K z = u}`` (K of full row rank), as exact tuples."""
    K = [[Fraction(x) for x in row] for row in K]
    u = [Fraction(x) for x in u]
    m = len(K)
    N = len(K[0]) if K else 0
    if linalg.rank(K) != m:
        raise Degenerate("equality system is not of full row rank")
    Kf = np.array([[float(x) for x in row] for row in K])
    uf = np.array([float(x) for x in u])
    combos = np.array(list(itertools.combinations(range(N), m)), dtype=np.int64)
    out = {}
    if m == 0:
        return [tuple([Fraction(0)] * N)]
    for start in range(0, len(combos), 20000):
        chunk = combos[start : start + 20000]
        B = np.transpose(Kf[:, chunk], (1, 0, 2))
        dets = np.linalg.det(B)
        good = np.abs(dets) > 1e-9
        if not good.any():
            continue
        Z = np.linalg.solve(B[good], np.broadcast_to(uf, (int(good.sum()), m))[..., None])[..., 0]
        feas = (Z >= -_FEAS_TOL * (1 + np.abs(uf).max())).all(axis=1)
        for combo, z in zip(chunk[good][feas], Z[feas]):
            rows = [[K[r][c] for c in combo] for r in range(m)]
            sol = linalg.solve(rows, u)
            if sol is None or any(x < 0 for x in sol):
                continue
            full = [Fraction(0)] * N
            for c, x in zip(combo, sol):
                full[c] = x
            out[tuple(full)] = True
    return sorted(out)


def q_polytope(rays, K, u, n: int | None = None) -> VPolytope:
    """``{z >= 0 : K z = u}`` for a simplicial type cone with facet matrix ``K``.

    ``rays`` fixes the coordinate order of ``z``; ``n`` (if given) checks the
    facet count ``N - n + 1`` of a simplicial type cone.
    """
    N = len(rays)
    if any(len(row) != N for row in K):
        raise ValueError("facet matrix width must equal the number of rays")
    if len(u) != len(K):
        raise ValueError("one right-hand side per facet is required")
    if any(Fraction(x) <= 0 for x in u):
        raise ValueError("right-hand sides must be positive")
    if n is not None and len(K) != N - n + 1:
        raise ValueError(f"expected {N - n + 1} facets for a simplicial type cone, got {len(K)}")
    return VPolytope(tuple(orthant_slice_vertices(K, u)))


def orthant_graph(K, pts):
    """Adjacency on vertices of ``{z >= 0 : Kz = u}``: the union support spans a 1-dim face."""
    import networkx as nx

    g = nx.Graph()
    g.add_nodes_from(range(len(pts)))
    for a, b in itertools.combinations(range(len(pts)), 2):
        supp = sorted({k for k, x in enumerate(pts[a]) if x} | {k for k, x in enumerate(pts[b]) if x})
        sub = [[row[k] for k in supp] for row in K]
        if len(supp) - linalg.rank(sub) == 1:
            g.add_edge(a, b)
    return g
