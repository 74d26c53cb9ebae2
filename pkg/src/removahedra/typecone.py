"""Rays, exchangeable pairs and type-cone facets of permutree fans.

Combinatorial characterizations and counting formulas live next to an
independent facet oracle that never looks at them: it rebuilds the fan from
congruence classes, derives every wall-crossing dependence by exact kernel
computations, and keeps the irredundant inequalities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import polyhedra, shards, weakorder
from .decoration import Decoration


def subset_str(s) -> str:
    """``{1, 3, 4}`` -> ``'134'`` (the compact notation of the examples)."""
    return "".join(str(k) for k in sorted(s))


def subset_key(s):
    return (len(s), sorted(s))


@dataclass(frozen=True)
class RaySet:
    decoration: Decoration
    rays: frozenset

    def __len__(self):
        return len(self.rays)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, s):
        return frozenset(s) in self.rays

    def sorted(self) -> list:
        return sorted(self.rays, key=subset_key)

    def labels(self) -> list:
        return [subset_str(s) for s in self.sorted()]


@dataclass(frozen=True)
class ExchangeablePair:
    """Normalized so that ``max(I - J) < min(J - I)``."""

    I: frozenset
    J: frozenset

    @classmethod
    def of(cls, A, B) -> "ExchangeablePair":
        A, B = frozenset(A), frozenset(B)
        if not (A - B) or not (B - A):
            raise ValueError("exchangeable subsets must be incomparable")
        if max(A - B) < min(B - A):
            return cls(A, B)
        if max(B - A) < min(A - B):
            return cls(B, A)
        raise ValueError(f"{subset_str(A)}, {subset_str(B)} cannot be normalized")

    @property
    def i(self) -> int:
        return max(self.I - self.J)

    @property
    def j(self) -> int:
        return min(self.J - self.I)

    @property
    def meet(self) -> frozenset:
        return self.I & self.J

    @property
    def join(self) -> frozenset:
        return self.I | self.J

    def dependence(self, n: int) -> str:
        """The four-term relation, dropping the empty set and [n] (their rays vanish)."""

        def s(x):
            return "{" + subset_str(x) + "}"

        right = [s(x) for x in (self.meet, self.join) if 0 < len(x) < n]
        return f"r({s(self.I)}) + r({s(self.J)}) = " + (" + ".join(f"r({x})" for x in right) or "0")

    def strings(self) -> tuple:
        """The two compact subset strings, lexicographically ordered."""
        return tuple(sorted((subset_str(self.I), subset_str(self.J))))

    def label(self) -> str:
        return "{" + ", ".join(self.strings()) + "}"

    def to_json(self) -> dict:
        return {"I": sorted(self.I), "J": sorted(self.J), "i": self.i, "j": self.j}


def sorted_labels(pairs) -> list:
    """Labels sorted by their string pairs, the order used in the printed examples."""
    return [p.label() for p in sorted(pairs, key=ExchangeablePair.strings)]


# -- rays ------------------------------------------------------------------------


def is_permutree_ray(subset, d: Decoration) -> bool:
    s = frozenset(subset)
    n = d.n
    if not weakorder.is_proper(s, n):
        return False
    for b in range(2, n):
        left_in = any(a in s for a in range(1, b))
        left_out = any(a not in s for a in range(1, b))
        right_in = any(c in s for c in range(b + 1, n + 1))
        right_out = any(c not in s for c in range(b + 1, n + 1))
        if left_in and right_in and b in d.down and b not in s:
            return False
        if left_out and right_out and b in d.up and b in s:
            return False
    return True


def permutree_rays(d: Decoration) -> RaySet:
    return RaySet(d, frozenset(I for I in weakorder.proper_subsets(d.n) if is_permutree_ray(I, d)))


# -- counting --------------------------------------------------------------------


def omega(letters) -> int:
    value = 1
    for c in str(letters):
        if c == "o":
            value *= 2
        elif c in "du":
            value += 1
        elif c == "x":
            value = 2
        else:
            raise ValueError(f"invalid decoration letter {c!r}")
    return value


def _free_intervals(d: Decoration):
    w = d.letters
    n = d.n
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            mid = w[i : j - 1]
            if "x" not in mid:
                yield i, j, mid.count("o")


def rho(d: Decoration) -> int:
    return d.n - 1 + sum(2**k for _, _, k in _free_intervals(d))


def _weighted(d: Decoration, exponent) -> int:
    w = d.letters
    total = 0
    for i, j, k in _free_intervals(d):
        left = omega(w[: i - 1]) if exponent(w[i - 1]) else 1
        right = omega(w[j:][::-1]) if exponent(w[j - 1]) else 1
        total += left * 2**k * right
    return total


def chi(d: Decoration) -> int:
    return _weighted(d, lambda c: c != "x")


def phi(d: Decoration) -> int:
    return _weighted(d, lambda c: c == "o")


def is_simplicial(d: Decoration) -> bool:
    return "o" not in d.interior()


# -- pairs -----------------------------------------------------------------------


def _pair_conditions(I, J, d: Decoration, strict: bool) -> bool:
    if not (I - J) or not (J - I):
        return False
    i, j = max(I - J), min(J - I)
    if not i < j:
        return False
    if strict:
        ok_i = I - J == {i} or d[i] == "x"
        ok_j = J - I == {j} or d[j] == "x"
    else:
        ok_i = I - J == {i} or d[i] != "o"
        ok_j = J - I == {j} or d[j] != "o"
    if not (ok_i and ok_j):
        return False
    between = frozenset(range(i + 1, j))
    both = I & J
    return (between & d.down) <= both and not (between & d.up & both)


def _pairs(d: Decoration, strict: bool) -> frozenset:
    rays = permutree_rays(d).sorted()
    out = set()
    for A, B in itertools.combinations(rays, 2):
        for I, J in ((A, B), (B, A)):
            if _pair_conditions(I, J, d, strict):
                out.add(ExchangeablePair(I, J))
    return frozenset(out)


def exchangeable_pairs(d: Decoration) -> frozenset:
    return _pairs(d, strict=False)


def typecone_facets(d: Decoration) -> frozenset:
    return _pairs(d, strict=True)


def facet_row(pair: ExchangeablePair, rays: list) -> list:
    """``g_I + g_J - g_{I & J} - g_{I | J}`` over the coordinate order ``rays``."""
    index = {r: k for k, r in enumerate(rays)}
    row = [0] * len(rays)
    for s, c in ((pair.I, 1), (pair.J, 1), (pair.meet, -1), (pair.join, -1)):
        if s in index:
            row[index[s]] += c
    return row


# -- independent oracles ----------------------------------------------------------


@lru_cache(maxsize=None)
def _fan_of(d: Decoration):
    ideal = shards.permutree_ideal(d)
    cong = shards.congruence_classes(ideal)
    rays = shards.quotient_rays(ideal)
    return cong.classes, rays


def wall_crossings(d: Decoration) -> list:
    """All wall-crossing dependences of the quotient fan of ``permutree_ideal(d)``."""
    classes, rays = _fan_of(d)
    return polyhedra.fan_wall_crossings(classes, rays, d.n)


def facet_oracle(d: Decoration) -> frozenset:
    """Facet-defining wall-crossing inequalities, decided by certified LPs."""
    classes, rays = _fan_of(d)
    rays = sorted(rays, key=subset_key)
    index = {r: k for k, r in enumerate(rays)}
    crossings = polyhedra.fan_wall_crossings(classes, rays, d.n)
    rows = []
    for wc in crossings:
        row = [0] * len(rays)
        for s, c in wc.row().items():
            if s in index:
                row[index[s]] += c
        rows.append(row)
    keep = polyhedra.cone_facets(rows)
    return frozenset(ExchangeablePair.of(*crossings[k].pair) for k in keep)


def rotation_pairs(d: Decoration) -> frozenset:
    """Pairs of edge cuts exchanged by rotations between enumerated permutrees."""
    from . import permutrees

    out = set()
    for t in permutrees.enumerate_permutrees(d):
        before = permutrees.edge_cut_map(t)
        for e in t.edges:
            s = permutrees.rotate(t, e)
            after = set(permutrees.edge_cut_map(s).values())
            (old,) = set(before.values()) - after
            (new,) = after - set(before.values())
            out.add(ExchangeablePair.of(old, new))
    return frozenset(out)


def submodular_cone_facets(n: int) -> frozenset:
    """Irredundant submodular inequalities of the braid fan, as pairs ``{I, J}``."""
    rays = list(weakorder.proper_subsets(n))
    index = {r: k for k, r in enumerate(rays)}
    pairs, rows = [], []
    subsets = [frozenset()] + rays + [frozenset(range(1, n + 1))]
    for I, J in itertools.combinations(subsets, 2):
        if I <= J or J <= I:
            continue
        row = [0] * len(rays)
        for s, c in ((I, 1), (J, 1), (I & J, -1), (I | J, -1)):
            if s in index:
                row[index[s]] += c
        pairs.append(frozenset((I, J)))
        rows.append(row)
    return frozenset(pairs[k] for k in polyhedra.cone_facets(rows))


def counts_row(d: Decoration) -> dict:
    return {
        "decoration": str(d),
        "rho": rho(d),
        "chi": chi(d),
        "phi": phi(d),
        "simplicial": is_simplicial(d),
    }

