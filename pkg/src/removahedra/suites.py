"""Verification sweeps behind ``removahedra verify``.

Every suite returns a :class:`SuiteResult` whose witnesses pin down the first
(in canonical order) inputs that break an invariant. Per-decoration work is
done by top-level functions so that sweeps can fan out over a process pool.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from . import permutrees, polyhedra, realizations, shards, typecone, weakorder
from .decoration import Decoration

MAX_WITNESSES = 20


@dataclass
class SuiteResult:
    name: str
    n: int
    ok: bool
    summary: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "ok": self.ok,
            "summary": self.summary,
            "witnesses": self.witnesses[:MAX_WITNESSES],
        }


def pool_map(func, items, jobs: int = 1) -> list:
    """``list(map(func, items))``, optionally on ``jobs`` worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


def _decorations(n: int) -> list:
    return [str(d) for d in Decoration.all(n)]


def _finish(name, n, summary, witnesses) -> SuiteResult:
    witnesses = sorted(witnesses, key=lambda w: str(w.get("decoration", "")) + repr(w))
    return SuiteResult(name, n, not witnesses, summary, witnesses)


# -- type cone ----------------------------------------------------------------------


def _typecone_one(word: str):
    d = Decoration(word)
    oracle = typecone.facet_oracle(d)
    combinatorial = typecone.typecone_facets(d)
    out = []
    if oracle != combinatorial:
        out.append({
            "decoration": word,
            "kind": "facet_mismatch",
            "oracle_only": typecone.sorted_labels(oracle - combinatorial),
            "combinatorial_only": typecone.sorted_labels(combinatorial - oracle),
        })
    if len(oracle) != typecone.phi(d):
        out.append({"decoration": word, "kind": "phi_mismatch", "phi": typecone.phi(d), "facets": len(oracle)})
    return len(oracle), out


def verify_typecone(n: int, jobs: int = 1) -> SuiteResult:
    words = _decorations(n)
    results = pool_map(_typecone_one, words, jobs)
    witnesses = [w for _, ws in results for w in ws]
    summary = {"decorations": len(words), "total_facets": sum(c for c, _ in results)}
    return _finish("typecone", n, summary, witnesses)


# -- rays ---------------------------------------------------------------------------


def _rays_one(word: str):
    d = Decoration(word)
    ideal = shards.permutree_ideal(d)
    expected = frozenset(shards.quotient_rays(ideal))
    got = typecone.permutree_rays(d).rays
    if got == expected:
        return []
    return [{
        "decoration": word,
        "kind": "ray_mismatch",
        "characterized_only": sorted(map(sorted, got - expected)),
        "shard_only": sorted(map(sorted, expected - got)),
    }]


def verify_rays(n: int, jobs: int = 1) -> SuiteResult:
    witnesses = []
    for I in weakorder.proper_subsets(n):
        size = len(shards.ray_shards(I, n))
        if size != n - 2:
            witnesses.append({"kind": "ray_shard_count", "subset": sorted(I), "count": size})
    words = _decorations(n)
    witnesses += [w for ws in pool_map(_rays_one, words, jobs) for w in ws]
    summary = {"decorations": len(words), "subsets": 2**n - 2}
    return _finish("rays", n, summary, witnesses)


# -- removahedral congruences ---------------------------------------------------------


def _removahedral_one(ideal):
    cong = shards.congruence_classes(ideal)
    verdict = realizations.is_removahedral(cong)
    dec = shards.ideal_decoration(ideal)
    return ideal, bool(verdict), dec, verdict.witnesses[:1]


def verify_removahedral(n: int, jobs: int = 1) -> SuiteResult:
    ideals = list(shards.upper_ideals(n))
    essential = [i for i in ideals if i.essential]
    results = pool_map(_removahedral_one, essential, jobs)
    witnesses, removahedral = [], []
    for ideal, ok, dec, why in results:
        is_perm = not isinstance(dec, shards.NotPermutree)
        if ok:
            removahedral.append(str(dec) if is_perm else ideal.missing())
        if ok != is_perm:
            witnesses.append({
                "kind": "removahedral_mismatch",
                "missing": sorted(ideal.missing(), key=shards.Shard.sort_key),
                "removahedral": ok,
                "permutree": is_perm,
                "reason": why,
            })
    summary = {
        "upper_ideals": len(ideals),
        "essential": len(essential),
        "removahedral": len(removahedral),
        "removahedral_decorations": sorted(str(x) for x in removahedral),
    }
    return _finish("removahedral", n, summary, witnesses)


def verify_lemmas(n: int) -> SuiteResult:
    """Ray and adjacency lemmas for long up/down generators of non-permutree ideals."""
    checked = 0
    witnesses = []
    for ideal in shards.upper_ideals(n):
        if not ideal.essential:
            continue
        gens = [g for g in shards.lower_generators(ideal) if g.length > 2 and (g.is_up or g.is_down)]
        if not gens or not isinstance(shards.ideal_decoration(ideal), shards.NotPermutree):
            continue
        cong = shards.congruence_classes(ideal)
        for g in gens:
            res = realizations.check_generator_lemmas(cong, g)
            checked += 1
            if not (res.all_rays and res.adjacent and res.defect <= 0):
                witnesses.append({
                    "kind": "lemma_failure",
                    "generator": g,
                    "all_rays": res.all_rays,
                    "adjacent": res.adjacent,
                    "defect": res.defect,
                })
    return _finish("lemmas", n, {"generators_checked": checked}, witnesses)


# -- permutreehedra -------------------------------------------------------------------


def _permutreehedron_one(word: str):
    d = Decoration(word)
    _, H = realizations.permutreehedron(d)
    verts = polyhedra.vertices(H)
    part = polyhedra.normal_partition(H, verts)
    got = polyhedra.partition_classes(part)
    expected = shards.congruence_classes(shards.permutree_ideal(d)).classes
    out = []
    if got != expected:
        splits = sorted(str(v.permutation) for v in part.values() if isinstance(v, polyhedra.Split))
        out.append({"decoration": word, "kind": "normal_partition", "splits": splits[:3]})
    perm = realizations.vh_agreement(d, "perm")
    shifted = realizations.vh_agreement(d, "shifted")
    if not perm.agrees:
        out.append({"decoration": word, "kind": "vh_disagreement", "detail": perm.detail})
    return len(verts), perm.agrees, shifted.agrees, out


def verify_permutreehedron(n: int, jobs: int = 1) -> SuiteResult:
    words = _decorations(n)
    results = pool_map(_permutreehedron_one, words, jobs)
    witnesses = [w for *_, ws in results for w in ws]
    summary = {
        "decorations": len(words),
        "total_vertices": sum(r[0] for r in results),
        "agreement_constant_binom_k_plus_1": sum(r[1] for r in results),
        "agreement_constant_binom_k_plus_2": sum(r[2] for r in results),
    }
    return _finish("permutreehedron", n, summary, witnesses)


# -- submodular -----------------------------------------------------------------------


def _submodular_one(args):
    word, heights = args
    d = Decoration(word)
    out = []
    for k, h in enumerate(heights):
        res = realizations.realize_from_submodular(d, h)
        if not res:
            out.append({"decoration": word, "kind": "not_realized", "sample": k, "reason": res.witnesses[:1]})
    return out


def verify_submodular(n: int, seed: int = 0, samples: int = 20, weak: int = 5, jobs: int = 1) -> SuiteResult:
    rng = random.Random(seed)
    heights = [realizations.random_strictly_submodular(n, rng) for _ in range(samples)]
    weak_hs = realizations.weakly_submodular_examples(n, weak, rng)
    witnesses = []
    for k, h in enumerate(heights):
        if polyhedra.submodularity(h).kind != "strict":
            witnesses.append({"kind": "sample_not_strict", "sample": k})
    words = _decorations(n)
    witnesses += [w for ws in pool_map(_submodular_one, [(w, heights) for w in words], jobs) for w in ws]
    rejected = 0
    for k, h in enumerate(weak_hs):
        try:
            realizations.realize_from_submodular(Decoration("o" * n), h)
        except realizations.NotStrictlySubmodular:
            rejected += 1
        else:
            witnesses.append({"kind": "weak_accepted", "sample": k})
    summary = {"decorations": len(words), "strict_samples": samples, "weak_samples": weak, "weak_rejected": rejected}
    return _finish("submodular", n, summary, witnesses)


# -- kinematic ------------------------------------------------------------------------


def _kinematic_one(args):
    import networkx as nx

    word, seed, samples = args
    d = Decoration(word)
    rng = random.Random(f"{seed}:{word}")
    trees = permutrees.enumerate_permutrees(d)
    rot = realizations.rotation_graph(d)
    coords, pairs, _ = realizations.kinematic_system(d)
    out = []
    for k in range(samples):
        u = realizations.random_positive(len(pairs), rng)
        verts = realizations.kinematic_polytope(d, u)
        g = realizations.kinematic_graph(d, verts)
        if len(verts) != len(trees) or not nx.is_isomorphic(g, rot):
            out.append({
                "decoration": word,
                "kind": "kinematic",
                "sample": k,
                "vertices": len(verts),
                "permutrees": len(trees),
            })
    return len(trees), out


def verify_kinematic(n: int, seed: int = 0, samples: int = 10, jobs: int = 1) -> SuiteResult:
    words = [str(d) for d in realizations.kinematic_decorations(n)]
    results = pool_map(_kinematic_one, [(w, seed, samples) for w in words], jobs)
    witnesses = [w for _, ws in results for w in ws]
    summary = {
        "decorations": len(words),
        "samples": samples,
        "vertex_counts": {w: c for w, (c, _) in zip(words, results)},
    }
    return _finish("kinematic", n, summary, witnesses)


# -- braid ----------------------------------------------------------------------------


def verify_braid(n: int) -> SuiteResult:
    facets = typecone.submodular_cone_facets(n)
    subsets = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    expected = {
        frozenset((I, J))
        for I, J in itertools.combinations(subsets, 2)
        if len(I - J) == 1 and len(J - I) == 1
    }
    witnesses = []
    for pair in sorted(facets ^ expected, key=lambda p: sorted(map(sorted, p))):
        witnesses.append({"kind": "braid_facet", "pair": sorted(map(sorted, pair)), "in_oracle": pair in facets})
    return _finish("braid", n, {"facets": len(facets), "expected": len(expected)}, witnesses)


# -- counts ---------------------------------------------------------------------------


def closed_forms(k: int) -> dict:
    """Expected (rho, chi, phi) of o^k, d^k and x^k."""
    return {
        "o": (2**k - 2, 2 ** (k - 2) * comb(k, 2), 2 ** (k - 2) * comb(k, 2)),
        "d": (comb(k + 1, 2) - 1, comb(k + 2, 4), comb(k, 2)),
        "x": (2 * k - 2, k - 1, k - 1),
    }


def _counts_one(word: str):
    d = Decoration(word)
    got = (typecone.rho(d), typecone.chi(d), typecone.phi(d))
    direct = (
        len(typecone.permutree_rays(d)),
        len(typecone.exchangeable_pairs(d)),
        len(typecone.typecone_facets(d)),
    )
    if got != direct:
        return [{"decoration": word, "kind": "count_mismatch", "formula": got, "enumerated": direct}]
    return []


def verify_counts(n: int, jobs: int = 1) -> SuiteResult:
    witnesses = []
    for k in range(2, n + 1):
        for letter, want in closed_forms(k).items():
            d = Decoration(letter * k)
            got = (typecone.rho(d), typecone.chi(d), typecone.phi(d))
            if got != want:
                witnesses.append({"decoration": str(d), "kind": "closed_form", "expected": want, "got": got})
    words = _decorations(n)
    witnesses += [w for ws in pool_map(_counts_one, words, jobs) for w in ws]
    return _finish("counts", n, {"decorations": len(words)}, witnesses)


SUITES = {
    "removahedral": (4, lambda n, seed, jobs: verify_removahedral(n, jobs)),
    "lemmas": (4, lambda n, seed, jobs: verify_lemmas(n)),
    "typecone": (6, lambda n, seed, jobs: verify_typecone(n, jobs)),
    "rays": (6, lambda n, seed, jobs: verify_rays(n, jobs)),
    "permutreehedron": (6, lambda n, seed, jobs: verify_permutreehedron(n, jobs)),
    "submodular": (6, lambda n, seed, jobs: verify_submodular(n, seed, jobs=jobs)),
    "kinematic": (6, lambda n, seed, jobs: verify_kinematic(n, seed, jobs=jobs)),
    "braid": (6, lambda n, seed, jobs: verify_braid(n)),
    "counts": (7, lambda n, seed, jobs: verify_counts(n, jobs)),
}
