"""Acceptance criteria 1-11, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary (and by
each test itself when run with ``-s``).
"""

import time
from functools import lru_cache
from math import comb

import networkx as nx
import pytest

from conftest import CRITERION_DETAILS, EXAMPLES, split_pairs
from removahedra import polyhedra, realizations, shards, suites, typecone
from removahedra.decoration import Decoration
from removahedra.shards import Shard

D = Decoration


def report(number, ok, detail=""):
    CRITERION_DETAILS[number] = detail
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


@lru_cache(maxsize=None)
def permutreehedron_sweep(n):
    return suites.verify_permutreehedron(n)


@pytest.mark.criterion(1, "printed ray, pair and facet lists for oodo and oxuo")
def test_criterion_1_printed_examples():
    start = time.perf_counter()
    for word, ex in EXAMPLES.items():
        d = D(word)
        assert (typecone.rho(d), typecone.chi(d), typecone.phi(d)) == ex["counts"]
        assert ", ".join(typecone.permutree_rays(d).labels()) == ex["rays"]
        assert typecone.sorted_labels(typecone.exchangeable_pairs(d)) == split_pairs(ex["pairs"])
        assert typecone.sorted_labels(typecone.typecone_facets(d)) == split_pairs(ex["facets"])
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, True, f"({elapsed:.3f}s)")


@pytest.mark.criterion(2, "closed forms for o^n, d^n, x^n with n <= 7")
def test_criterion_2_closed_forms():
    start = time.perf_counter()
    for n in range(2, 8):
        want = {
            "o": (2**n - 2, 2 ** (n - 2) * comb(n, 2), 2 ** (n - 2) * comb(n, 2)),
            "d": (comb(n + 1, 2) - 1, comb(n + 2, 4), comb(n, 2)),
            "x": (2 * n - 2, n - 1, n - 1),
        }
        for letter, counts in want.items():
            d = D(letter * n)
            assert (typecone.rho(d), typecone.chi(d), typecone.phi(d)) == counts
            enumerated = (
                len(typecone.permutree_rays(d)),
                len(typecone.exchangeable_pairs(d)),
                len(typecone.typecone_facets(d)),
            )
            assert enumerated == counts
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    report(2, True, f"({elapsed:.2f}s)")


@pytest.mark.criterion(3, "fan oracle = combinatorial facets, |facets| = phi, all decorations n <= 5")
def test_criterion_3_typecone_oracle():
    total = 0
    for n in range(1, 6):
        res = suites.verify_typecone(n)
        assert res.ok, res.witnesses[:3]
        total += res.summary["decorations"]
    assert total == sum(4**n for n in range(1, 6))
    report(3, True, f"({total} decorations)")


@pytest.mark.criterion(4, "permutree rays = {I : Sigma_I in ideal}, |Sigma_I| = n - 2, n <= 6")
def test_criterion_4_rays():
    for n in range(1, 7):
        res = suites.verify_rays(n)
        assert res.ok, res.witnesses[:3]
    report(4, True)


@pytest.mark.criterion(5, "essential removahedral congruences of S_4 are exactly the permutree ones")
def test_criterion_5_removahedral_s4():
    ideals = list(shards.upper_ideals(4))
    essential = [i for i in ideals if i.essential]
    removahedral, permutree = set(), set()
    for ideal in essential:
        cong = shards.congruence_classes(ideal)
        if realizations.is_removahedral(cong):
            removahedral.add(ideal.shards)
        if not isinstance(shards.ideal_decoration(ideal), shards.NotPermutree):
            permutree.add(ideal.shards)
    assert removahedral == permutree
    assert len(permutree) == 16
    # and these are the ideals of the 16 interior decorations
    assert permutree == {shards.permutree_ideal(D("o" + a + b + "o")).shards for a in "odux" for b in "odux"}
    report(5, True, f"({len(ideals)} upper ideals, {len(essential)} essential, {len(removahedral)} removahedral)")


@pytest.mark.criterion(6, "normal partition of the permutreehedron = permutree classes, n <= 5")
def test_criterion_6_normal_partition():
    for n in range(1, 6):
        res = permutreehedron_sweep(n)
        bad = [w for w in res.witnesses if w["kind"] == "normal_partition"]
        assert not bad, bad[:3]
    report(6, True)


@pytest.mark.criterion(7, "strictly submodular heights realize every permutree fan at n = 4")
def test_criterion_7_submodular():
    res = suites.verify_submodular(4, seed=0, samples=20, weak=5)
    assert res.ok, res.witnesses[:3]
    assert res.summary["decorations"] == 256 and res.summary["weak_rejected"] == 5
    report(7, True, "(256 decorations x 20 heights, 5 weak rejected)")


@pytest.mark.criterion(8, "V/H agreement for n <= 5; records which facet constant agrees")
def test_criterion_8_vh_agreement():
    agree_k1 = agree_k2 = total = 0
    for n in range(1, 6):
        res = permutreehedron_sweep(n)
        bad = [w for w in res.witnesses if w["kind"] == "vh_disagreement"]
        assert not bad, bad[:3]
        total += res.summary["decorations"]
        agree_k1 += res.summary["agreement_constant_binom_k_plus_1"]
        agree_k2 += res.summary["agreement_constant_binom_k_plus_2"]
    assert agree_k1 == total
    print(f"facet constant C(|I|+1,2): {agree_k1}/{total} agree; C(|I|+2,2): {agree_k2}/{total} agree")
    report(8, True, f"(C(|I|+1,2) agrees on {agree_k1}/{total}, C(|I|+2,2) on {agree_k2}/{total})")


@pytest.mark.criterion(9, "kinematic polytopes: vertex count and rotation graph, n <= 5, 10 seeded u")
def test_criterion_9_kinematic():
    for n in range(2, 6):
        res = suites.verify_kinematic(n, seed=0, samples=10)
        assert res.ok, res.witnesses[:3]
    d = D("xdx")
    V = realizations.kinematic_polytope(d, [1, 1, 1])
    assert len(V) == 5
    assert nx.is_isomorphic(realizations.kinematic_graph(d, V), nx.cycle_graph(5))
    report(9, True)


@pytest.mark.criterion(10, "wall-crossing defect 0 for the deleted shard Sigma(1,4,{2,3})")
def test_criterion_10_pb_defect():
    assert realizations.wall_crossing_defect(4, 1, 4) == 0
    ideal = shards.remove_shards(4, [Shard(1, 4, frozenset({2, 3}))])
    cong = shards.congruence_classes(ideal)
    res = realizations.is_removahedral(cong)
    assert not res
    sets = realizations.pb_sets(4, 1, 4)
    witness = next(w for w in res.witnesses if w["kind"] == "wall_crossing")
    wc = witness["dependence"]
    assert wc.pair == {sets["I"], sets["J"]}
    assert {K for K, _ in wc.right} == {sets["K"], sets["L"]}
    assert witness["defect"] == 0
    report(10, True, f"({wc.describe()}, defect 0)")


@pytest.mark.criterion(11, "braid type cone facets are the pairs with |I - J| = |J - I| = 1, n <= 5")
def test_criterion_11_braid():
    for n in range(2, 6):
        res = suites.verify_braid(n)
        assert res.ok, res.witnesses[:3]
        assert res.summary["facets"] == comb(n, 2) * 2 ** (n - 2)
    report(11, True)
