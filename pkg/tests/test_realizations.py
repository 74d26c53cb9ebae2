import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import decorations
from removahedra import permutrees, polyhedra, realizations, shards, typecone, weakorder
from removahedra.decoration import Decoration
from removahedra.shards import Shard

D = Decoration


def test_removahedron_of_all_rays_is_perm():
    H = realizations.removahedron(4, list(weakorder.proper_subsets(4)))
    assert len(polyhedra.vertices(H)) == 24


def test_removahedral_examples():
    assert realizations.is_removahedral(shards.congruence_classes(shards.sylvester_ideal(4)))
    pb = shards.congruence_classes(shards.remove_shards(4, [Shard(1, 4, frozenset({2, 3}))]))
    res = realizations.is_removahedral(pb)
    assert not res and res.witnesses[0]["defect"] == 0
    res = realizations.is_removahedral(shards.congruence_classes(shards.remove_shards(4, [Shard(1, 4, frozenset({2}))])))
    assert not res
    with pytest.raises(realizations.NotEssential):
        realizations.is_removahedral(shards.congruence_classes(shards.ShardIdeal(3, frozenset())))


def test_wall_crossing_defect_values():
    assert realizations.wall_crossing_defect(4, 1, 4) == 0
    assert realizations.wall_crossing_defect(5, 1, 4) == -5
    assert realizations.wall_crossing_defect(5, 2, 5) == -5
    with pytest.raises(ValueError):
        realizations.wall_crossing_defect(4, 1, 3)


@given(st.integers(4, 9), st.data())
def test_wall_crossing_defect_closed_form(n, data):
    i = data.draw(st.integers(1, n - 3))
    j = data.draw(st.integers(i + 3, n))
    value = realizations.wall_crossing_defect(n, i, j)
    assert (value == 0) == (i == 1 and j == n)
    assert value <= 0


@given(st.integers(4, 6), st.data())
def test_mirror_is_an_involution(n, data):
    s = data.draw(st.sampled_from(shards.all_shards(n)))
    assert realizations.mirror_shard(realizations.mirror_shard(s)) == s
    assert realizations.mirror_shard(s).is_up == s.is_down


def test_mirror_maps_permutree_ideals():
    for d in Decoration.all(4):
        e = D(d.letters.translate(str.maketrans("du", "ud")))
        assert realizations.mirror_ideal(shards.permutree_ideal(d)) == shards.permutree_ideal(e)


def test_generator_lemmas_n4():
    checked = 0
    for ideal in shards.upper_ideals(4):
        if not ideal.essential or not isinstance(shards.ideal_decoration(ideal), shards.NotPermutree):
            continue
        cong = shards.congruence_classes(ideal)
        for g in shards.lower_generators(ideal):
            if g.length > 2 and (g.is_up or g.is_down):
                res = realizations.check_generator_lemmas(cong, g)
                assert res.all_rays and res.adjacent and res.defect <= 0
                checked += 1
    assert checked > 0


@pytest.mark.parametrize("word, count", [("oooo", 24), ("dddd", 14), ("xxxx", 8), ("oxuo", 10), ("oodo", 18)])
def test_permutreehedra(word, count):
    d = D(word)
    V, H = realizations.permutreehedron(d)
    assert len(V) == count
    W = polyhedra.vertices(H)
    assert W.point_set == V.point_set
    classes = polyhedra.partition_classes(polyhedra.normal_partition(H, W))
    assert classes == shards.congruence_classes(shards.permutree_ideal(d)).classes


def test_updown_is_parallelepiped():
    d = D("xxxx")
    V, _ = realizations.permutreehedron(d)
    edges = set()
    g = realizations.hull_graph(d)
    pts = list(polyhedra.vertices(realizations.permutreehedron(d)[1]).vertices)
    for a, b in g.edges:
        diff = tuple(x - y for x, y in zip(pts[a], pts[b]))
        k = next(i for i, x in enumerate(diff) if x)
        edges.add(tuple(x / diff[k] for x in diff))
    assert edges == {tuple(Fraction(int(c == i)) - Fraction(int(c == i + 1)) for c in range(4)) for i in range(3)}


def test_shifted_constant_is_empty():
    agreement = realizations.vh_agreement(D("oodo"), "shifted")
    assert not agreement.agrees
    assert realizations.vh_agreement(D("oodo"), "perm").agrees


@given(decorations(max_size=4))
def test_vh_agreement(d):
    assert realizations.vh_agreement(d).agrees


@given(decorations(max_size=4), st.integers(0, 10**6))
def test_strict_submodular_realizes(d, seed):
    h = realizations.random_strictly_submodular(d.n, random.Random(seed))
    assert realizations.realize_from_submodular(d, h)


def test_weak_submodular_rejected():
    for h in realizations.weakly_submodular_examples(4, 5, random.Random(0)):
        with pytest.raises(realizations.NotStrictlySubmodular):
            realizations.realize_from_submodular(D("oooo"), h)


def test_perturbed_perm_heights_realize():
    d = D("oxuo")
    rng = random.Random(3)
    g = realizations.random_strictly_submodular(4, rng)
    base = polyhedra.perm_heights(4)
    h = polyhedra.HeightFunction(4, {k: v + Fraction(1, 10) * g(k) for k, v in base.values.items()})
    assert realizations.realize_from_submodular(d, h)


def test_kinematic_cube():
    coords, pairs, K = realizations.kinematic_system(D("xxx"))
    assert pairs == [(1, 2), (2, 3)]
    idx = {c: k for k, c in enumerate(coords)}
    for row, (p, q) in zip(K, pairs):
        assert row[idx[(0, p, q, 1)]] == 1 and row[idx[(1, p, q, 0)]] == 1
        assert sum(abs(x) for x in row) == 2


def test_kinematic_pentagon():
    d = D("xdx")
    V = realizations.kinematic_polytope(d, [1, 1, 1])
    assert len(V) == 5
    assert nx.is_isomorphic(realizations.kinematic_graph(d, V), nx.cycle_graph(5))
    assert realizations.kinematic_polytope(d, [2, 2, 2]).point_set == V.scaled(2).point_set


@pytest.mark.parametrize("word", ["xxx", "xdx", "xddx", "xudx", "xdxdx"])
def test_kinematic_rows_are_type_cone_rows(word):
    d = D(word)
    coords, pairs, K = realizations.kinematic_system(d)
    rays, facets, rows = realizations.typecone_system(d)
    where = {realizations.kinematic_subset(d, c): k for k, c in enumerate(coords)}
    assert set(where) == set(rays)
    moved = [[row[where[R]] for R in rays] for row in K]
    assert moved == rows
    assert [(f.i, f.j) for f in facets] == pairs


def test_kinematic_rejects_bad_input():
    with pytest.raises(ValueError):
        realizations.kinematic_system(D("odx"))
    with pytest.raises(ValueError):
        realizations.kinematic_polytope(D("xdx"), [1, 0, 1])


@pytest.mark.parametrize("word", ["xdx", "xxx", "xdux", "xddx", "xudx"])
def test_kinematic_matches_type_cone(word):
    d = D(word)
    rng = random.Random(word)
    trees = permutrees.enumerate_permutrees(d)
    coords, pairs, K = realizations.kinematic_system(d)
    assert len(coords) == typecone.rho(d) and len(K) == typecone.phi(d)
    u = realizations.random_positive(len(K), rng)
    V = realizations.kinematic_polytope(d, u)
    assert len(V) == len(trees)
    assert nx.is_isomorphic(realizations.kinematic_graph(d, V), realizations.rotation_graph(d))
    Q = realizations.simplicial_q_polytope(d, u)
    assert len(Q) == len(trees)
    assert nx.is_isomorphic(polyhedra.orthant_graph(realizations.typecone_system(d)[2], list(Q.vertices)),
                            realizations.kinematic_graph(d, V))


def test_simplicial_q_polytope_rejects_non_simplicial():
    with pytest.raises(ValueError):
        realizations.simplicial_q_polytope(D("oodo"), [1] * 12)
