from fractions import Fraction
from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import decorations
from removahedra import permutrees, shards
from removahedra.decoration import Decoration
from removahedra.permutrees import Permutree


def tree(d, edges):
    return Permutree(Decoration(d), frozenset(edges))


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def test_validation_examples():
    assert permutrees.validate(tree("ooo", [(2, 3), (3, 1)]))
    assert permutrees.validate(tree("ddd", [(1, 2), (2, 3)]))
    bad = permutrees.validate(tree("odo", [(1, 3), (3, 2)]))
    assert not bad and bad.problems


def test_cuts_and_extensions():
    assert permutrees.edge_cuts(tree("ooo", [(2, 3), (3, 1)])) == {frozenset({2}), frozenset({2, 3})}
    assert permutrees.edge_cuts(tree("ddd", [(1, 2), (2, 3)])) == {frozenset({1}), frozenset({1, 2})}
    chain = tree("oooo", [(1, 2), (2, 3), (3, 4)])
    assert permutrees.edge_cuts(chain) == {frozenset(range(1, k + 1)) for k in range(1, 4)}
    assert permutrees.linear_extensions(tree("ddd", [(1, 2), (3, 2)])) == {(1, 3, 2), (3, 1, 2)}
    assert permutrees.linear_extensions(tree("ooo", [(2, 3), (3, 1)])) == {(2, 3, 1)}


def test_enumeration_counts():
    assert len(permutrees.enumerate_permutrees(Decoration("ooo"))) == 6
    assert len(permutrees.enumerate_permutrees(Decoration("ddd"))) == 5
    assert len(permutrees.enumerate_permutrees(Decoration("xxx"))) == 4
    for n in range(1, 6):
        assert len(permutrees.enumerate_permutrees(Decoration("d" * n))) == catalan(n)
        assert len(permutrees.enumerate_permutrees(Decoration("x" * n))) == 2 ** (n - 1)


def test_two_node_rotation():
    t = tree("oo", [(1, 2)])
    assert permutrees.rotate(t, (1, 2)).edges == {(2, 1)}
    with pytest.raises(KeyError):
        permutrees.rotate(t, (2, 1))


def test_tamari_pentagon():
    lat = permutrees.rotation_lattice(Decoration("ddd"))
    g = lat.graph()
    assert len(lat.trees) == 5 and lat.is_lattice
    assert nx.is_isomorphic(g, nx.cycle_graph(5))


def test_boolean_lattice():
    lat = permutrees.rotation_lattice(Decoration("xxxx"))
    assert nx.is_isomorphic(lat.graph(), nx.hypercube_graph(3))


def test_weak_order_lattice():
    lat = permutrees.rotation_lattice(Decoration("oooo"))
    assert len(lat.trees) == 24 and len(lat.arcs) == 36


def test_vertex_examples():
    assert permutrees.vertex_coordinates(tree("ddd", [(1, 2), (2, 3)])) == (1, 2, 3)
    chain = tree("ooo", [(2, 3), (3, 1)])
    # sigma = 231 sits at sum k e_{sigma_k}
    assert permutrees.vertex_coordinates(chain) == (Fraction(3), Fraction(1), Fraction(2))


def test_json_roundtrip():
    t = tree("oxuo", [(1, 2), (2, 4), (3, 2)])
    assert Permutree.from_json(t.to_json()) == t
    assert t.to_json()["decoration"] == "oxuo"


@given(decorations(max_size=5))
def test_trees_match_congruence_classes(d):
    trees = permutrees.enumerate_permutrees(d)
    cong = shards.congruence_classes(shards.permutree_ideal(d))
    assert sorted(tuple(sorted(permutrees.linear_extensions(t))) for t in trees) == sorted(cong.classes)
    for t in trees:
        assert permutrees.validate(t, d)


@given(decorations(max_size=5), st.data())
def test_rotation_is_involution(d, data):
    trees = permutrees.enumerate_permutrees(d)
    t = data.draw(st.sampled_from(trees))
    if not t.edges:
        return
    i, j = data.draw(st.sampled_from(sorted(t.edges)))
    s = permutrees.rotate(t, (i, j))
    assert permutrees.validate(s, d)
    assert permutrees.rotate(s, (j, i)) == t
    assert len(permutrees.edge_cuts(t) ^ permutrees.edge_cuts(s)) == 2


@given(decorations(max_size=5))
def test_vertices_distinct_and_on_hyperplane(d):
    pts = [permutrees.vertex_coordinates(t) for t in permutrees.enumerate_permutrees(d)]
    assert len(set(pts)) == len(pts)
    assert all(sum(p) == comb(d.n + 1, 2) for p in pts)


@given(st.integers(1, 6))
def test_loday_specialisation(n):
    d = Decoration("d" * n)
    for t in permutrees.enumerate_permutrees(d):
        assert permutrees.vertex_coordinates(t) == permutrees.loday_coordinates(t)


@given(decorations(max_size=4))
def test_brute_force_trees(d):
    brute = {e for e in permutrees.all_oriented_trees(d.n) if permutrees.validate(Permutree(d, e))}
    assert brute == {t.edges for t in permutrees.enumerate_permutrees(d)}
