import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chromthresh.extremal import build_extremal
from chromthresh.graph import Graph, is_clique
from chromthresh.solvers import chromatic_number, clique_number, find_clique_of_size, find_coloring, max_clique

from . import oracles
from .test_graph import graphs


def assert_proper(g, col, c):
    assert len(col.assignment) == g.n
    assert all(1 <= k <= c for k in col.assignment)
    assert all(col.assignment[u] != col.assignment[v] for u, v in g.edges())


def test_clique_examples(k4, c5):
    assert find_clique_of_size(k4, 4) == {0, 1, 2, 3}
    assert find_clique_of_size(c5, 3) is None
    h, _ = build_extremal(3, 1)
    assert find_clique_of_size(h, 4) is None and not oracles.has_clique(h, 4)
    tri = find_clique_of_size(h, 3)
    assert len(tri) == 3 and is_clique(h, tri)
    with pytest.raises(ValueError):
        find_clique_of_size(k4, 0)


def test_clique_within():
    g = Graph.complete(6)
    assert find_clique_of_size(g, 3, within=[1, 4]) is None
    assert find_clique_of_size(g, 2, within=[1, 4]) == {1, 4}


def test_coloring_examples(c5, k23):
    assert find_coloring(c5, 2) is None
    assert_proper(c5, find_coloring(c5, 3), 3)
    col = find_coloring(k23, 2)
    assert_proper(k23, col, 2)
    sides = {frozenset(p) for p in col.classes()}
    assert sides == {frozenset({0, 1}), frozenset({2, 3, 4})}
    h, _ = build_extremal(3, 1)
    assert find_coloring(h, 3) is None and not oracles.colorable(h, 3)
    assert_proper(h, find_coloring(h, 4), 4)


def test_coloring_symmetry_breaking():
    col = find_coloring(Graph.complete(4), 4)
    assert col.assignment[0] == 1
    assert list(col.assignment) == [1, 2, 3, 4]


def test_max_clique_examples(c5, k4):
    assert len(max_clique(c5)) == 2 and is_clique(c5, max_clique(c5))
    assert max_clique(k4) == {0, 1, 2, 3}
    h, _ = build_extremal(4, 1)
    assert len(max_clique(h)) == 4 == oracles.clique_number(h)
    with pytest.raises(ValueError):
        max_clique(Graph.empty(0))


@given(graphs(max_n=7), st.integers(1, 5))
@settings(max_examples=250, deadline=None)
def test_clique_search_complete_vs_brute_force(g, t):
    found = find_clique_of_size(g, t)
    assert (found is not None) == oracles.has_clique(g, t)
    if found is not None:
        assert len(found) == t and is_clique(g, found)


@given(graphs(max_n=7), st.integers(1, 4))
@settings(max_examples=250, deadline=None)
def test_coloring_complete_vs_brute_force(g, c):
    col = find_coloring(g, c)
    assert (col is not None) == oracles.colorable(g, c)
    if col is not None:
        assert_proper(g, col, c)
        # monotone in the palette size
        assert find_coloring(g, c + 1) is not None


@given(graphs(max_n=8))
@settings(max_examples=150, deadline=None)
def test_max_clique_vs_brute_force(g):
    mc = max_clique(g)
    assert is_clique(g, mc)
    assert len(mc) == oracles.clique_number(g) == clique_number(g)


def test_chromatic_number_random_medium():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(8, 14)
        g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.5])
        chi = chromatic_number(g)
        assert_proper(g, find_coloring(g, chi), chi)
        assert find_coloring(g, chi - 1) is None
