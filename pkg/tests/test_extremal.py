import json
import random

import networkx as nx
import pytest

from chromthresh.extremal import (
    PartitionWitness,
    blow_up,
    build_extremal,
    extremal_properties,
    recognize_extremal,
    witness_problems,
    witness_relabeling,
)
from chromthresh.graph import Graph
from chromthresh.solvers import clique_number, find_coloring

from . import oracles

GRID = [(r, k) for r in range(2, 6) for k in range(1, 4)]


def shuffled(g, seed):
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    return g.relabel(perm)


def test_build_c5():
    g, w = build_extremal(2, 1)
    assert g == Graph.cycle(5)
    assert w.q_parts == () and all(len(p) == 1 for p in w.p_parts)


def test_build_three_one_counts():
    g, _ = build_extremal(3, 1)
    assert g.n == 8
    assert len(oracles.edge_set(g)) == 20
    assert {sum(g.has_edge(v, u) for u in range(8)) for v in range(8)} == {5}


def test_build_two_two_is_c5_blowup():
    g, _ = build_extremal(2, 2)
    assert g.n == 10 and set(g.degrees()) == {4}
    assert g == blow_up(Graph.cycle(5), [2] * 5)


@pytest.mark.parametrize("r, k", [(1, 1), (2, 0), (0, 3)])
def test_build_domain_errors(r, k):
    with pytest.raises(ValueError):
        build_extremal(r, k)


def test_layout_is_canonical():
    g, w = build_extremal(4, 2)
    assert w.p_parts[0] == {0, 1} and w.p_parts[4] == {8, 9}
    assert w.q_parts == (frozenset(range(10, 16)), frozenset(range(16, 22)))


@pytest.mark.parametrize("r, k", GRID)
def test_regular_and_witness_valid(r, k):
    g, w = build_extremal(r, k)
    assert set(g.degrees()) == {(3 * r - 4) * k}
    assert witness_problems(g, w) == []


@pytest.mark.parametrize("r, k", [(2, 1), (3, 1), (3, 2)])
def test_properties_solver_verified(r, k):
    props = extremal_properties(r, k)
    g, _ = build_extremal(r, k)
    assert props.n == g.n
    assert props.degree == min(g.degrees())
    assert props.clique_number == clique_number(g)
    assert find_coloring(g, props.chromatic_number - 1) is None
    assert find_coloring(g, props.chromatic_number) is not None


def test_properties_values():
    assert tuple(vars(extremal_properties(2, 1)).values()) == (5, 2, 2, 3)
    assert tuple(vars(extremal_properties(3, 1)).values()) == (8, 5, 3, 4)
    assert tuple(vars(extremal_properties(3, 2)).values()) == (16, 10, 3, 4)


def test_recognize_c5(c5):
    w = recognize_extremal(c5, 2)
    assert w is not None and w.ell == 1
    assert all(len(p) == 1 for p in w.p_parts)


def test_recognize_rejects_petersen(petersen):
    h, _ = build_extremal(2, 2)
    assert not nx.is_isomorphic(nx.Graph(list(oracles.edge_set(petersen))), nx.Graph(list(oracles.edge_set(h))))
    assert recognize_extremal(petersen, 2) is None


def test_recognize_relabeled_four_two():
    g, _ = build_extremal(4, 2)
    w = recognize_extremal(shuffled(g, 11), 4)
    assert w is not None and w.ell == 2


@pytest.mark.parametrize("r, k", GRID)
def test_recognize_grid_with_relabeling(r, k):
    g, _ = build_extremal(r, k)
    for seed in range(3):
        h = shuffled(g, seed)
        w = recognize_extremal(h, r)
        assert w is not None and witness_problems(h, w) == []
        # blowing the witness back up reproduces the graph
        assert h.relabel(witness_relabeling(w)) == g


def test_recognize_needs_divisibility():
    for n in range(3, 20):
        if n % 5:
            assert recognize_extremal(Graph.cycle(n), 2) is None
    g, _ = build_extremal(3, 1)
    assert recognize_extremal(g, 2) is None  # 8 is not a multiple of 5


@pytest.mark.parametrize("r, k", [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)])
def test_single_edge_perturbations_break_recognition(r, k):
    g, _ = build_extremal(r, k)
    for u, v in g.edges():
        assert recognize_extremal(g.without_edge(u, v), r) is None
    for u, v in g.non_edges():
        assert recognize_extremal(g.with_edge(u, v), r) is None


def test_witness_json_round_trip():
    g, w = build_extremal(3, 2)
    data = json.loads(w.dumps())
    assert set(data) == {"r", "ell", "P", "Q"}
    assert len(data["P"]) == 5 and len(data["Q"]) == 1
    assert PartitionWitness.from_json(data) == w


def test_witness_problems_detects_bad_sizes():
    g, w = build_extremal(2, 2)
    bad = PartitionWitness(w.p_parts, w.q_parts, 2, 3)
    assert witness_problems(g, bad)
