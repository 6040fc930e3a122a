import pytest

from chromthresh.certifier import certify
from chromthresh.graph import Graph, ThresholdMode, min_degree, required_degree
from chromthresh.harness import CampaignReport, UsageError, enumerate_labeled, exhaustive, stress

from . import oracles


@pytest.mark.parametrize("min_deg", [0, 1, 2, 3])
def test_pruning_is_sound_at_five(min_deg):
    pruned = set(enumerate_labeled(5, min_deg))
    unpruned = set(enumerate_labeled(5, min_deg, prune=False))
    brute = {Graph.from_edges(5, e) for e in oracles.all_graphs(5)}
    assert pruned == unpruned == {g for g in brute if min_degree(g) >= min_deg}


def test_enumerate_counts_everything_without_a_bound():
    assert sum(1 for _ in enumerate_labeled(4)) == 2 ** 6


def test_exhaustive_five_tight():
    report = exhaustive(2, 5, ThresholdMode.TIGHT)
    assert report.ok
    assert report.tallies["extremal"] == 12
    assert sum(report.tallies.values()) == report.graphs_examined


def test_five_tight_extremal_graphs_are_the_labeled_c5s():
    found = set()
    for g in enumerate_labeled(5, required_degree(5, 2, ThresholdMode.TIGHT)):
        if certify(g, 2, ThresholdMode.TIGHT).to_json()["type"] == "extremal":
            found.add(frozenset(frozenset(e) for e in g.edges()))
    assert found == oracles.labeled_five_cycles()
    assert len(found) == 12


def test_exhaustive_six_has_no_extremal():
    report = exhaustive(2, 6, ThresholdMode.TIGHT)
    assert report.ok and report.tallies["extremal"] == 0


@pytest.mark.parametrize("n", [5, 6])
def test_strict_exhaustive_small(n):
    report = exhaustive(2, n, "strict")
    assert report.ok and report.tallies["extremal"] == 0


def test_exhaustive_guards():
    with pytest.raises(UsageError):
        exhaustive(2, 8, ThresholdMode.TIGHT)
    with pytest.raises(UsageError):
        exhaustive(3, 5, ThresholdMode.TIGHT)
    with pytest.raises(UsageError):
        exhaustive(2, 9, ThresholdMode.TIGHT, allow_slow=True)


def test_stress_zero_trials():
    report = stress(3, 0, 1)
    assert report.ok and report.graphs_examined == 0


def test_stress_deterministic():
    a = stress(3, 150, 7)
    b = stress(3, 150, 7)
    assert a.dumps() == b.dumps()
    assert a.ok
    assert a.graphs_examined == 150 == sum(a.tallies.values())
    assert stress(3, 150, 8).dumps() != a.dumps()


def test_stress_perturbed_extremal_all_cliques():
    report = stress(3, 60, 2, perturb_extremal=True)
    assert report.ok and report.tallies["clique"] == 60


def test_report_merge_is_order_insensitive():
    parts = [stress(2, 40, s) for s in range(3)]
    ab_c = parts[0].merge(parts[1]).merge(parts[2])
    c_ba = parts[2].merge(parts[1].merge(parts[0]))
    assert ab_c.to_json()["tallies"] == c_ba.to_json()["tallies"]
    assert ab_c.graphs_examined == c_ba.graphs_examined == 120
    assert ab_c.failures == c_ba.failures


def test_report_failure_bookkeeping():
    report = CampaignReport(parameters={})
    report.record("coloring")
    report.fail(Graph.cycle(5), "synthetic")
    assert not report.ok
    assert report.to_json()["tallies"]["failure"] == 1
    assert report.failures == [{"graph6": "Dhc", "reason": "synthetic"}]
