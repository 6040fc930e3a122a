"""Exhaustive and randomised verification campaigns."""

from __future__ import annotations

import json
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .certifier import InternalInconsistency, ThresholdNotMet, certify
from .extremal import build_extremal
from .graph import Graph, ThresholdMode, format_graph6, popcount, required_degree
from .proof import CliqueFound, CompleteMultipartite, ExtremalExtracted, run_refutation, saturate
from .solvers import find_clique_of_size
from .verify import configuration_problems, verify_certificate

DEFAULT_CEILING = 7
SLOW_CEILING = 8
EDGE_PROBABILITIES = (0.3, 0.5, 0.7)

OUTCOMES = ("clique", "coloring", "extremal", "below_threshold", "failure")


class UsageError(ValueError):
    pass


@dataclass
class CampaignReport:
    parameters: dict
    graphs_examined: int = 0
    tallies: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    wall_time: Optional[float] = None

    def record(self, outcome: str) -> None:
        self.graphs_examined += 1
        self.tallies[outcome] += 1

    def fail(self, g: Graph, reason: str) -> None:
        self.record("failure")
        self.failures.append({"graph6": format_graph6(g), "reason": reason})

    def merge(self, other: "CampaignReport") -> "CampaignReport":
        failures = sorted(self.failures + other.failures, key=lambda f: (f["graph6"], f["reason"]))
        wall = None
        if self.wall_time is not None or other.wall_time is not None:
            wall = (self.wall_time or 0.0) + (other.wall_time or 0.0)
        return CampaignReport(
            parameters=dict(self.parameters),
            graphs_examined=self.graphs_examined + other.graphs_examined,
            tallies=self.tallies + other.tallies,
            failures=failures,
            wall_time=wall,
        )

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = {
            "parameters": self.parameters,
            "graphs_examined": self.graphs_examined,
            "tallies": {k: self.tallies.get(k, 0) for k in OUTCOMES},
            "failures": self.failures,
        }
        if self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def enumerate_labeled(n: int, min_deg: int = 0, prune: bool = True) -> Iterator[Graph]:
    """All labelled graphs on ``n`` vertices with minimum degree >= ``min_deg``.

    Rows are fixed in vertex order; row ``i`` picks the neighbours of ``i``
    among ``i+1..n-1``.  With ``prune`` a prefix is dropped as soon as a
    finished vertex is below ``min_deg`` or an unfinished one can no longer
    reach it.  Without it every one of the 2^(n(n-1)/2) graphs is generated
    and filtered at the end.
    """
    if n == 0:
        yield Graph(0, [])
        return
    rows = [0] * n

    def choices(i: int) -> list[int]:
        later = list(range(i + 1, n))
        out = []
        for size in range(len(later) + 1):
            for combo in combinations(later, size):
                m = 0
                for v in combo:
                    m |= 1 << v
                out.append(m)
        return out

    table = [choices(i) for i in range(n)]

    def rec(i: int) -> Iterator[Graph]:
        if i == n:
            if prune or all(popcount(r) >= min_deg for r in rows):
                yield Graph(n, rows)
            return
        for m in table[i]:
            rows[i] |= m
            for v in range(i + 1, n):
                if m >> v & 1:
                    rows[v] |= 1 << i
            good = True
            if prune:
                if popcount(rows[i]) < min_deg:
                    good = False
                else:
                    slack = n - 2 - i  # pairs still open for each later vertex
                    for v in range(i + 1, n):
                        if popcount(rows[v]) + slack < min_deg:
                            good = False
                            break
            if good:
                yield from rec(i + 1)
            for v in range(i + 1, n):
                if m >> v & 1:
                    rows[v] &= ~(1 << i)
            rows[i] &= ~m

    yield from rec(0)


def _classify(g: Graph, r: int, mode: ThresholdMode) -> tuple[str, Optional[str]]:
    """Certify ``g`` and check the result: (outcome, failure reason or None)."""
    try:
        cert = certify(g, r, mode)
    except ThresholdNotMet:
        return "below_threshold", None
    except InternalInconsistency as exc:
        return "failure", f"internal inconsistency: {exc}"
    kind = cert.to_json()["type"]
    if not verify_certificate(g, r, cert):
        return kind, f"{kind} certificate does not verify"
    if kind == "extremal" and mode is ThresholdMode.STRICT:
        return kind, "extremal certificate under the strict threshold"
    return kind, None


def _tally(report: CampaignReport, g: Graph, outcome: str, reason: Optional[str]) -> None:
    if reason:
        report.fail(g, reason)
    else:
        report.record(outcome)


def exhaustive(r: int, n: int, mode: ThresholdMode, allow_slow: bool = False, timing: bool = False) -> CampaignReport:
    mode = ThresholdMode.parse(mode)
    if r < 2:
        raise UsageError("r must be at least 2")
    if r != 2 and not allow_slow:
        raise UsageError("exhaustive campaigns for r != 2 need --allow-slow")
    ceiling = SLOW_CEILING if allow_slow else DEFAULT_CEILING
    if not 1 <= n <= ceiling:
        raise UsageError(f"n={n} outside 1..{ceiling}" + ("" if allow_slow else " (use --allow-slow for 8)"))
    start = time.perf_counter()
    report = CampaignReport(parameters={"campaign": "exhaustive", "r": r, "n": n, "mode": mode.value})
    for g in enumerate_labeled(n, required_degree(n, r, mode)):
        _tally(report, g, *_classify(g, r, mode))
    if timing:
        report.wall_time = time.perf_counter() - start
    return report


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def _check_trace(subject: Graph, r: int, mode: ThresholdMode, kind: str) -> Optional[str]:
    trace = run_refutation(subject, r, mode)
    out = trace.outcome
    expected = {"clique": CliqueFound, "coloring": CompleteMultipartite, "extremal": ExtremalExtracted}[kind]
    if not isinstance(out, expected):
        return f"trace ended in {out.tag} but certificate is {kind}"
    sat, _ = (subject, None) if isinstance(out, CliqueFound) else saturate(subject, r)
    for cfg in trace.configurations():
        problems = configuration_problems(sat, cfg)
        if problems:
            return "trace configuration invalid: " + ", ".join(problems)
    boosts = [s.config.intensity for s in trace.steps if s.tag == "Boost"]
    if any(nxt <= prev for prev, nxt in zip(boosts, boosts[1:])) or any(b > r - 1 for b in boosts):
        return "boost intensities not strictly increasing"
    return None


def stress_subjects(
    r: int, trials: int, seed: int, n_min: int = 4, n_max: int = 12, perturb_extremal: bool = False
) -> Iterator[Graph]:
    """The seeded graph sequence a stress campaign examines.

    Each trial draws an Erdos-Renyi graph (p from 0.3/0.5/0.7) and saturates
    it unless it already has a K_{r+1}.  With ``perturb_extremal`` each
    subject is H(r, k), k in {1, 2}, plus one random non-edge.
    """
    rng = random.Random(seed)
    for _ in range(trials):
        if perturb_extremal:
            g, _w = build_extremal(r, rng.choice((1, 2)))
            u, v = rng.choice(g.non_edges())
            yield g.with_edge(u, v)
        else:
            n = rng.randint(n_min, n_max)
            raw = random_graph(rng, n, rng.choice(EDGE_PROBABILITIES))
            yield raw if find_clique_of_size(raw, r + 1) else saturate(raw, r)[0]


def stress(
    r: int,
    trials: int,
    seed: int,
    n_min: int = 4,
    n_max: int = 12,
    mode: ThresholdMode = ThresholdMode.TIGHT,
    perturb_extremal: bool = False,
    timing: bool = False,
) -> CampaignReport:
    """Certify and trace every threshold-meeting subject from ``stress_subjects``.

    Perturbed extremal subjects must come out as cliques.
    """
    mode = ThresholdMode.parse(mode)
    if r < 2:
        raise UsageError("r must be at least 2")
    if trials < 0 or not 1 <= n_min <= n_max:
        raise UsageError("need trials >= 0 and 1 <= n_min <= n_max")
    start = time.perf_counter()
    params = {"campaign": "stress", "r": r, "trials": trials, "seed": seed, "mode": mode.value,
              "n_min": n_min, "n_max": n_max, "perturb_extremal": perturb_extremal}
    report = CampaignReport(parameters=params)
    for subject in stress_subjects(r, trials, seed, n_min, n_max, perturb_extremal):
        kind, reason = _classify(subject, r, mode)
        if reason is None and kind in ("clique", "coloring", "extremal"):
            if perturb_extremal and kind != "clique":
                reason = f"perturbed extremal graph certified as {kind}, expected clique"
            else:
                reason = _check_trace(subject, r, mode, kind)
        _tally(report, subject, kind, reason)
    if timing:
        report.wall_time = time.perf_counter() - start
    return report
