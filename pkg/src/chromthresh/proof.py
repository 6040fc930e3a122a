"""The refutation argument run as a deterministic, traceable procedure.

Pipeline: saturate to an edge-maximal K_{r+1}-free supergraph, pick a bad
triple, build a configuration (A, B, C; x, y, z), then repeatedly find a
heavy vertex and absorb it into B.  Every run ends in a clique, a complete
multipartite graph, an extracted H(r, l) partition, or a named broken
precondition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Union

from .extremal import PartitionWitness, witness_problems
from .graph import (
    Graph,
    ThresholdMode,
    bits,
    complete_multipartite_parts,
    find_bad_triple,
    meets_threshold,
    min_degree,
    popcount,
    threshold_formula,
    to_mask,
)
from .solvers import find_clique_of_size

HEAVY_VERTEX_MISSING = "heavy vertex missing"


class PreconditionError(Exception):
    """An input violated what a proof step requires; the message names the check."""


@dataclass(frozen=True)
class Configuration:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    x: int
    y: int
    z: int
    r: int

    @property
    def intensity(self) -> int:
        return len(self.B)

    @property
    def members(self) -> frozenset[int]:
        return self.A | self.B | self.C | {self.x, self.y, self.z}

    def to_json(self) -> dict:
        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "C": sorted(self.C),
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "r": self.r,
            "intensity": self.intensity,
        }


@dataclass(frozen=True)
class WeightAssignment:
    w: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.w)

    def weight_sum(self, g: Graph, u: int) -> int:
        return sum(self.w[v] for v in bits(g.rows[u]))


@dataclass(frozen=True)
class DegreeEstimate:
    """Integer form of the weighted degree count.

    ``lhs`` = (2r+k+1)*delta bounds the total neighbour weight from below and
    ``rhs`` = (2r+k-2)*n is what it must exceed to force a heavy vertex.  The
    ``coeff_*`` fields compare (2r+k+1)(3r-4) against (2r+k-2)(3r-1), the
    parameter-only inequality that links the two.
    """

    lhs: int
    rhs: int
    strict_ok: bool
    tight_ok: bool
    coeff_lhs: int
    coeff_rhs: int

    @property
    def coeff_equal(self) -> bool:
        return self.coeff_lhs == self.coeff_rhs


# --- trace steps -----------------------------------------------------------


@dataclass(frozen=True)
class EdgeAdded:
    tag: ClassVar[str] = "EdgeAdded"
    u: int
    v: int

    def to_json(self) -> dict:
        return {"step": self.tag, "u": self.u, "v": self.v}


@dataclass(frozen=True)
class BadTriple:
    tag: ClassVar[str] = "BadTriple"
    x: int
    y: int
    z: int

    def to_json(self) -> dict:
        return {"step": self.tag, "x": self.x, "y": self.y, "z": self.z}


@dataclass(frozen=True)
class InitialConfig:
    tag: ClassVar[str] = "InitialConfig"
    config: Configuration

    def to_json(self) -> dict:
        return {"step": self.tag, "config": self.config.to_json()}


@dataclass(frozen=True)
class HeavyVertex:
    tag: ClassVar[str] = "HeavyVertex"
    u: int
    weight_sum: int

    def to_json(self) -> dict:
        return {"step": self.tag, "u": self.u, "weight_sum": self.weight_sum}


@dataclass(frozen=True)
class Boost:
    tag: ClassVar[str] = "Boost"
    config: Configuration
    removed_a: int
    removed_c: int

    def to_json(self) -> dict:
        return {"step": self.tag, "config": self.config.to_json(), "removed_a": self.removed_a, "removed_c": self.removed_c}


@dataclass(frozen=True)
class TightCase:
    tag: ClassVar[str] = "TightCase"
    config: Configuration

    def to_json(self) -> dict:
        return {"step": self.tag, "config": self.config.to_json()}


@dataclass(frozen=True)
class CliqueFound:
    tag: ClassVar[str] = "CliqueFound"
    clique: frozenset[int]

    def to_json(self) -> dict:
        return {"step": "Outcome", "outcome": self.tag, "clique": sorted(self.clique)}


@dataclass(frozen=True)
class CompleteMultipartite:
    tag: ClassVar[str] = "CompleteMultipartite"
    parts: tuple[frozenset[int], ...]

    def to_json(self) -> dict:
        return {"step": "Outcome", "outcome": self.tag, "parts": [sorted(p) for p in self.parts]}


@dataclass(frozen=True)
class ExtremalExtracted:
    tag: ClassVar[str] = "ExtremalExtracted"
    witness: PartitionWitness

    def to_json(self) -> dict:
        return {"step": "Outcome", "outcome": self.tag, "witness": self.witness.to_json()}


@dataclass(frozen=True)
class PreconditionBroken:
    tag: ClassVar[str] = "PreconditionBroken"
    description: str

    def to_json(self) -> dict:
        return {"step": "Outcome", "outcome": self.tag, "description": self.description}


Outcome = Union[CliqueFound, CompleteMultipartite, ExtremalExtracted, PreconditionBroken]
Step = Union[EdgeAdded, BadTriple, InitialConfig, HeavyVertex, Boost, TightCase, Outcome]


@dataclass
class ProofTrace:
    steps: list = field(default_factory=list)

    @property
    def outcome(self) -> Outcome:
        return self.steps[-1]

    def configurations(self) -> list[Configuration]:
        return [s.config for s in self.steps if isinstance(s, (InitialConfig, Boost, TightCase))]

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def dumps(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_json(), indent=indent, sort_keys=True)


# --- helpers ---------------------------------------------------------------


def _least_clique(rows, cand: int, t: int) -> int:
    """Lexicographically least t-clique inside ``cand`` as a mask, or 0."""
    if t == 0:
        return 0
    found = [0]

    def dfs(chosen: int, size: int, cand: int) -> bool:
        if size == t:
            found[0] = chosen
            return True
        while cand and popcount(cand) >= t - size:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if dfs(chosen | low, size + 1, cand & rows[v]):
                return True
        return False

    dfs(0, 0, cand)
    return found[0]


def _has_clique(rows, cand: int, t: int) -> bool:
    return t == 0 or bool(_least_clique(rows, cand, t))


def _config_problems(g: Graph, cfg: Configuration) -> list[str]:
    rows = g.rows
    a, b, c = to_mask(cfg.A), to_mask(cfg.B), to_mask(cfg.C)
    anchors = [cfg.x, cfg.y, cfg.z]
    out = []
    if len(set(anchors)) != 3:
        out.append("anchors not distinct")
    amask = to_mask(anchors)
    if a & b or a & c or b & c or (a | b | c) & amask:
        out.append("sets overlap")
    k = popcount(b)
    if popcount(a) != cfg.r - 1 - k or popcount(c) != cfg.r - 1 - k:
        out.append("|A| or |C| differs from r-1-|B|")
    for name, m in (("A", a), ("B", b), ("C", c)):
        if any(m & ~rows[v] != 1 << v for v in bits(m)):
            out.append(f"{name} is not a clique")
    everything = a | b | c | amask
    if any(everything & ~rows[v] != 1 << v for v in bits(b)):
        out.append("a B vertex misses part of the configuration")
    xy = (1 << cfg.x) | (1 << cfg.y)
    xz = (1 << cfg.x) | (1 << cfg.z)
    if any(rows[v] & xy != xy for v in bits(a)):
        out.append("an A vertex misses x or y")
    if any(rows[v] & xz != xz for v in bits(c)):
        out.append("a C vertex misses x or z")
    if g.has_edge(cfg.x, cfg.y) or g.has_edge(cfg.x, cfg.z) or not g.has_edge(cfg.y, cfg.z):
        out.append("anchors do not form a bad triple")
    return out


# --- proof steps -----------------------------------------------------------


def saturate(g: Graph, r: int) -> tuple[Graph, list[tuple[int, int]]]:
    """Add non-edges in lexicographic passes while no K_{r+1} appears."""
    if find_clique_of_size(g, r + 1) is not None:
        raise ValueError(f"input already contains K_{r + 1}")
    rows = list(g.rows)
    added = []
    changed = True
    while changed:
        changed = False
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if rows[u] >> v & 1:
                    continue
                if _has_clique(rows, rows[u] & rows[v], r - 1):
                    continue
                rows[u] |= 1 << v
                rows[v] |= 1 << u
                added.append((u, v))
                changed = True
    return Graph(g.n, rows), added


def initial_configuration(g: Graph, r: int, x: int, y: int, z: int) -> Configuration:
    if g.has_edge(x, y) or g.has_edge(x, z) or not g.has_edge(y, z):
        raise PreconditionError(f"({x}, {y}, {z}) is not a bad triple")
    m = _least_clique(g.rows, g.rows[x] & g.rows[y], r - 1)
    if r - 1 and not m:
        raise PreconditionError(f"no (r-1)-clique among common neighbours of {x} and {y}: graph is not edge-maximal")
    nn = _least_clique(g.rows, g.rows[x] & g.rows[z], r - 1)
    if r - 1 and not nn:
        raise PreconditionError(f"no (r-1)-clique among common neighbours of {x} and {z}: graph is not edge-maximal")
    cfg = Configuration(
        A=frozenset(bits(m & ~nn)),
        B=frozenset(bits(m & nn)),
        C=frozenset(bits(nn & ~m)),
        x=x,
        y=y,
        z=z,
        r=r,
    )
    problems = _config_problems(g, cfg)
    if problems:
        raise PreconditionError("initial configuration invalid: " + "; ".join(problems))
    return cfg


def assign_weights(cfg: Configuration, n: int) -> WeightAssignment:
    w = [0] * n
    for v in cfg.A | cfg.C | {cfg.x, cfg.y, cfg.z}:
        w[v] = 1
    for v in cfg.B:
        w[v] = 3
    return WeightAssignment(tuple(w))


def check_degree_estimate(r: int, k: int, n: int, delta: int) -> DegreeEstimate:
    if not 0 <= k <= r - 2:
        raise ValueError(f"intensity {k} outside 0..{r - 2}")
    if n < 1:
        raise ValueError("n must be positive")
    lhs = (2 * r + k + 1) * delta
    rhs = (2 * r + k - 2) * n
    return DegreeEstimate(
        lhs=lhs,
        rhs=rhs,
        strict_ok=lhs > rhs,
        tight_ok=lhs >= rhs,
        coeff_lhs=(2 * r + k + 1) * (3 * r - 4),
        coeff_rhs=(2 * r + k - 2) * (3 * r - 1),
    )


def _weight_sums(g: Graph, w: WeightAssignment) -> list[int]:
    by_weight: dict[int, int] = {}
    for v, val in enumerate(w.w):
        if val:
            by_weight[val] = by_weight.get(val, 0) | 1 << v
    return [sum(val * popcount(row & m) for val, m in by_weight.items()) for row in g.rows]


def find_heavy_vertex(g: Graph, w: WeightAssignment, threshold: int) -> Optional[tuple[int, int]]:
    """Vertex with the largest neighbour weight (lowest id on ties) if it reaches ``threshold``."""
    if g.n == 0:
        return None
    sums = _weight_sums(g, w)
    best = max(range(g.n), key=lambda u: (sums[u], -u))
    if sums[best] < threshold:
        return None
    return best, sums[best]


def _clique_or_broken(g: Graph, r: int, vertices) -> CliqueFound:
    verts = frozenset(vertices)
    mask = to_mask(verts)
    if len(verts) != r + 1 or any(mask & ~g.rows[v] != 1 << v for v in bits(mask)):
        raise PreconditionError(f"expected an (r+1)-clique on {sorted(verts)}; is the graph K_{r + 1}-free?")
    return CliqueFound(verts)


def _boost(g: Graph, cfg: Configuration, u: int) -> tuple[Union[Configuration, CliqueFound], int, int]:
    r, k = cfg.r, cfg.intensity
    w = assign_weights(cfg, g.n)
    s = w.weight_sum(g, u)
    if s < 2 * r + k - 1:
        raise ValueError(f"vertex {u} has neighbour weight {s} < {2 * r + k - 1}")
    row = g.rows[u]
    adj = lambda v: bool(row >> v & 1)  # noqa: E731
    if not all(adj(b) for b in cfg.B):
        raise PreconditionError(f"heavy vertex {u} misses a vertex of B")
    x, y, z, A, B, C = cfg.x, cfg.y, cfg.z, cfg.A, cfg.B, cfg.C
    # u is never its own neighbour, so u in A (or C) falls through to the boost
    if all(adj(a) for a in A):
        if adj(x):
            return _clique_or_broken(g, r, A | B | {u, x}), -1, -1
        if adj(y):
            return _clique_or_broken(g, r, A | B | {u, y}), -1, -1
        return _clique_or_broken(g, r, B | C | {u, z}), -1, -1
    if all(adj(c) for c in C):
        if adj(x):
            return _clique_or_broken(g, r, C | B | {u, x}), -1, -1
        if adj(z):
            return _clique_or_broken(g, r, C | B | {u, z}), -1, -1
        return _clique_or_broken(g, r, A | B | {u, y}), -1, -1
    a = min(v for v in A if not adj(v))
    c = min(v for v in C if not adj(v))
    new = Configuration(A=A - {a}, B=B | {u}, C=C - {c}, x=x, y=y, z=z, r=r)
    problems = _config_problems(g, new)
    if problems:
        raise PreconditionError(f"boost through {u} is invalid: " + "; ".join(problems))
    return new, a, c


def boost(g: Graph, cfg: Configuration, u: int) -> Union[Configuration, CliqueFound]:
    """Absorb the heavy vertex ``u`` into B, or return the (r+1)-clique it closes.

    ``u`` may lie in A or C; it then plays the role of the A (or C) vertex it
    is not adjacent to.
    """
    return _boost(g, cfg, u)[0]


def advance(g: Graph, cfg: Configuration) -> tuple[list, Union[Configuration, CliqueFound]]:
    """Boost through heavy vertices until none is left or a clique appears.

    Returns the HeavyVertex/Boost steps taken and either the final
    configuration (no vertex reaches weight 2r+k-1) or the clique.
    """
    r = cfg.r
    steps = []
    while True:
        k = cfg.intensity
        if k >= r - 1:
            return steps, _clique_or_broken(g, r, cfg.B | {cfg.y, cfg.z})
        heavy = find_heavy_vertex(g, assign_weights(cfg, g.n), 2 * r + k - 1)
        if heavy is None:
            return steps, cfg
        steps.append(HeavyVertex(*heavy))
        result, a, c = _boost(g, cfg, heavy[0])
        if isinstance(result, CliqueFound):
            return steps, result
        steps.append(Boost(result, a, c))
        cfg = result


def extract_extremal_partition(g: Graph, cfg: Configuration) -> PartitionWitness:
    """Read off P1..P5, Q1..Q(r-2) from a configuration of intensity r-2."""
    r, n = cfg.r, g.n
    if cfg.intensity != r - 2:
        raise PreconditionError(f"intensity {cfg.intensity} != r-2")
    if n % (3 * r - 1):
        raise PreconditionError(f"n={n} is not divisible by {3 * r - 1}")
    ell = n // (3 * r - 1)
    (p1,), (p3,) = tuple(cfg.A), tuple(cfg.C)
    p = [p1, cfg.x, p3, cfg.z, cfg.y]  # p[i] is p_{i+1}
    q = sorted(cfg.B)
    k_verts = p + q
    k_mask = to_mask(k_verts)
    rows = g.rows
    for i in range(5):
        for j in range(i + 1, 5):
            want = (j - i) % 5 in (1, 4)
            if g.has_edge(p[i], p[j]) != want:
                raise PreconditionError(f"extra or missing edge between p{i + 1} and p{j + 1}")
    for v in q:
        if k_mask & ~rows[v] != 1 << v:
            raise PreconditionError(f"q vertex {v} is not joined to the rest of K")

    patterns = {}
    for i in range(5):
        patterns[k_mask & ~((1 << p[i]) | (1 << p[(i + 2) % 5]) | (1 << p[(i + 3) % 5]))] = i
    for j, qv in enumerate(q):
        patterns[k_mask & ~(1 << qv)] = 5 + j
    parts = [1 << v for v in k_verts]
    for u in range(n):
        if k_mask >> u & 1:
            continue
        idx = patterns.get(rows[u] & k_mask)
        if idx is None:
            raise PreconditionError(f"vertex {u} has an unclassifiable neighbourhood in K")
        parts[idx] |= 1 << u
    p_masks, q_masks = parts[:5], parts[5:]

    full = (1 << n) - 1
    for j, qm in enumerate(q_masks):
        for v in bits(qm):
            if rows[v] & qm:
                raise PreconditionError(f"Q{j + 1} is not independent")
            if rows[v] != full & ~qm:
                raise PreconditionError(f"Q{j + 1} is not complete to the rest of the graph")
    for i, pm in enumerate(p_masks):
        near = p_masks[(i + 1) % 5] | p_masks[(i - 1) % 5]
        far = p_masks[(i + 2) % 5] | p_masks[(i - 2) % 5]
        for v in bits(pm):
            if rows[v] & pm:
                raise PreconditionError(f"P{i + 1} is not independent")
            if rows[v] & near != near:
                raise PreconditionError(f"P{i + 1} is not complete to its cyclic neighbours")
            if rows[v] & far:
                raise PreconditionError(f"P{i + 1} has an edge to a non-consecutive part")
    for j, qm in enumerate(q_masks):
        if popcount(qm) != 3 * ell:
            raise PreconditionError(f"|Q{j + 1}| = {popcount(qm)} != 3*{ell}")
    sizes = [popcount(m) for m in p_masks]
    for i in range(5):
        if sizes[(i + 1) % 5] + sizes[(i - 1) % 5] != 2 * ell:
            raise PreconditionError(f"|P{i + 2}| + |P{i}| != 2*{ell}")
    if sizes != _solve_cyclic_sizes(ell):
        raise PreconditionError(f"P part sizes {sizes} disagree with the unique solution")
    return PartitionWitness(
        p_parts=tuple(frozenset(bits(m)) for m in p_masks),
        q_parts=tuple(frozenset(bits(m)) for m in q_masks),
        r=r,
        ell=ell,
    )


def _solve_cyclic_sizes(ell: int) -> list[int]:
    # s[i+1] + s[i-1] = 2*ell around a 5-cycle.  Stepping i -> i+2 gives
    # s[i+2] = 2*ell - s[i]; five steps return to the start with the sign
    # flipped, so s[0] = 2*ell - s[0].
    s = [0] * 5
    s[0] = ell
    for step in range(4):
        i = (2 * step) % 5
        s[(i + 2) % 5] = 2 * ell - s[i]
    return s


def run_refutation(g: Graph, r: int, mode: ThresholdMode) -> ProofTrace:
    mode = ThresholdMode.parse(mode)
    trace = ProofTrace()
    steps = trace.steps

    def finish(outcome: Outcome) -> ProofTrace:
        steps.append(outcome)
        return trace

    if r < 2:
        return finish(PreconditionBroken(f"r={r} < 2"))
    if g.n == 0:
        return finish(PreconditionBroken("empty graph"))
    if not meets_threshold(g, r, mode):
        delta = min_degree(g)
        return finish(PreconditionBroken(
            f"threshold not met: {threshold_formula(r, mode)} fails with delta={delta}, n={g.n}"))
    clique = find_clique_of_size(g, r + 1)
    if clique is not None:
        return finish(CliqueFound(clique))

    h, added = saturate(g, r)
    steps.extend(EdgeAdded(u, v) for u, v in added)
    triple = find_bad_triple(h)
    if triple is None:
        parts = complete_multipartite_parts(h)
        return finish(CompleteMultipartite(tuple(parts)))
    steps.append(BadTriple(*triple))
    try:
        cfg = initial_configuration(h, r, *triple)
        steps.append(InitialConfig(cfg))
        more, result = advance(h, cfg)
        steps.extend(more)
        if isinstance(result, CliqueFound):
            return finish(result)
        cfg = result

        if mode is ThresholdMode.STRICT:
            return finish(PreconditionBroken(f"{HEAVY_VERTEX_MISSING} at intensity {cfg.intensity} in strict mode"))
        problems = _tightness_problems(h, cfg)
        if problems:
            return finish(PreconditionBroken(f"{HEAVY_VERTEX_MISSING}, not tight: " + "; ".join(problems)))
        steps.append(TightCase(cfg))
        witness = extract_extremal_partition(h, cfg)
        if witness_problems(g, witness):
            raise PreconditionError("extracted partition does not describe the input graph")
        return finish(ExtremalExtracted(witness))
    except PreconditionError as exc:
        return finish(PreconditionBroken(str(exc)))


def _tightness_problems(g: Graph, cfg: Configuration) -> list[str]:
    r, k, n = cfg.r, cfg.intensity, g.n
    out = []
    if k != r - 2:
        out.append(f"intensity {k} != r-2")
    if n % (3 * r - 1):
        out.append(f"{3 * r - 1} does not divide n={n}")
        return out
    degree = (3 * r - 4) * n // (3 * r - 1)
    bad = sorted(v for v in cfg.members if g.degree(v) != degree)
    if bad:
        out.append(f"configuration vertices {bad} do not have degree {degree}")
    sums = _weight_sums(g, assign_weights(cfg, n))
    off = [u for u in range(n) if sums[u] != 2 * r + k - 2]
    if off:
        out.append(f"neighbour weight differs from {2 * r + k - 2} at {off[:5]}")
    return out
