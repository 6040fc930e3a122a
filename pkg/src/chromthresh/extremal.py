"""The extremal graphs H(r, k) and a twin-class recogniser for them.

H(r, k) is the join of a balanced blow-up of C5 (parts P1..P5 of size k, the
part index read mod 5) with a complete (r-2)-partite graph whose parts
Q1..Q(r-2) have size 3k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Graph, bits, popcount, to_mask


@dataclass(frozen=True)
class PartitionWitness:
    p_parts: tuple[frozenset[int], ...]
    q_parts: tuple[frozenset[int], ...]
    r: int
    ell: int

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "ell": self.ell,
            "P": [sorted(p) for p in self.p_parts],
            "Q": [sorted(q) for q in self.q_parts],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PartitionWitness":
        return cls(
            p_parts=tuple(frozenset(p) for p in data["P"]),
            q_parts=tuple(frozenset(q) for q in data["Q"]),
            r=int(data["r"]),
            ell=int(data["ell"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class ExtremalProperties:
    n: int
    degree: int
    clique_number: int
    chromatic_number: int


def _check_params(r: int, k: int) -> None:
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def build_extremal(r: int, k: int) -> tuple[Graph, PartitionWitness]:
    """Build H(r, k) with P1..P5 in k-blocks from 0, then Q1.. in 3k-blocks."""
    _check_params(r, k)
    p_masks = [((1 << k) - 1) << (i * k) for i in range(5)]
    base = 5 * k
    q_masks = [((1 << 3 * k) - 1) << (base + 3 * k * j) for j in range(r - 2)]
    n = (3 * r - 1) * k
    full = (1 << n) - 1
    q_all = full & ~((1 << base) - 1)
    rows = [0] * n
    for i, pm in enumerate(p_masks):
        row = p_masks[(i + 1) % 5] | p_masks[(i - 1) % 5] | q_all
        for v in bits(pm):
            rows[v] = row
    for qm in q_masks:
        for v in bits(qm):
            rows[v] = full & ~qm
    witness = PartitionWitness(
        p_parts=tuple(frozenset(bits(m)) for m in p_masks),
        q_parts=tuple(frozenset(bits(m)) for m in q_masks),
        r=r,
        ell=k,
    )
    return Graph(n, rows), witness


def extremal_properties(r: int, k: int) -> ExtremalProperties:
    """Claimed parameters of H(r, k); tests check them with the exact solvers."""
    _check_params(r, k)
    return ExtremalProperties(n=(3 * r - 1) * k, degree=(3 * r - 4) * k, clique_number=r, chromatic_number=r + 1)


def witness_problems(g: Graph, w: PartitionWitness) -> list[str]:
    """Every way in which ``w`` fails to exhibit ``g`` as H(r, ell); empty if valid."""
    problems = []
    if len(w.p_parts) != 5:
        problems.append(f"expected 5 P parts, got {len(w.p_parts)}")
    if len(w.q_parts) != w.r - 2:
        problems.append(f"expected {w.r - 2} Q parts, got {len(w.q_parts)}")
    if w.ell < 1:
        problems.append("ell must be positive")
    if problems:
        return problems
    p_masks = [to_mask(p) for p in w.p_parts]
    q_masks = [to_mask(q) for q in w.q_parts]
    full = (1 << g.n) - 1
    union = 0
    for m in p_masks + q_masks:
        if m & union or m & ~full:
            problems.append("parts overlap or leave the vertex range")
        union |= m
    if union != full:
        problems.append("parts do not cover every vertex")
    for i, pm in enumerate(p_masks):
        if popcount(pm) != w.ell:
            problems.append(f"|P{i + 1}| = {popcount(pm)} != {w.ell}")
    for j, qm in enumerate(q_masks):
        if popcount(qm) != 3 * w.ell:
            problems.append(f"|Q{j + 1}| = {popcount(qm)} != {3 * w.ell}")
    if problems:
        return problems
    for j, qm in enumerate(q_masks):
        for v in bits(qm):
            if g.rows[v] != full & ~qm:
                problems.append(f"Q{j + 1} vertex {v} is not joined to exactly the outside of its part")
                break
    q_all = 0
    for qm in q_masks:
        q_all |= qm
    for i, pm in enumerate(p_masks):
        want = p_masks[(i + 1) % 5] | p_masks[(i - 1) % 5] | q_all
        for v in bits(pm):
            if g.rows[v] != want:
                problems.append(f"P{i + 1} vertex {v} has the wrong neighbourhood")
                break
    return problems


def recognize_extremal(g: Graph, r: int) -> Optional[PartitionWitness]:
    """A witness that ``g`` is isomorphic to H(r, n/(3r-1)), or None."""
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    n = g.n
    if n == 0 or n % (3 * r - 1):
        return None
    ell = n // (3 * r - 1)
    classes: dict[int, int] = {}
    for v, row in enumerate(g.rows):
        classes[row] = classes.get(row, 0) | 1 << v
    if len(classes) != r + 3:
        return None
    # twin classes keyed by neighbourhood; a class is independent automatically
    small = [(nb, m) for nb, m in classes.items() if popcount(m) == ell]
    large = [(nb, m) for nb, m in classes.items() if popcount(m) == 3 * ell]
    if len(small) != 5 or len(large) != r - 2:
        return None
    full = (1 << n) - 1
    for nb, m in large:
        if nb != full & ~m:
            return None
    q_all = 0
    for _, m in large:
        q_all |= m
    # the small classes must induce a 5-cycle in the quotient
    small.sort(key=lambda item: item[1] & -item[1])
    adj = []
    for nb, m in small:
        if nb & q_all != q_all:
            return None
        rest = nb & ~q_all
        nbrs = [j for j, (_, m2) in enumerate(small) if rest & m2]
        covered = 0
        for j in nbrs:
            covered |= small[j][1]
        if len(nbrs) != 2 or covered != rest:
            return None
        adj.append(nbrs)
    order = [0]
    prev, cur = -1, 0
    for _ in range(4):
        a, b = adj[cur]
        nxt = min(a, b) if prev == -1 else (b if a == prev else a)
        if nxt in order:
            return None
        order.append(nxt)
        prev, cur = cur, nxt
    if 0 not in adj[cur]:
        return None
    large.sort(key=lambda item: item[1] & -item[1])
    witness = PartitionWitness(
        p_parts=tuple(frozenset(bits(small[i][1])) for i in order),
        q_parts=tuple(frozenset(bits(m)) for _, m in large),
        r=r,
        ell=ell,
    )
    if witness_problems(g, witness):
        return None
    return witness


def witness_relabeling(w: PartitionWitness) -> list[int]:
    """``perm[v]`` = canonical H(r, ell) position of vertex ``v``.

    ``g.relabel(witness_relabeling(w)) == build_extremal(w.r, w.ell)[0]``
    whenever ``w`` is a valid witness for ``g``.
    """
    parts = list(w.p_parts) + list(w.q_parts)
    n = sum(len(p) for p in parts)
    perm = [0] * n
    pos = 0
    for part in parts:
        for v in sorted(part):
            perm[v] = pos
            pos += 1
    return perm


def blow_up(template: Graph, sizes: Sequence[int]) -> Graph:
    """Replace template vertex ``i`` by an independent set of ``sizes[i]`` vertices."""
    if len(sizes) != template.n:
        raise ValueError("one size per template vertex required")
    starts, total = [], 0
    for s in sizes:
        starts.append(total)
        total += s
    block = [((1 << s) - 1) << st for s, st in zip(sizes, starts)]
    rows = [0] * total
    for i in range(template.n):
        row = 0
        for j in bits(template.rows[i]):
            row |= block[j]
        for v in bits(block[i]):
            rows[v] = row
    return Graph(total, rows)
