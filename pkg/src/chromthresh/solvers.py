"""Exact clique and colouring search.

Both searches are complete: a ``None`` result is a proof of absence, which is
what the certifier relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Graph, bits, popcount, to_mask


@dataclass(frozen=True)
class Coloring:
    """``assignment[v]`` is the colour of vertex ``v``, drawn from ``1..c``."""

    assignment: tuple[int, ...]
    c: int

    def classes(self) -> list[frozenset[int]]:
        return [frozenset(v for v, col in enumerate(self.assignment) if col == k) for k in range(1, self.c + 1)]


def _greedy_color_bound(g: Graph, cand: int) -> int:
    # Number of colour classes in a greedy sequential colouring of cand.
    classes = 0
    rest = cand
    while rest:
        classes += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            rest &= ~(1 << v)
            avail &= ~g.rows[v] & ~(1 << v)
    return classes


def _degree_order(g: Graph, cand: int) -> list[int]:
    # highest degree first, ties by id
    return sorted(bits(cand), key=lambda v: (-popcount(g.rows[v]), v))


def find_clique_of_size(g: Graph, t: int, within: Optional[Iterable[int]] = None) -> Optional[frozenset[int]]:
    """A clique on exactly ``t`` vertices (optionally inside ``within``), or None."""
    if t < 1:
        raise ValueError("clique size must be at least 1")
    cand = (1 << g.n) - 1 if within is None else to_mask(within)
    if popcount(cand) < t:
        return None
    rows = g.rows

    def extend(chosen: int, size: int, cand: int) -> int:
        if size == t:
            return chosen
        need = t - size
        if popcount(cand) < need or _greedy_color_bound(g, cand) < need:
            return 0
        for v in _degree_order(g, cand):
            if popcount(cand) < need:
                break
            found = extend(chosen | 1 << v, size + 1, cand & rows[v])
            if found:
                return found
            cand &= ~(1 << v)
        return 0

    found = extend(0, 0, cand)
    return frozenset(bits(found)) if found else None


def max_clique(g: Graph) -> frozenset[int]:
    if g.n == 0:
        raise ValueError("max_clique of the empty graph is undefined")
    rows = g.rows
    best = [1, 1]  # (mask, size); any single vertex is a clique

    def expand(chosen: int, size: int, cand: int) -> None:
        if not cand:
            if size > best[1]:
                best[0], best[1] = chosen, size
            return
        if size + _greedy_color_bound(g, cand) <= best[1]:
            return
        for v in _degree_order(g, cand):
            if size + popcount(cand) <= best[1]:
                return
            expand(chosen | 1 << v, size + 1, cand & rows[v])
            cand &= ~(1 << v)
        if size > best[1]:
            best[0], best[1] = chosen, size

    expand(0, 0, (1 << g.n) - 1)
    return frozenset(bits(best[0]))


def clique_number(g: Graph) -> int:
    return len(max_clique(g)) if g.n else 0


def find_coloring(g: Graph, c: int) -> Optional[Coloring]:
    """Proper colouring with at most ``c`` colours by DSATUR backtracking.

    Branches on the uncoloured vertex with the most distinct neighbour colours
    (ties by lowest id).  A new colour is only opened once all lower ones are
    in use, which also pins the first vertex to colour 1.
    """
    if c < 1:
        raise ValueError("colour count must be at least 1")
    n = g.n
    if n == 0:
        return Coloring((), c)
    rows = g.rows
    color = [0] * n
    # nbr_count[v][k]: neighbours of v currently holding colour k
    nbr_count = [[0] * (c + 1) for _ in range(n)]
    sat = [0] * n
    uncolored = set(range(n))

    def assign(v: int, k: int) -> None:
        color[v] = k
        uncolored.discard(v)
        for w in bits(rows[v]):
            cnt = nbr_count[w]
            if cnt[k] == 0:
                sat[w] += 1
            cnt[k] += 1

    def unassign(v: int, k: int) -> None:
        for w in bits(rows[v]):
            cnt = nbr_count[w]
            cnt[k] -= 1
            if cnt[k] == 0:
                sat[w] -= 1
        color[v] = 0
        uncolored.add(v)

    def search(used: int) -> bool:
        if not uncolored:
            return True
        v = min(uncolored, key=lambda u: (-sat[u], u))
        if sat[v] >= c:
            return False
        cnt = nbr_count[v]
        for k in range(1, min(used + 1, c) + 1):
            if cnt[k]:
                continue
            assign(v, k)
            if search(max(used, k)):
                return True
            unassign(v, k)
        return False

    if not search(0):
        return None
    return Coloring(tuple(color), c)


def chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    c = 1
    while find_coloring(g, c) is None:
        c += 1
    return c
