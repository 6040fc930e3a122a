"""Simple undirected graphs on vertices ``0..n-1`` backed by bitmask rows.

Row ``v`` is an int whose bit ``w`` is set iff ``vw`` is an edge.  Graphs are
immutable; the edit helpers return new instances.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator, Optional, Sequence


class GraphParseError(ValueError):
    """Malformed graph text.  ``location`` names the offending line or offset."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ThresholdMode(enum.Enum):
    STRICT = "strict"
    TIGHT = "tight"

    @classmethod
    def parse(cls, value: "str | ThresholdMode") -> "ThresholdMode":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown threshold mode {value!r}") from None


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(rows) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(rows)}")
        full = (1 << n) - 1
        rows = tuple(rows)
        for v, row in enumerate(rows):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex >= {n}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in bits(row):
                if not rows[w] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {w}")
        self.n = n
        self.rows = rows
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int]) -> "Graph":
        blocks, start = [], 0
        for s in sizes:
            blocks.append(((1 << s) - 1) << start)
            start += s
        full = (1 << start) - 1
        rows = []
        for block in blocks:
            rows.extend([full & ~block] * popcount(block))
        return cls(start, rows)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degrees(self) -> list[int]:
        return [popcount(row) for row in self.rows]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if not self.rows[u] >> v & 1]

    @property
    def num_edges(self) -> int:
        return sum(popcount(row) for row in self.rows) // 2

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, rows)

    def without_edge(self, u: int, v: int) -> "Graph":
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.rows))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


# ---------------------------------------------------------------------------
# text formats


def parse_edgelist(text: str) -> Graph:
    lines = text.replace("\r\n", "\n").split("\n")
    # skip leading blank lines so "\n5 5\n..." still parses
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise GraphParseError("missing header line 'n m'", "line 1")
    header = lines[idx].split()
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise GraphParseError(f"malformed header {lines[idx]!r}, expected 'n m'", f"line {idx + 1}")
    n, m = int(header[0]), int(header[1])
    rows = [0] * n
    seen = 0
    for lineno in range(idx + 2, len(lines) + 1):
        raw = lines[lineno - 1]
        if not raw.strip():
            continue
        where = f"line {lineno}"
        if seen == m:
            raise GraphParseError(f"more than the declared {m} edge lines", where)
        toks = raw.split()
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise GraphParseError(f"malformed edge line {raw!r}", where)
        u, v = int(toks[0]), int(toks[1])
        if u >= n or v >= n:
            raise GraphParseError(f"vertex id {max(u, v)} >= n={n}", where)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", where)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        seen += 1
    if seen != m:
        raise GraphParseError(f"header declares {m} edges but {seen} edge lines follow", f"line {len(lines)}")
    return Graph(n, rows)


def format_edgelist(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def format_graph6(g: Graph) -> str:
    n = g.n
    bitstring = [g.rows[i] >> j & 1 for j in range(1, n) for i in range(j)]
    bitstring.extend([0] * (-len(bitstring) % 6))
    body = []
    for k in range(0, len(bitstring), 6):
        val = 0
        for b in bitstring[k:k + 6]:
            val = val << 1 | b
        body.append(chr(val + 63))
    return _g6_size(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphParseError("empty graph6 string", "offset 0")
    for off, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"invalid graph6 character {ch!r}", f"offset {off}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise GraphParseError("truncated 8-byte size field", "offset 0")
        n, pos = 0, 8
        for v in vals[2:8]:
            n = n << 6 | v
    else:
        if len(vals) < 4:
            raise GraphParseError("truncated 4-byte size field", "offset 0")
        n, pos = 0, 4
        for v in vals[1:4]:
            n = n << 6 | v
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    if len(vals) - pos != need:
        raise GraphParseError(f"expected {need} data bytes for n={n}, got {len(vals) - pos}", f"offset {pos}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = vals[pos + k // 6]
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    tail = k % 6
    if tail and vals[-1] & ((1 << (6 - tail)) - 1):
        raise GraphParseError("nonzero padding bits", f"offset {len(vals) - 1}")
    return Graph(n, rows)


def parse_graph(text: str, format: str = "edgelist") -> Graph:
    if format == "edgelist":
        return parse_edgelist(text)
    if format == "graph6":
        return parse_graph6(text)
    if format == "auto":
        first = next((ln for ln in text.splitlines() if ln.strip()), "")
        return parse_edgelist(text) if len(first.split()) > 1 else parse_graph6(text)
    raise ValueError(f"unknown graph format {format!r}")


def format_graph(g: Graph, format: str = "edgelist") -> str:
    if format == "edgelist":
        return format_edgelist(g)
    if format == "graph6":
        return format_graph6(g) + "\n"
    raise ValueError(f"unknown graph format {format!r}")


# ---------------------------------------------------------------------------
# degree arithmetic and elementary predicates


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise ValueError("minimum degree of the empty graph is undefined")
    return min(g.degrees())


def threshold_terms(n: int, delta: int, r: int) -> tuple[int, int]:
    """Both sides of the cross-multiplied comparison ``(3r-1)*delta`` vs ``(3r-4)*n``."""
    return (3 * r - 1) * delta, (3 * r - 4) * n


def required_degree(n: int, r: int, mode: ThresholdMode) -> int:
    """Smallest minimum degree on ``n`` vertices satisfying the threshold."""
    num, den = (3 * r - 4) * n, 3 * r - 1
    if mode is ThresholdMode.STRICT:
        return num // den + 1
    return -(-num // den)


def meets_threshold(g: Graph, r: int, mode: ThresholdMode) -> bool:
    if r < 2:
        raise ValueError("r must be at least 2")
    lhs, rhs = threshold_terms(g.n, min_degree(g), r)
    if ThresholdMode.parse(mode) is ThresholdMode.STRICT:
        return lhs > rhs
    return lhs >= rhs


def threshold_formula(r: int, mode: ThresholdMode) -> str:
    op = ">" if ThresholdMode.parse(mode) is ThresholdMode.STRICT else ">="
    return f"{3 * r - 1}*delta {op} {3 * r - 4}*n"


def common_neighbors(g: Graph, u: int, v: int) -> frozenset[int]:
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return frozenset(bits(g.rows[u] & g.rows[v]))


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    mask = to_mask(s)
    return all(mask & ~g.rows[v] == 1 << v for v in bits(mask))


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    mask = to_mask(s)
    return all(not (g.rows[v] & mask) for v in bits(mask))


def complete_multipartite_parts(g: Graph) -> Optional[list[frozenset[int]]]:
    """Classes of the non-adjacency relation when it is an equivalence, else None."""
    full = (1 << g.n) - 1
    co = [full & ~row for row in g.rows]  # closed non-neighbourhoods
    parts, seen = [], 0
    for v in range(g.n):
        if seen >> v & 1:
            continue
        cls = co[v]
        if any(co[w] != cls for w in bits(cls)):
            return None
        parts.append(frozenset(bits(cls)))
        seen |= cls
    return parts


def find_bad_triple(g: Graph) -> Optional[tuple[int, int, int]]:
    """Lexicographically least ``(x, y, z)`` with xy, xz non-edges and yz an edge."""
    full = (1 << g.n) - 1
    for x in range(g.n):
        non = full & ~g.rows[x] & ~(1 << x)
        for y in bits(non):
            hit = g.rows[y] & non
            if hit:
                return x, y, (hit & -hit).bit_length() - 1
    return None
