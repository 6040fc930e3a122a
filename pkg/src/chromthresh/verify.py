"""Independent checkers.

Everything here talks to a graph only through ``g.n`` and ``g.has_edge`` and
imports nothing from the producing modules, so a producer bug cannot hide
behind a shared helper.
"""

from __future__ import annotations

from itertools import combinations


def _is_clique(g, vertices) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vertices, 2))


def _is_independent(g, vertices) -> bool:
    return not any(g.has_edge(u, v) for u, v in combinations(vertices, 2))


def check_clique(g, r: int, vertices) -> bool:
    vs = list(vertices)
    if len(set(vs)) != len(vs) or len(vs) != r + 1:
        return False
    if not all(isinstance(v, int) and 0 <= v < g.n for v in vs):
        return False
    return _is_clique(g, vs)


def check_coloring(g, r: int, assignment) -> bool:
    colors = list(assignment)
    if len(colors) != g.n:
        return False
    if not all(isinstance(c, int) and 1 <= c <= r for c in colors):
        return False
    return not any(g.has_edge(u, v) and colors[u] == colors[v] for u, v in combinations(range(g.n), 2))


def check_partition(g, r: int, ell: int, p_parts, q_parts) -> bool:
    p_parts = [list(p) for p in p_parts]
    q_parts = [list(q) for q in q_parts]
    if len(p_parts) != 5 or len(q_parts) != r - 2 or ell < 1:
        return False
    if (3 * r - 1) * ell != g.n:
        return False
    if any(len(p) != ell for p in p_parts) or any(len(q) != 3 * ell for q in q_parts):
        return False
    seen = [v for part in p_parts + q_parts for v in part]
    if sorted(seen) != list(range(g.n)):
        return False
    for part in p_parts + q_parts:
        if not _is_independent(g, part):
            return False
    for j, q in enumerate(q_parts):
        inside = set(q)
        for u in q:
            for v in range(g.n):
                if v not in inside and not g.has_edge(u, v):
                    return False
    for i in range(5):
        for d, want in ((1, True), (2, False)):
            other = p_parts[(i + d) % 5]
            for u in p_parts[i]:
                for v in other:
                    if g.has_edge(u, v) != want:
                        return False
    return True


def configuration_problems(g, cfg) -> list[str]:
    """All violated configuration conditions for ``cfg`` in ``g``."""
    A, B, C = sorted(cfg.A), sorted(cfg.B), sorted(cfg.C)
    x, y, z, r = cfg.x, cfg.y, cfg.z, cfg.r
    out = []
    anchors = [x, y, z]
    if len(set(anchors)) != 3:
        out.append("x, y, z not distinct")
    everything = A + B + C + anchors
    if len(set(everything)) != len(everything):
        out.append("A, B, C, {x, y, z} not pairwise disjoint")
    k = len(B)
    if len(A) != r - 1 - k or len(C) != r - 1 - k:
        out.append("(K1) sizes")
    if not (_is_clique(g, A) and _is_clique(g, B) and _is_clique(g, C)):
        out.append("(K1) cliques")
    for b in B:
        if any(v != b and not g.has_edge(b, v) for v in everything):
            out.append("(K2)")
            break
    if any(not (g.has_edge(a, x) and g.has_edge(a, y)) for a in A):
        out.append("(K3) A")
    if any(not (g.has_edge(c, x) and g.has_edge(c, z)) for c in C):
        out.append("(K3) C")
    if g.has_edge(x, y) or g.has_edge(x, z) or not g.has_edge(y, z):
        out.append("anchor pattern")
    return out


def verify_certificate(g, r: int, cert) -> bool:
    """True iff ``cert`` is a valid clique, colouring, or extremal certificate for ``g``.

    Accepts the certifier's objects or their JSON dictionaries.
    """
    data = cert if isinstance(cert, dict) else cert.to_json()
    try:
        kind = data["type"]
        if kind == "clique":
            return check_clique(g, r, data["vertices"])
        if kind == "coloring":
            return check_coloring(g, r, data["assignment"])
        if kind == "extremal":
            return int(data["r"]) == r and check_partition(g, r, int(data["ell"]), data["P"], data["Q"])
    except (KeyError, TypeError, ValueError):
        return False
    return False
