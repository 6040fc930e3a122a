"""Single-field certificate corruptions.

Every mutation produced here is invalid by construction, so a sound verifier
must reject all of them.
"""

from __future__ import annotations

import copy
from typing import Iterator

from .graph import Graph


def _clique_mutations(g: Graph, cert: dict) -> Iterator[tuple[str, dict]]:
    members = cert["vertices"]
    for i, v in enumerate(members):
        rest = members[:i] + members[i + 1:]
        outsider = next((w for w in range(g.n) if w not in members and any(not g.has_edge(w, u) for u in rest)), None)
        swapped = copy.deepcopy(cert)
        swapped["vertices"][i] = outsider if outsider is not None else (rest[0] if rest else v + g.n)
        yield f"vertex_swap[{i}]", swapped
    dropped = copy.deepcopy(cert)
    dropped["vertices"] = members[:-1]
    yield "drop_vertex", dropped


def _coloring_mutations(g: Graph, cert: dict) -> Iterator[tuple[str, dict]]:
    colors = cert["assignment"]
    for u, v in g.edges()[:8]:
        changed = copy.deepcopy(cert)
        changed["assignment"][v] = colors[u]
        yield f"color_change[{v}<-{u}]", changed
    palette = copy.deepcopy(cert)
    if palette["assignment"]:
        palette["assignment"][0] = cert["r"] + 1
        yield "color_out_of_range", palette
        truncated = copy.deepcopy(cert)
        truncated["assignment"] = colors[:-1]
        yield "truncate", truncated


def _exchange(cert: dict, src: tuple[str, int], dst: tuple[str, int]) -> dict:
    out = copy.deepcopy(cert)
    a = out[src[0]][src[1]]
    b = out[dst[0]][dst[1]]
    a[0], b[0] = b[0], a[0]
    return out


def _extremal_mutations(g: Graph, cert: dict) -> Iterator[tuple[str, dict]]:
    yield "part_exchange[P1,P3]", _exchange(cert, ("P", 0), ("P", 2))
    for i in range(5):
        yield f"part_exchange[P{i + 1},P{(i + 1) % 5 + 1}]", _exchange(cert, ("P", i), ("P", (i + 1) % 5))
    for j in range(len(cert["Q"])):
        yield f"part_exchange[P1,Q{j + 1}]", _exchange(cert, ("P", 0), ("Q", j))
    bumped = copy.deepcopy(cert)
    bumped["ell"] += 1
    yield "ell_change", bumped


def mutations(g: Graph, cert: dict) -> Iterator[tuple[str, dict]]:
    """Yield ``(name, mutated_certificate_json)`` pairs for ``cert``."""
    kind = cert["type"]
    if kind == "clique":
        yield from _clique_mutations(g, cert)
    elif kind == "coloring":
        yield from _coloring_mutations(g, cert)
    elif kind == "extremal":
        yield from _extremal_mutations(g, cert)
    else:
        raise ValueError(f"unknown certificate type {kind!r}")
