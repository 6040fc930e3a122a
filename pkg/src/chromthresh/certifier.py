"""Clique / colouring / extremal certificates for graphs above the degree threshold."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .extremal import PartitionWitness, recognize_extremal
from .graph import Graph, ThresholdMode, meets_threshold, min_degree, threshold_formula
from .solvers import Coloring, find_clique_of_size, find_coloring
from .verify import verify_certificate

__all__ = [
    "CliqueCertificate",
    "ColoringCertificate",
    "ExtremalCertificate",
    "Certificate",
    "ThresholdNotMet",
    "InternalInconsistency",
    "certify",
    "certificate_from_json",
    "verify_certificate",
]


class ThresholdNotMet(ValueError):
    def __init__(self, g: Graph, r: int, mode: ThresholdMode):
        self.delta = min_degree(g) if g.n else 0
        self.n = g.n
        self.r = r
        self.mode = mode
        self.required = threshold_formula(r, mode)
        super().__init__(f"minimum degree {self.delta} on {self.n} vertices fails {self.required}")

    def to_json(self) -> dict:
        return {
            "error": "threshold_not_met",
            "delta": self.delta,
            "n": self.n,
            "r": self.r,
            "mode": self.mode.value,
            "required": self.required,
        }


class InternalInconsistency(RuntimeError):
    """No certificate exists although the theorem promises one."""


@dataclass(frozen=True)
class CliqueCertificate:
    r: int
    vertices: frozenset[int]

    def to_json(self) -> dict:
        return {"type": "clique", "r": self.r, "vertices": sorted(self.vertices)}


@dataclass(frozen=True)
class ColoringCertificate:
    r: int
    coloring: Coloring

    def to_json(self) -> dict:
        used = len(set(self.coloring.assignment))
        return {"type": "coloring", "r": self.r, "colors": used, "assignment": list(self.coloring.assignment)}


@dataclass(frozen=True)
class ExtremalCertificate:
    witness: PartitionWitness

    @property
    def r(self) -> int:
        return self.witness.r

    def to_json(self) -> dict:
        return {"type": "extremal", **self.witness.to_json()}


Certificate = Union[CliqueCertificate, ColoringCertificate, ExtremalCertificate]


def certificate_from_json(data: dict) -> Certificate:
    kind = data["type"]
    r = int(data["r"])
    if kind == "clique":
        return CliqueCertificate(r, frozenset(data["vertices"]))
    if kind == "coloring":
        assignment = tuple(data["assignment"])
        return ColoringCertificate(r, Coloring(assignment, r))
    if kind == "extremal":
        return ExtremalCertificate(PartitionWitness.from_json(data))
    raise ValueError(f"unknown certificate type {kind!r}")


def certify(g: Graph, r: int, mode: ThresholdMode) -> Certificate:
    mode = ThresholdMode.parse(mode)
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if g.n == 0 or not meets_threshold(g, r, mode):
        raise ThresholdNotMet(g, r, mode)
    clique = find_clique_of_size(g, r + 1)
    if clique is not None:
        return CliqueCertificate(r, clique)
    coloring = find_coloring(g, r)
    if coloring is not None:
        return ColoringCertificate(r, coloring)
    witness = recognize_extremal(g, r)
    if witness is not None:
        return ExtremalCertificate(witness)
    raise InternalInconsistency(
        f"graph on {g.n} vertices meets {threshold_formula(r, mode)} but is K_{r + 1}-free, "
        f"not {r}-colourable and not extremal"
    )


def dumps(cert: Certificate) -> str:
    return json.dumps(cert.to_json(), sort_keys=True)
