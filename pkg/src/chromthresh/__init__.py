"""Certifying checks for the minimum-degree chromatic threshold of K_{r+1}-free graphs."""

from .certifier import certify, verify_certificate
from .extremal import PartitionWitness, build_extremal, recognize_extremal
from .graph import Graph, ThresholdMode, meets_threshold, min_degree, parse_graph
from .proof import run_refutation

__all__ = [
    "Graph",
    "PartitionWitness",
    "ThresholdMode",
    "build_extremal",
    "certify",
    "meets_threshold",
    "min_degree",
    "parse_graph",
    "recognize_extremal",
    "run_refutation",
    "verify_certificate",
]
