import json
import random
from importlib import resources
from itertools import combinations

import jsonschema
import pytest

from chromthresh.certifier import (
    CliqueCertificate,
    ColoringCertificate,
    ExtremalCertificate,
    InternalInconsistency,
    ThresholdNotMet,
    certificate_from_json,
    certify,
)
from chromthresh.extremal import build_extremal
from chromthresh.graph import Graph, ThresholdMode, min_degree
from chromthresh.mutations import mutations
from chromthresh.verify import verify_certificate

CERT_SCHEMA = json.loads(resources.files("chromthresh").joinpath("schemas/certificate.schema.json").read_text())


def test_c5_extremal(c5):
    cert = certify(c5, 2, ThresholdMode.TIGHT)
    assert isinstance(cert, ExtremalCertificate)
    assert cert.to_json()["ell"] == 1
    assert verify_certificate(c5, 2, cert)


def test_k33_coloring(k33):
    cert = certify(k33, 2, ThresholdMode.STRICT)
    assert isinstance(cert, ColoringCertificate)
    assert len(set(cert.coloring.assignment)) == 2
    assert verify_certificate(k33, 2, cert)


def test_k5_clique(k5):
    cert = certify(k5, 4, ThresholdMode.STRICT)
    assert isinstance(cert, CliqueCertificate) and len(cert.vertices) == 5
    assert verify_certificate(k5, 4, cert)


def test_petersen_below_threshold(petersen):
    assert min_degree(petersen) == 3
    with pytest.raises(ThresholdNotMet) as info:
        certify(petersen, 2, ThresholdMode.TIGHT)
    assert info.value.to_json() == {
        "error": "threshold_not_met",
        "delta": 3,
        "n": 10,
        "r": 2,
        "mode": "tight",
        "required": "5*delta >= 2*n",
    }


def test_strict_formula_in_error(c5):
    with pytest.raises(ThresholdNotMet) as info:
        certify(c5, 2, ThresholdMode.STRICT)
    assert info.value.required == "5*delta > 2*n"


def test_internal_inconsistency_is_raised(monkeypatch, c5):
    # simulate a broken recogniser: the certifier must not swallow the gap
    monkeypatch.setattr("chromthresh.certifier.recognize_extremal", lambda g, r: None)
    with pytest.raises(InternalInconsistency):
        certify(c5, 2, ThresholdMode.TIGHT)


@pytest.mark.parametrize("r, k", [(r, k) for r in range(2, 6) for k in range(1, 4)])
def test_extremal_grid_returns_extremal(r, k):
    g, _ = build_extremal(r, k)
    cert = certify(g, r, ThresholdMode.TIGHT)
    assert isinstance(cert, ExtremalCertificate)
    assert verify_certificate(g, r, cert)
    jsonschema.validate(cert.to_json(), CERT_SCHEMA)
    assert certificate_from_json(cert.to_json()) == cert


def test_clique_swap_rejected(k5):
    cert = certify(k5, 4, ThresholdMode.STRICT).to_json()
    g = Graph.complete(6).without_edge(0, 5)
    assert verify_certificate(g, 4, {"type": "clique", "r": 4, "vertices": [0, 1, 2, 3, 4]})
    assert not verify_certificate(g, 4, {"type": "clique", "r": 4, "vertices": [5, 1, 2, 3, 0]})
    for name, bad in mutations(k5, cert):
        assert not verify_certificate(k5, 4, bad), name


def test_c5_part_exchange_rejected(c5):
    cert = certify(c5, 2, ThresholdMode.TIGHT).to_json()
    bad = json.loads(json.dumps(cert))
    bad["P"][0], bad["P"][2] = bad["P"][2], bad["P"][0]
    assert not verify_certificate(c5, 2, bad)


def test_verifier_rejects_garbage(c5):
    assert not verify_certificate(c5, 2, {"type": "nonsense"})
    assert not verify_certificate(c5, 2, {"type": "clique"})
    assert not verify_certificate(c5, 2, {"type": "coloring", "r": 2, "assignment": [1, 2, 1, 2, "x"]})
    assert not verify_certificate(c5, 2, {"type": "extremal", "r": 3, "ell": 1, "P": [[0]] * 5, "Q": []})


def test_round_trip_and_mutations_random():
    rng = random.Random(17)
    seen = set()
    for _ in range(300):
        n = rng.randint(3, 10)
        r = rng.choice((2, 3))
        g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < 0.75])
        try:
            cert = certify(g, r, ThresholdMode.TIGHT)
        except ThresholdNotMet:
            continue
        data = cert.to_json()
        seen.add(data["type"])
        jsonschema.validate(data, CERT_SCHEMA)
        assert verify_certificate(g, r, cert)
        for name, bad in mutations(g, data):
            assert not verify_certificate(g, r, bad), name
    assert {"clique", "coloring"} <= seen
