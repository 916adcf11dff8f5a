import json

import pytest

from hopfclass.rules import RULES, ProofStep, ProofTrace, UnknownRule, citation


def test_catalogue_has_core_rules():
    for rule in (
        "frobenius-reciprocity",
        "grouplike-multiplicity",
        "stabilizer-divides-degsq",
        "nichols-zoeller",
        "degree-residual",
        "fusion-infeasible",
        "verdict",
    ):
        assert citation(rule) == RULES[rule]
    assert all(isinstance(v, str) and v for v in RULES.values())


def test_unknown_rule_rejected():
    with pytest.raises(UnknownRule):
        ProofStep("made-up", "x", "y")
    with pytest.raises(UnknownRule):
        ProofTrace().add("made-up", "x")


def test_trace_json_roundtrip():
    tr = ProofTrace()
    tr.add("nichols-zoeller", "2 | 100", "ok", dim=100, g=2)
    tr.add("degree-residual", "16 - 2 = 14", "", residual=14, parts=[4, 5], expressible=True)
    text = json.dumps(tr.to_json(), sort_keys=True)
    back = ProofTrace.from_json(json.loads(text))
    assert back == tr
    assert [s.data for s in back] == [s.data for s in tr]
    assert back[0].inputs_digest == tr[0].inputs_digest


def test_digest_tracks_inputs():
    a = ProofStep("nichols-zoeller", "d", "c", {"g": 2})
    b = ProofStep("nichols-zoeller", "d", "c", {"g": 4})
    assert a.inputs_digest != b.inputs_digest
