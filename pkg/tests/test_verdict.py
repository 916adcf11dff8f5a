import pytest

from hopfclass.arithmetic import DimensionProfile
from hopfclass.verdict import (
    DICHOTOMY,
    CaseVerdict,
    DivisibilityViolation,
    HypothesisViolation,
    biproduct_condition,
    classify,
    classify_4q2,
    classify_p2q2,
    subalgebra_semisolvability_rule,
)

# conclusions for dimension 4q^2, transcribed by hand per |G(H*)|
def key(q):
    return {
        1: "Impossible",
        2: "UpperSemisolvable",
        4: "SemisolvableOrBiproduct",
        q: "Impossible",
        2 * q: "UpperSemisolvable",
        4 * q: "SemisolvableOrBiproduct",
        q * q: "UpperSemisolvable",
        2 * q * q: "UpperSemisolvable",
        4 * q * q: "DualGroupAlgebra",
    }


@pytest.fixture(scope="module")
def small():
    return {q: classify_4q2(q) for q in (5, 7, 11, 13)}


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_answer_key(small, q):
    got = {v.g_order: v.outcome for v in small[q]}
    assert got == key(q)
    assert all(not v.findings for v in small[q])


def test_q11_g11_fusion_trace(small):
    v = next(v for v in small[11] if v.g_order == 11)
    steps = [s for s in v.trace if s.rule == "fusion-infeasible"]
    assert any(s.data.get("type") == "(1,11;4,22;11,1)" and s.conclusion == "Infeasible" for s in steps)


def test_q5_g2_trace(small):
    v = next(v for v in small[5] if v.g_order == 2)
    assert any(
        s.rule == "fusion-infeasible" and s.data.get("type") == "(1,2;4,3;5,2)" and s.conclusion == "Infeasible"
        for s in v.trace
    )


def test_traces_end_in_verdict(small):
    for vs in small.values():
        for v in vs:
            assert v.trace[-1].rule == "verdict"
            assert v.trace[-2].conclusion == v.outcome == v.trace[-1].conclusion


def test_q3_cited():
    (v,) = classify_4q2(3)
    assert v.outcome == "Semisolvable" and v.g_order is None
    assert v.trace[0].rule == "dim36-cited"


def test_q17():
    got = {v.g_order: v.outcome for v in classify_4q2(17)}
    assert got[17] == "Impossible"
    assert got[1156] == "DualGroupAlgebra"
    assert got[1] == "Impossible"


def test_large_q_routes_to_general():
    a = [(v.g_order, v.outcome) for v in classify_4q2(19)]
    b = [(v.g_order, v.outcome) for v in classify_p2q2(2, 19)]
    assert a == b


def test_general_regime_q83():
    got = {v.g_order: v.outcome for v in classify_p2q2(3, 83)}
    assert got == {
        1: "Impossible",
        3: "UpperSemisolvable",
        9: "SemisolvableOrBiproduct",
        83: "Impossible",
        249: "UpperSemisolvable",
        747: "SemisolvableOrBiproduct",
        6889: "UpperSemisolvable",
        20667: "UpperSemisolvable",
        62001: "DualGroupAlgebra",
    }


def test_coideal_sharpening():
    # 5 divides none of 1282, 1284, 1283
    got = {v.g_order: v.outcome for v in classify_p2q2(5, 1283)}
    assert got[25] == got[25 * 1283] == "Semisolvable"


def test_hypothesis_violation():
    with pytest.raises(HypothesisViolation):
        classify_p2q2(3, 79)
    with pytest.raises(HypothesisViolation):
        classify_4q2(4)


def test_outcomes_respect_dichotomy():
    allowed = DICHOTOMY | {"Impossible", "DualGroupAlgebra"}
    for p, q in [(2, 5), (2, 7), (2, 11), (2, 13), (2, 17), (3, 83), (3, 89), (5, 1283)]:
        assert {v.outcome for v in classify(p, q)} <= allowed


def test_biproduct_condition():
    assert biproduct_condition(4, 4, 2)
    assert not biproduct_condition(4, 2, 2)
    p, q = 3, 83
    assert biproduct_condition(p * p * q, p * p, p)
    with pytest.raises(ValueError):
        biproduct_condition(0, 4, 2)


def test_subalgebra_rule():
    prof = DimensionProfile(2, 5)
    assert subalgebra_semisolvability_rule(50, prof)
    assert not subalgebra_semisolvability_rule(25, prof)
    with pytest.raises(DivisibilityViolation):
        subalgebra_semisolvability_rule(30, prof)


def test_biproduct_candidate_needs_gh():
    without = {v.g_order: v.outcome for v in classify_p2q2(3, 83)}
    with_gh = {v.g_order: v.outcome for v in classify_p2q2(3, 83, g_h=9)}
    assert "BiproductCandidate" not in without.values()
    assert with_gh[9] == "BiproductCandidate"
    small = {v.g_order: v.outcome for v in classify_4q2(5, g_h=4)}
    assert small[4] == "BiproductCandidate"


def test_verdict_json_roundtrip(small):
    for v in small[7]:
        back = CaseVerdict.from_json(v.to_json())
        assert back.to_json() == v.to_json()
    with pytest.raises(ValueError):
        CaseVerdict(DimensionProfile(2, 5), 2, "Maybe")
