import copy

import pytest

from hopfclass.replay import ReplayError, replay_all, replay_case
from hopfclass.verdict import classify, classify_4q2


@pytest.fixture(scope="module")
def q5():
    return classify_4q2(5)


@pytest.mark.parametrize("pq", [(2, 3), (2, 5), (2, 7), (2, 11), (2, 13), (2, 17), (3, 83), (5, 1283)])
def test_replay_reproduces_outcomes(pq):
    vs = classify(*pq)
    assert replay_all(vs) == [v.outcome for v in vs]
    assert replay_all([v.to_json() for v in vs]) == [v.outcome for v in vs]


def test_deep_replay_reruns_search(q5):
    v = next(v for v in q5 if v.g_order == 2)
    assert replay_case(v, deep=True) == "UpperSemisolvable"


def _tamper(v, fn):
    js = copy.deepcopy(v.to_json())
    fn(js)
    return js


def test_wrong_outcome_rejected(q5):
    v = next(v for v in q5 if v.g_order == 5)
    def flip(js):
        js["trace"][-1]["conclusion"] = "UpperSemisolvable"
        js["outcome"] = "UpperSemisolvable"

    with pytest.raises(ReplayError):
        replay_case(_tamper(v, flip))


def test_bad_citation_rejected(q5):
    def cite(js):
        js["trace"][0]["citation"] = "a different statement"

    with pytest.raises(ReplayError):
        replay_case(_tamper(q5[0], cite))


def test_bad_enumeration_rejected(q5):
    v = next(v for v in q5 if v.g_order == 2)

    def drop(js):
        for s in js["trace"]:
            if s["rule"] == "dimension-equation" and s["inputs"].get("types"):
                s["inputs"]["types"] = s["inputs"]["types"][1:]
                return
        raise AssertionError("no enumeration step")

    with pytest.raises(ReplayError):
        replay_case(_tamper(v, drop))


def test_missing_verdict_step(q5):
    with pytest.raises(ReplayError):
        replay_case(_tamper(q5[1], lambda js: js["trace"].pop()))


def test_missing_evidence_rejected(q5):
    v = next(v for v in q5 if v.g_order == 2)

    def strip(js):
        js["trace"] = [s for s in js["trace"] if s["rule"] != "fusion-infeasible"]

    with pytest.raises(ReplayError):
        replay_case(_tamper(v, strip))
