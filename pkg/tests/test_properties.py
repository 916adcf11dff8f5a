"""Randomized invariants of the fusion search on small types (dim <= 1000)."""

import json
import random

from hypothesis import HealthCheck, assume, given, settings, strategies as st

from hopfclass.fusion import BudgetExceeded, FusionTable, abelian_classes, propagate, search_consistent_table
from hopfclass.fusion.search import combined_status, eliminate, structured_tables
from hopfclass.replay import replay_all
from hopfclass.typeprofile import AlgebraType
from hopfclass.verdict import classify_p2q2

BUDGET = 3000
SETTINGS = settings(
    max_examples=100, deadline=None, suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow]
)


@st.composite
def small_types(draw):
    g = draw(st.integers(1, 16))
    degs = draw(st.lists(st.integers(2, 10), min_size=1, max_size=2, unique=True).map(sorted))
    entries = ((1, g),) + tuple((d, draw(st.integers(1, 3))) for d in degs)
    dim = sum(n * d * d for d, n in entries)
    assume(dim <= 1000 and dim % g == 0)
    return AlgebraType(entries)


def _status(t, group, relabel=None):
    try:
        return search_consistent_table(t, group, budget=BUDGET, relabel=relabel).status
    except BudgetExceeded:
        return None


@SETTINGS
@given(small_types(), st.randoms(use_true_random=False))
def test_relabeling_invariance(t, rng):
    group = rng.choice(abelian_classes(t.g_order))
    base = _status(t, group)
    assume(base is not None)
    perm = {}
    pos = t.g_order
    for _, n in t.entries[1:]:
        ids = list(range(pos, pos + n))
        shuffled = ids[:]
        rng.shuffle(shuffled)
        perm.update(zip(ids, shuffled))
        pos += n
    again = _status(t, group, perm)
    assume(again is not None)
    assert again == base


@SETTINGS
@given(small_types())
def test_result_json_roundtrip(t):
    try:
        results = eliminate(t, budget=BUDGET)
    except BudgetExceeded:  # pragma: no cover - eliminate records it instead
        assume(False)
    assume(combined_status(results) != "BudgetExceeded")
    for r in results:
        js = json.loads(json.dumps(r.to_json(), sort_keys=True))
        assert js == r.to_json()
        if r.witness is not None:
            back = FusionTable.from_json(js["witness"])
            assert back.to_json() == js["witness"]


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(small_types())
def test_propagate_idempotent_on_structures(t):
    group = abelian_classes(t.g_order)[0]
    try:
        table = next(iter(structured_tables(t, group, budget=BUDGET)), None)
    except BudgetExceeded:
        assume(False)
    assume(table is not None)
    once = propagate(table)
    if isinstance(once, FusionTable):
        twice = propagate(once)
        assert isinstance(twice, FusionTable) and twice.entries == once.entries
    else:
        assert propagate(table) == once


def test_random_prime_pairs_replay():
    primes = [n for n in range(3, 3000) if all(n % k for k in range(2, int(n**0.5) + 1))]
    rng = random.Random(7)
    for _ in range(10):
        p = rng.choice([2, 3, 5])
        q = rng.choice([x for x in primes if p**4 < x <= p**4 + 400])
        verdicts = classify_p2q2(p, q)
        assert replay_all(verdicts) == [v.outcome for v in verdicts]
