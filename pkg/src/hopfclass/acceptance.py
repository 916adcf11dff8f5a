"""Acceptance criteria, shared by ``hopfclass verify-paper`` and the tests.

Each criterion returns a :class:`CriterionResult`. Details never contain
timings, so reports built with ``timings=False`` are byte-stable.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .arithmetic import (
    DimensionProfile,
    coideal_obstruction,
    enumerate_dimension_solutions,
    is_prime,
    no_solution_check,
)
from .fusion.groups import abelian_classes
from .fusion.oracle import group_fusion_table, grouplike_class, small_groups
from .fusion.search import (
    BUDGET_EXCEEDED,
    DEFAULT_BUDGET,
    FEASIBLE,
    INFEASIBLE,
    SearchResult,
    eliminate,
    propagate,
    search_consistent_table,
    structured_tables,
)
from .fusion.structure import BudgetExceeded
from .fusion.table import Contradiction, FusionTable
from .fusion.validate import validate
from .replay import ReplayError, _check_step, replay_case
from .rules import ProofTrace
from .typeprofile import AlgebraType, frobenius_degree_set, parse_type
from .verdict import (
    DUAL_GROUP_ALGEBRA,
    IMPOSSIBLE,
    SEMISOLVABLE,
    SEMI_OR_BIPRODUCT,
    UPPER,
    CaseVerdict,
    classify_4q2,
    classify_p2q2,
    findings,
)

SMALL_Q = (5, 7, 11, 13)
ELIMINATION_TYPES = (
    "(1,2;4,3;5,2)",
    "(1,2;4,6;7,2)",
    "(1,2;4,15;11,2)",
    "(1,2;4,21;13,2)",
    "(1,11;4,22;11,1)",
)


def answer_key_4q2(q: int) -> dict[int, str]:
    """Hand-transcribed case conclusions for dimension 4 q^2, 5 <= q <= 13."""
    return {
        1: IMPOSSIBLE,
        2: UPPER,
        4: SEMI_OR_BIPRODUCT,
        q: IMPOSSIBLE,
        2 * q: UPPER,
        4 * q: SEMI_OR_BIPRODUCT,
        q * q: UPPER,
        2 * q * q: UPPER,
        4 * q * q: DUAL_GROUP_ALGEBRA,
    }


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    findings: list[str] = field(default_factory=list)

    def line(self, timings: bool = True) -> str:
        mark = "PASS" if self.passed else "FAIL"
        t = f" ({self.seconds:.2f} s)" if timings else ""
        return f"[{mark}] criterion {self.id}: {self.name}{t} - {self.detail}"

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "kind": "criterion",
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "findings": list(self.findings),
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


def _timed(cid: int, name: str, limit: float | None, fn) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail, found = fn()
    except Exception as exc:  # a crash is a failed criterion, never a pass
        ok, detail, found = False, f"{type(exc).__name__}: {exc}", []
    secs = time.perf_counter() - start
    if limit is not None and secs > limit:
        ok = False
        detail += f"; exceeded the {limit:g} s limit"
    return CriterionResult(cid, name, ok, detail, secs, found)


def _solutions(q: int, g: int, pins: dict) -> list[dict]:
    prof = DimensionProfile(2, q)
    sols = enumerate_dimension_solutions(prof, g, frobenius_degree_set(prof), pins)
    return [s.named() for s in sols]


# ---------------------------------------------------------------- criteria
def criterion_1() -> CriterionResult:
    want = {5: [{"a": 0, "b": 3, "c": 2}], 7: [{"a": 0, "b": 6, "c": 2}],
            11: [{"a": 0, "b": 15, "c": 2}], 13: [{"a": 0, "b": 21, "c": 2}]}

    def run():
        got = {q: _solutions(q, 2, {"a": 0}) for q in SMALL_Q}
        return got == want, f"g=2, a=0 solutions {got}", []

    return _timed(1, "enumeration for |G(H*)| = 2, a = 0", 1.0, run)


def criterion_2() -> CriterionResult:
    want = {5: [], 7: [], 11: [{"a": 0, "b": 22, "c": 1}], 13: []}

    def run():
        got = {q: _solutions(q, q, {"a": 0}) for q in SMALL_Q}
        return got == want, f"g=q, a=0 solutions {got}", []

    return _timed(2, "enumeration for |G(H*)| = q, a = 0", 1.0, run)


def criterion_3() -> CriterionResult:
    def run():
        got = {q: _solutions(q, q * q, {"a": 0}) for q in SMALL_Q}
        ok = all(v == [{"a": 0, "b": 0, "c": 3}] for v in got.values())
        return ok, f"g=q^2, a=0 solutions {got}", []

    return _timed(3, "enumeration for |G(H*)| = q^2, a = 0", 1.0, run)


def criterion_4() -> CriterionResult:
    def run():
        got = {q: _solutions(q, 2 * q, {"a": 0}) for q in SMALL_Q}
        return all(v == [] for v in got.values()), f"g=2q, a=0 solutions {got}", []

    return _timed(4, "enumeration for |G(H*)| = 2q, a = 0", 1.0, run)


def criterion_5(budget: int = DEFAULT_BUDGET) -> CriterionResult:
    def run():
        parts, found, ok = [], [], True
        for text in ELIMINATION_TYPES:
            t = parse_type(text)
            t0 = time.perf_counter()
            results = eliminate(t, budget)
            secs = time.perf_counter() - t0
            statuses = [(r.group.label, r.status, r.nodes) for r in results]
            parts.append(f"{text}: " + ", ".join(f"{g} {s} ({n} nodes)" for g, s, n in statuses))
            if any(r.status != INFEASIBLE for r in results):
                ok = False
            for r in results:
                if r.status == FEASIBLE:
                    found.append(f"fusion search finds {text} Feasible for {r.group.label}")
                if r.status == BUDGET_EXCEEDED:
                    parts[-1] += " [BudgetExceeded]"
            if secs > 300:
                ok = False
                parts[-1] += " [over 5 min]"
        return ok, "; ".join(parts), found

    return _timed(5, "fusion elimination of the five types", None, run)


def criterion_6() -> CriterionResult:
    def run():
        t = parse_type("(1,2;4,21;13,2)")
        (res,) = eliminate(t)
        rules = [s.rule for s in res.trace]
        ok = res.status == INFEASIBLE and res.nodes == 0 and "degree-residual" in rules
        return ok, f"{res.status} with {res.nodes} nodes; rules {rules}", []

    return _timed(6, "propagation-only refutation of (1,2;4,21;13,2)", None, run)


def criterion_7() -> CriterionResult:
    def run():
        bad = []
        groups = small_groups()
        for g in groups:
            table = group_fusion_table(g)
            if validate(table):
                bad.append(f"{g.label}: oracle table rejected by the validator")
            if isinstance(propagate(table), Contradiction):
                bad.append(f"{g.label}: oracle table contradicts propagation")
            res = search_consistent_table(table.type, grouplike_class(table))
            if res.status != FEASIBLE:
                bad.append(f"{g.label}: search returns {res.status}")
            elif validate(res.witness):
                bad.append(f"{g.label}: witness rejected by the validator")
        ok = not bad and len(groups) == 42
        return ok, f"{len(groups)} groups of order <= 16; problems: {bad or 'none'}", []

    return _timed(7, "oracle tables of groups of order <= 16", 30.0, run)


def criterion_8() -> CriterionResult:
    def run():
        rows = []
        ok = True
        for p, q in ((2, 17), (2, 19), (3, 83)):
            dim = p * p * q * q
            checks = [no_solution_check(dim, off, q * q) for off in (p, p * q, p * p * q)]
            ok &= all(checks)
            rows.append(f"({p},{q}): {checks}")
        return ok, "; ".join(rows), []

    return _timed(8, "no-solution certificates for quotient dimensions p, pq, p^2 q", 1.0, run)


def criterion_9(budget: int = DEFAULT_BUDGET) -> CriterionResult:
    def run():
        ok, rows, found = True, [], []
        for q in SMALL_Q:
            verdicts = classify_4q2(q, budget=budget)
            got = {v.g_order: v.outcome for v in verdicts}
            key = answer_key_4q2(q)
            diff = {g: (got.get(g), key.get(g)) for g in set(got) | set(key) if got.get(g) != key.get(g)}
            ok &= not diff
            found += findings(verdicts)
            rows.append(f"q={q}: " + ("match" if not diff else f"mismatches {diff}"))
        return ok and not found, "; ".join(rows), found

    return _timed(9, "classification answer key for dimension 4 q^2", None, run)


def criterion_10() -> CriterionResult:
    def run():
        obs = coideal_obstruction(5, 1283)
        verdicts = classify_p2q2(5, 1283)
        sharp = {v.g_order: v.outcome for v in verdicts if v.g_order in (25, 25 * 1283)}
        p2 = [q for q in range(3, 2000) if is_prime(q) and coideal_obstruction(2, q).obstructed]
        ok = obs.obstructed and all(o == SEMISOLVABLE for o in sharp.values()) and not p2
        return ok, f"(5,1283) obstructed={obs.obstructed}, sharpened {sharp}; p=2 obstructed for {p2 or 'no q'}", []

    return _timed(10, "coideal obstruction sharpening", None, run)


# ------------------------------------------------------------ properties
def random_type(rng: random.Random, max_dim: int = 1000) -> AlgebraType:
    """A random algebra type with |G| <= 16, at most two higher degrees."""
    while True:
        g = rng.randint(1, 16)
        degs = sorted(rng.sample(range(2, 11), rng.randint(1, 2)))
        ent = [(1, g)] + [(d, rng.randint(1, 3)) for d in degs]
        dim = sum(d * d * n for d, n in ent)
        if dim <= max_dim and dim % g == 0:
            return AlgebraType(tuple(ent))


def random_relabel(t: AlgebraType, g: int, rng: random.Random) -> dict[int, int]:
    perm, pos = {}, g
    for d, n in t.entries[1:]:
        ids = list(range(pos, pos + n))
        shuffled = ids[:]
        rng.shuffle(shuffled)
        perm.update(zip(ids, shuffled))
        pos += n
    return perm


PROPERTY_BUDGET = 3000


def check_idempotence(t: AlgebraType, group) -> bool:
    table = next(iter(structured_tables(t, group)), None)
    if table is None:
        return True
    once = propagate(table)
    if isinstance(once, Contradiction):
        again = propagate(table)
        return isinstance(again, Contradiction) and again.rule == once.rule
    twice = propagate(once)
    return not isinstance(twice, Contradiction) and twice.entries == once.entries


def check_relabel(t: AlgebraType, group, base_status: str, rng: random.Random) -> bool | None:
    """Same feasibility verdict after relabeling; None when a budget ran out."""
    try:
        other = search_consistent_table(t, group, budget=PROPERTY_BUDGET,
                                        relabel=random_relabel(t, group.order, rng)).status
    except BudgetExceeded:
        return None
    return other == base_status


def check_roundtrip(res: SearchResult) -> bool:
    obj = json.loads(json.dumps(res.to_json(), sort_keys=True))
    if obj != res.to_json():
        return False
    if parse_type(res.type.notation) != res.type:
        return False
    if ProofTrace.from_json(obj["trace"]).to_json() != obj["trace"]:
        return False
    if res.witness is not None:
        w = FusionTable.from_json(obj["witness"])
        if w.to_json() != obj["witness"] or validate(w):
            return False
    return True


def check_trace(res: SearchResult) -> bool:
    try:
        for step in res.trace:
            _check_step(step, 0, 0, deep=False)
    except ReplayError:
        return False
    return True


def random_prime_pairs(rng: random.Random, n: int) -> list[tuple[int, int]]:
    out = []
    while len(out) < n:
        p = rng.choice((2, 3, 5))
        q = rng.randint(p**4 + 1, p**4 + 400)
        if is_prime(q):
            out.append((p, q))
    return out


def run_properties(n: int = 100, seed: int = 2024) -> dict[str, tuple[int, int]]:
    """(passed, checked) per property over ``n`` random types."""
    rng = random.Random(seed)
    tally = {k: [0, 0] for k in ("idempotence", "relabeling", "replay", "roundtrip")}

    def mark(key, ok):
        tally[key][1] += 1
        tally[key][0] += bool(ok)

    draws = 0
    while min(tally[k][1] for k in ("idempotence", "relabeling", "roundtrip")) < n and draws < 3 * n:
        draws += 1
        t = random_type(rng)
        group = rng.choice(abelian_classes(t.g_order))
        mark("idempotence", check_idempotence(t, group))
        try:
            res = search_consistent_table(t, group, budget=PROPERTY_BUDGET)
        except BudgetExceeded:
            continue
        mark("roundtrip", check_roundtrip(res))
        mark("replay", check_trace(res))
        rel = check_relabel(t, group, res.status, rng)
        if rel is not None:
            mark("relabeling", rel)
    for p, q in random_prime_pairs(rng, max(10, n // 10)):
        for v in classify_p2q2(p, q):
            try:
                ok = replay_case(v) == v.outcome
                back = CaseVerdict.from_json(json.loads(json.dumps(v.to_json())))
                ok &= back.to_json() == v.to_json() and replay_case(back) == v.outcome
            except ReplayError:
                ok = False
            mark("replay", ok)
    return {k: (a, b) for k, (a, b) in tally.items()}


def criterion_11(n: int = 100) -> CriterionResult:
    def run():
        tally = run_properties(n)
        ok = all(a == b and b >= n for a, b in tally.values())
        return ok, ", ".join(f"{k} {a}/{b}" for k, (a, b) in sorted(tally.items())), []

    return _timed(11, "property suites on random types", 120.0, run)


def criterion_12(results: list[CriterionResult] | None = None) -> CriterionResult:
    """Two renderings of the same deterministic work must match byte for byte."""

    def build():
        cases = []
        for q in SMALL_Q:
            cases += [v.to_json(timings=False) for v in classify_4q2(q)]
        cases += [v.to_json(timings=False) for v in classify_p2q2(2, 17)]
        return json.dumps(cases, sort_keys=True)

    def run():
        a, b = build(), build()
        ok = a == b
        if results is not None:
            r1 = json.dumps([r.to_json(False) for r in results], sort_keys=True)
            r2 = json.dumps([r.to_json(False) for r in results], sort_keys=True)
            ok &= r1 == r2
        return ok, "repeated classification reports are identical" if ok else "reports differ", []

    return _timed(12, "deterministic reports", None, run)


def run_all(budget: int = DEFAULT_BUDGET, property_count: int = 100) -> list[CriterionResult]:
    results = [
        criterion_1(), criterion_2(), criterion_3(), criterion_4(),
        criterion_5(budget), criterion_6(), criterion_7(), criterion_8(),
        criterion_9(budget), criterion_10(), criterion_11(property_count),
    ]
    results.append(criterion_12(results))
    return results
