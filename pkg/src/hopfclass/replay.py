"""Independent re-verification of verdict traces.

Each step's claim is recomputed from its recorded inputs with small
self-contained routines (brute-force loops, no calls into the enumeration
or filter code), and the case outcome is re-derived from the decisive step
and the evidence the trace must contain for that outcome.
"""

from __future__ import annotations

import re
from math import gcd

from .rules import RULES

_TYPE = re.compile(r"\d+,\d+")


class ReplayError(AssertionError):
    pass


def _parse(text: str) -> list[tuple[int, int]]:
    return [tuple(int(x) for x in m.group().split(",")) for m in _TYPE.finditer(text)]


def _sum_of(total: int, parts) -> bool:
    parts = sorted(set(parts), reverse=True)

    def rec(rest, i):
        if rest == 0:
            return True
        if i == len(parts):
            return False
        return any(rec(rest - k * parts[i], i + 1) for k in range(rest // parts[i], -1, -1))

    return total >= 0 and rec(total, 0)


def _divs(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _residual_refutes(entries, g: int) -> bool:
    higher = [d for d, _ in entries if d > 1]
    for d in higher:
        if not any(_sum_of(d * d - s, higher) for s in _divs(gcd(g, d * d))):
            return True
    return False


def _brute_types(dim: int, g: int, p: int, q: int, pins: dict) -> list[str]:
    degs = [p, p * p, q]
    pin = {int(k): v for k, v in pins.items()}
    out = []
    rest = dim - g
    for a in range(rest // (p * p) + 1):
        for b in range((rest - a * p * p) // p**4 + 1):
            left = rest - a * p * p - b * p**4
            if left % (q * q):
                continue
            c = left // (q * q)
            counts = dict(zip(degs, (a, b, c)))
            if any(counts.get(d, 0) != n for d, n in pin.items()):
                continue
            ent = [(1, g)] + sorted((d, n) for d, n in counts.items() if n)
            out.append("(" + ";".join(f"{d},{n}" for d, n in ent) + ")")
    return sorted(out)


def _check_step(step, p: int, q: int, deep: bool) -> None:
    rule, data = step.rule, step.data
    if rule not in RULES:
        raise ReplayError(f"unknown rule {rule}")
    if step.citation != RULES[rule]:
        raise ReplayError(f"citation of {rule} differs from the catalogue")

    def need(cond: bool, why: str) -> None:
        if not cond:
            raise ReplayError(f"{rule}: {why}")

    if rule == "nichols-zoeller" and "dim" in data:
        need(data["dim"] % data["g"] == 0, "order does not divide dim")
    elif rule == "nontrivial-grouplike" and "g" in data and step.conclusion:
        need(data["g"] == 1, "only |G(H*)| = 1 is excluded")
    elif rule == "no-solution" and "offset" in data:
        dim, off, sq = data["dim"], data["offset"], data["square"]
        holds = not any(off + c * sq == dim for c in range(dim // sq + 1))
        need(holds == data["holds"], "solvability recomputed differently")
    elif rule in ("empty-enumeration", "dimension-equation") and "types" in data and "pins" in data:
        want = sorted(_brute_types(data["dim"], data["g"], p, q, data["pins"]))
        need(sorted(data["types"]) == want, f"enumeration gives {want}")
    elif rule == "degree-residual" and "residual" in data:
        need(_sum_of(data["residual"], data["parts"]) == data["expressible"], "representability differs")
    elif rule == "degree-residual" and "refuted" in data:
        for t in data["refuted"]:
            need(_residual_refutes(_parse(t), data["g"]), f"{t} is not refuted")
        for t in data["open"]:
            need(not _residual_refutes(_parse(t), data["g"]), f"{t} is refuted")
    elif rule == "degree-residual" and "type" in data:
        need(_residual_refutes(_parse(data["type"]), data["g"]), "type is not refuted")
    elif rule == "stabilizer-divides-degsq" and "gcd" in data:
        need(gcd(data["g"], data["degree"] ** 2) == data["gcd"], "gcd differs")
    elif rule == "nonprime-power-unit":
        need(all((data["p"] ** k - 1) % data["p"] != 0 for k in data["exponents"]), "unit equation solvable")
    elif rule == "masuoka-p2":
        need((data["g"] % data["dim_quotient"] != 0) == data["holds"], "divisibility differs")
    elif rule == "coideal-obstruction" and "eq1" in data:
        e1 = (data["q"] ** 2 - 1) % data["p"] == 0
        e2 = (data["q"] ** 2 - data["q"]) % data["p"] == 0
        need((e1, e2) == (data["eq1"], data["eq2"]), "congruences differ")
        need(data["obstructed"] == (not e1 and not e2), "obstruction flag differs")
    elif rule == "orbit-lengths" and "smallest_orbit" in data:
        smallest = min(d for d in _divs(data["g"]) if d > 1)
        need(smallest == data["smallest_orbit"] and data["size"] < smallest, "a nontrivial orbit fits")
    elif rule == "p-part-quotient" and "types" in data:
        for t in data["types"]:
            a = dict(_parse(t)).get(2, 0)
            need(data["g"] + 4 * a == data["dim_quotient"], f"{t} has another quotient dimension")
    elif rule == "fusion-infeasible" and "status" in data and deep:
        from .fusion.search import combined_status, eliminate
        from .typeprofile import parse_type

        got = combined_status(eliminate(parse_type(data["type"])))
        need(got == data["status"], f"search now returns {got}")


_DECISIVE = {
    "nontrivial-grouplike": "Impossible",
    "no-solution": "Impossible",
    "empty-enumeration": "Impossible",
    "fusion-infeasible": "Impossible",
    "dual-group-algebra": "DualGroupAlgebra",
    "upper-from-quotient-pq2": "UpperSemisolvable",
    "central-grouplikes": "UpperSemisolvable",
    "lower-semisolvable-pq2": "LowerSemisolvable",
    "biproduct-or-semisolvable": "SemisolvableOrBiproduct",
    "biproduct-gcd": "BiproductCandidate",
    "coideal-obstruction": "Semisolvable",
    "dim36-cited": "Semisolvable",
}


def _evidence(steps, decisive, p: int, q: int, dim: int, g) -> None:
    rule, data = decisive.rule, decisive.data
    by_rule: dict[str, list] = {}
    for s in steps:
        by_rule.setdefault(s.rule, []).append(s)

    def need(cond: bool, why: str) -> None:
        if not cond:
            raise ReplayError(f"{rule}: {why}")

    if rule == "nontrivial-grouplike":
        need(g == 1, "g is not 1")
    elif rule == "no-solution":
        need(data["holds"] and data["offset"] == g, "certificate does not cover the case")
        # low degrees must have been excluded first
        need(any(s.conclusion == "a = b = 0" for s in steps), "a = b = 0 not established")
    elif rule == "empty-enumeration":
        need(not data["types"] and data["g"] == g, "enumeration not empty")
        need(any(s.rule == "degree-residual" and "refuted" in s.data for s in steps), "a = 0 pin not justified")
    elif rule == "fusion-infeasible":
        names = set(data["types"])
        done = {s.data["type"] for s in by_rule.get("fusion-infeasible", []) if s.data.get("status") == "Infeasible"}
        need(names <= done, "a type lacks an Infeasible search")
    elif rule == "dual-group-algebra":
        need(g == dim, "g differs from dim")
    elif rule == "upper-from-quotient-pq2":
        dq = data["dim_quotient"]
        need(dq == p * q * q, "quotient dimension is not p q^2")
        if g == dq:
            return
        if p == 2 and q < 17:
            need(any(s.rule == "p-part-quotient" for s in steps), "quotient step missing")
            need(any(s.rule == "degree-residual" and s.data.get("degree") == 2 and not s.data.get("expressible", True)
                     for s in steps), "degree-2 stabilizer not forced")
            enum = [s for s in by_rule.get("dimension-equation", []) if "surviving" in s.data]
            a0 = [t for s in enum for t in s.data["surviving"] if 2 not in dict(_parse(t))]
            done = {s.data["type"] for s in by_rule.get("fusion-infeasible", []) if s.data.get("status") == "Infeasible"}
            need(set(a0) <= done, "an a = 0 type lacks an Infeasible search")
            return
        excluded = {s.data["offset"] for s in by_rule.get("no-solution", []) if s.data["holds"]}
        excluded |= {s.data["dim_quotient"] for s in by_rule.get("masuoka-p2", []) if s.data["holds"]}
        cand = {d for d in _divs(dim) if d % g == 0 and d not in (dim, dq)}
        need(cand <= excluded, f"quotient dimensions {sorted(cand - excluded)} not excluded")
    elif rule == "central-grouplikes":
        need(any(s.rule == "orbit-lengths" and s.data.get("g") == g for s in steps), "orbit step missing")
    elif rule == "biproduct-or-semisolvable":
        need(g in (p * p, p * p * q), "g is not p^2 or p^2 q")
    elif rule == "biproduct-gcd":
        need(gcd(data["gH"], data["gHstar"]) == p * p, "gcd is not p^2")
    elif rule == "coideal-obstruction":
        need(g in (p * p, p * p * q), "g is not p^2 or p^2 q")
        need((q * q - 1) % p != 0 and (q * q - q) % p != 0, "p divides q - 1 or q + 1")
    elif rule == "dim36-cited":
        need(dim == 36, "dimension is not 36")


def replay_case(verdict, deep: bool = False) -> str:
    """Re-derive the outcome of a CaseVerdict (or its JSON) from its trace."""
    if isinstance(verdict, dict):
        from .verdict import CaseVerdict

        verdict = CaseVerdict.from_json(verdict)
    p, q = verdict.profile.p, verdict.profile.q
    steps = list(verdict.trace)
    if not steps or steps[-1].rule != "verdict":
        raise ReplayError("trace does not end in a verdict step")
    for s in steps:
        _check_step(s, p, q, deep)
    decisive = steps[-2]
    outcome = steps[-1].conclusion
    if decisive.conclusion != outcome:
        raise ReplayError("decisive step does not carry the outcome")
    if outcome == "Unsupported":
        return outcome
    expected = _DECISIVE.get(decisive.rule)
    if expected != outcome:
        raise ReplayError(f"rule {decisive.rule} cannot conclude {outcome}")
    _evidence(steps[:-2], decisive, p, q, verdict.dim, verdict.g_order)
    return outcome


def replay_all(verdicts, deep: bool = False) -> list[str]:
    return [replay_case(v, deep) for v in verdicts]
