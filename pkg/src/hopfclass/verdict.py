"""Per-divisor classification of semisimple Hopf algebras of dimension p^2 q^2.

One :class:`CaseVerdict` is produced per candidate order of G(H*). Every
verdict ends in a *decisive* trace step whose conclusion is the outcome
label; the steps before it hold the computed evidence (enumerations,
filters, residual checks, fusion searches) or the cited structural result.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import gcd

from .arithmetic import (
    DimensionProfile,
    coideal_obstruction,
    divisors,
    enumerate_dimension_solutions,
    is_prime,
    no_solution_check,
)
from .fusion.search import (
    DEFAULT_BUDGET,
    INFEASIBLE,
    combined_status,
    eliminate,
    residual_contradiction,
)
from .fusion.structure import representable
from .rules import ProofTrace
from .typeprofile import AlgebraType, frobenius_degree_set, screen_types

IMPOSSIBLE = "Impossible"
UPPER = "UpperSemisolvable"
LOWER = "LowerSemisolvable"
SEMISOLVABLE = "Semisolvable"
SEMI_OR_BIPRODUCT = "SemisolvableOrBiproduct"
BIPRODUCT_CANDIDATE = "BiproductCandidate"
DUAL_GROUP_ALGEBRA = "DualGroupAlgebra"
UNSUPPORTED = "Unsupported"

OUTCOMES = (
    IMPOSSIBLE, UPPER, LOWER, SEMISOLVABLE, SEMI_OR_BIPRODUCT,
    BIPRODUCT_CANDIDATE, DUAL_GROUP_ALGEBRA, UNSUPPORTED,
)
# labels allowed by the semisolvable-or-biproduct dichotomy
DICHOTOMY = frozenset({UPPER, LOWER, SEMISOLVABLE, SEMI_OR_BIPRODUCT})

ENUMERATION_LIMIT = 5000  # largest dim for which surviving types are listed


class HypothesisViolation(ValueError):
    pass


class DivisibilityViolation(ValueError):
    pass


@dataclass
class CaseVerdict:
    profile: DimensionProfile
    g_order: int | None
    outcome: str
    surviving: list[AlgebraType] | None = None  # None when not enumerated
    trace: ProofTrace = field(default_factory=ProofTrace)
    findings: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def __post_init__(self) -> None:
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome}")

    @property
    def dim(self) -> int:
        return self.profile.dim

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "p": self.profile.p,
            "q": self.profile.q,
            "dim": self.dim,
            "g_order": self.g_order,
            "outcome": self.outcome,
            "surviving_types": None if self.surviving is None else [t.notation for t in self.surviving],
            "trace": self.trace.to_json(),
            "findings": list(self.findings),
        }
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CaseVerdict":
        prof = DimensionProfile(obj["p"], obj["q"])
        surv = obj["surviving_types"]
        from .typeprofile import parse_type

        return cls(
            prof,
            obj["g_order"],
            obj["outcome"],
            None if surv is None else [parse_type(s) for s in surv],
            ProofTrace.from_json(obj["trace"]),
            list(obj["findings"]),
            obj.get("seconds", 0.0),
        )


# ------------------------------------------------------------------ rules
def biproduct_condition(gH: int, gHstar: int, p: int) -> bool:
    if gH < 1 or gHstar < 1:
        raise ValueError("group orders must be positive")
    return gcd(gH, gHstar) == p * p


def subalgebra_semisolvability_rule(dimK: int, profile: DimensionProfile) -> bool:
    """True iff a Hopf subalgebra of dimension ``dimK`` forces lower semisolvability."""
    if dimK < 1 or profile.dim % dimK:
        raise DivisibilityViolation(f"{dimK} does not divide {profile.dim}")
    return dimK == profile.p * profile.q**2


# ---------------------------------------------------------------- helpers
def _timed(fn, *args) -> CaseVerdict:
    start = time.perf_counter()
    v = fn(*args)
    v.seconds = time.perf_counter() - start
    return v


def _decide(v: CaseVerdict, rule: str, detail: str, **data) -> CaseVerdict:
    v.trace.add(rule, detail, v.outcome, **data)
    v.trace.add("verdict", f"|G(H*)| = {v.g_order}: {v.outcome}", v.outcome, g=v.g_order, outcome=v.outcome)
    return v


def _survivors(prof: DimensionProfile, g: int, v: CaseVerdict, **pins) -> list[AlgebraType] | None:
    """Types passing every filter and the residual rule; None above the size limit."""
    if prof.dim > ENUMERATION_LIMIT:
        return None
    out = []
    reports = screen_types(prof, g, pins or None)
    for rep in reports:
        if not rep.passed:
            continue
        if residual_contradiction(rep.type) is not None:
            continue
        out.append(rep.type)
    v.trace.add(
        "dimension-equation",
        f"{len(reports)} types with |G(H*)| = {g}; {len(out)} pass the filters and the residual rule",
        "enumerated",
        dim=prof.dim, g=g, pins=pins, types=[r.type.notation for r in reports],
        surviving=[t.notation for t in out],
    )
    return out


def _stabilizer_residual(v: CaseVerdict, degree: int, g: int, higher: list[int]) -> bool:
    """Record whether a trivial stabilizer is possible for a degree class.

    Returns True when the residual ``degree^2 - 1`` is expressible; False
    means every character of that degree has a nontrivial stabilizer.
    """
    ok = representable(degree * degree - 1, higher)
    v.trace.add(
        "degree-residual",
        f"a trivial stabilizer leaves residual {degree * degree - 1} in chi_{degree} chi_{degree}^*; "
        + ("expressible" if ok else f"not a sum of degrees {higher}"),
        "possible" if ok else "excluded",
        degree=degree, stabilizer=1, residual=degree * degree - 1, parts=list(higher), expressible=ok,
    )
    return ok


def _no_trivial_stabilizer_classes(v: CaseVerdict, prof: DimensionProfile, g: int, low: list[int]) -> bool:
    """Stabilizers of low-degree characters are trivial when gcd(g, d^2) = 1.

    Then the residual d^2 - 1 must be a sum of degrees; when it is not,
    no character of degree d exists. Returns True iff all ``low`` are excluded.
    """
    higher = sorted(frobenius_degree_set(prof) - {1})
    excluded = True
    for d in low:
        if gcd(g, d * d) != 1:
            excluded = False
            continue
        v.trace.add("stabilizer-divides-degsq", f"|G[chi_{d}]| divides gcd({g}, {d * d}) = 1", "trivial",
                    degree=d, g=g, gcd=1)
        if _stabilizer_residual(v, d, g, higher):
            excluded = False
    return excluded


def _fusion_eliminate(v: CaseVerdict, types: list[AlgebraType], budget: int) -> bool:
    """Run the fusion search on each type; True iff every one is Infeasible."""
    all_infeasible = True
    for t in types:
        results = eliminate(t, budget)
        status = combined_status(results)
        for r in results:
            for step in r.trace:
                v.trace.append(step)
        v.trace.add(
            "fusion-infeasible" if status == INFEASIBLE else "fusion-feasible",
            f"{t.notation}: {status} over group classes {[r.group.label for r in results]}",
            status,
            type=t.notation, status=status, nodes=sum(r.nodes for r in results),
            groups=[r.group.label for r in results],
        )
        if status != INFEASIBLE:
            all_infeasible = False
            v.findings.append(f"fusion search on {t.notation} returned {status}, expected Infeasible")
    return all_infeasible


def _biproduct_case(v: CaseVerdict, prof: DimensionProfile, g: int, g_h: int | None) -> CaseVerdict:
    p, q = prof.p, prof.q
    obs = coideal_obstruction(p, q)
    v.trace.add(
        "coideal-obstruction",
        f"q^2 = 1 + m p solvable: {obs.eq1_solvable}; q^2 = q + n p solvable: {obs.eq2_solvable}",
        "obstructed" if obs.obstructed else "not obstructed",
        p=p, q=q, eq1=obs.eq1_solvable, eq2=obs.eq2_solvable, obstructed=obs.obstructed,
    )
    if obs.obstructed:
        v.outcome = SEMISOLVABLE
        return _decide(v, "coideal-obstruction", "no biproduct decomposition exists, so H is semisolvable",
                       p=p, q=q, obstructed=True)
    if g_h is not None and biproduct_condition(g_h, g, p):
        v.outcome = BIPRODUCT_CANDIDATE
        return _decide(v, "biproduct-gcd", f"gcd(|G(H)|, |G(H*)|) = gcd({g_h}, {g}) = {p * p}",
                       gH=g_h, gHstar=g, p=p)
    v.outcome = SEMI_OR_BIPRODUCT
    return _decide(v, "biproduct-or-semisolvable", f"|G(H*)| = {g} is p^2 or p^2 q", g=g, p=p, q=q,
                   gH=g_h)


def _quotient_candidates(v: CaseVerdict, prof: DimensionProfile, g: int) -> list[int]:
    """Possible dims of the low-degree quotient for |G(H*)| in {p, pq}."""
    p, q, dim = prof.p, prof.q, prof.dim
    v.trace.add("no-solution", f"c = 0 needs {dim} = {g} + k {p * p}", "c != 0",
                dim=dim, offset=g, square=p * p, holds=no_solution_check(dim, g, p * p))
    left = []
    for d in divisors(dim):
        if d % g or d == dim:
            continue
        if d == p * p:
            v.trace.add("masuoka-p2", f"a quotient of dimension {d} is a group algebra dual inside kG(H*); "
                        f"{d} does not divide {g}", "excluded", dim_quotient=d, g=g, holds=g % d != 0)
            if g % d:
                continue
        elif d != p * q * q:
            holds = no_solution_check(dim, d, q * q)
            v.trace.add("no-solution", f"{dim} = {d} + c {q * q} has no solution c >= 0", "excluded" if holds else "open",
                        dim=dim, offset=d, square=q * q, holds=holds)
            if holds:
                continue
        left.append(d)
    return left


# ------------------------------------------------------------------ p^2 q^2
def classify_p2q2(p: int, q: int, g_h: int | None = None, budget: int = DEFAULT_BUDGET) -> list[CaseVerdict]:
    """One verdict per divisor of p^2 q^2, assuming p^4 < q."""
    if not (is_prime(p) and is_prime(q)) or p == q:
        raise HypothesisViolation(f"p = {p}, q = {q} must be distinct primes")
    if p**4 >= q:
        hint = " (use classify_4q2)" if p == 2 else ""
        raise HypothesisViolation(f"p^4 = {p**4} >= q = {q}{hint}")
    prof = DimensionProfile(p, q)
    return [_timed(_case_general, prof, g, g_h) for g in divisors(prof.dim)]


def _case_general(prof: DimensionProfile, g: int, g_h: int | None) -> CaseVerdict:
    p, q, dim = prof.p, prof.q, prof.dim
    v = CaseVerdict(prof, g, IMPOSSIBLE)
    v.trace.add("nichols-zoeller", f"{g} divides {dim}", "admissible", g=g, dim=dim)
    if g == 1:
        v.surviving = []
        return _decide(v, "nontrivial-grouplike", "|G(H*)| = 1 is excluded", g=g)
    if g == dim:
        v.outcome = DUAL_GROUP_ALGEBRA
        v.surviving = [AlgebraType(((1, dim),), prof)]
        return _decide(v, "dual-group-algebra", f"|G(H*)| = {dim} = dim H", g=g, dim=dim)
    if g in (p, p * q):
        left = _quotient_candidates(v, prof, g)
        v.surviving = _survivors(prof, g, v)
        if v.surviving is not None:
            bad = [t.notation for t in v.surviving if not any(f.startswith("quotient-dim-pq2") for f in _flags(t))]
            if bad:
                v.findings.append(f"types without a quotient of dimension p q^2: {bad}")
        if left != [p * q * q]:
            v.outcome = UNSUPPORTED
            v.findings.append(f"quotient dimensions {left} remain; expected only {p * q * q}")
            return _decide(v, "p-part-quotient", f"undecided quotient dimensions {left}", g=g, left=left)
        v.outcome = UPPER
        return _decide(v, "upper-from-quotient-pq2", f"the low-degree quotient has dimension {p * q * q}",
                       g=g, dim_quotient=p * q * q, p=p, q=q)
    if g in (q, q * q):
        excluded = _no_trivial_stabilizer_classes(v, prof, g, [p, p * p])
        if not excluded:
            v.outcome = UNSUPPORTED
            v.findings.append(f"degree p or p^2 characters not excluded for |G(H*)| = {g}")
            return _decide(v, "degree-residual", "low-degree characters remain", g=g)
        v.trace.add("nonprime-power-unit", f"{p}^2 = 1 + m {p} and {p}^4 = 1 + m {p} are impossible, so a = b = 0",
                    "a = b = 0", p=p, exponents=[2, 4])
        if g == q:
            holds = no_solution_check(dim, q, q * q)
            v.surviving = [] if holds else None
            if not holds:
                v.outcome = UNSUPPORTED
                v.findings.append(f"{dim} = {q} + c {q * q} unexpectedly solvable")
                return _decide(v, "no-solution", "equation solvable", dim=dim, offset=q, square=q * q, holds=False)
            return _decide(v, "no-solution", f"{dim} = {q} + c {q * q} has no solution c >= 0",
                           dim=dim, offset=q, square=q * q, holds=True)
        return _central_case(v, prof, g)
    if g == p * q * q:
        v.surviving = _survivors(prof, g, v)
        v.outcome = UPPER
        return _decide(v, "upper-from-quotient-pq2", f"kG(H*) is a Hopf subalgebra of H* of dimension {g}",
                       g=g, dim_quotient=g, p=p, q=q)
    # g in (p^2, p^2 q)
    v.surviving = _survivors(prof, g, v)
    return _biproduct_case(v, prof, g, g_h)


def _flags(t: AlgebraType) -> tuple[str, ...]:
    from .typeprofile import apply_filters

    return apply_filters(t).flags


def _central_case(v: CaseVerdict, prof: DimensionProfile, g: int) -> CaseVerdict:
    """|G(H*)| = q^2 with only degrees 1 and q left."""
    q = prof.q
    sols = enumerate_dimension_solutions(prof, g, frobenius_degree_set(prof), {prof.p: 0, prof.p**2: 0}
                                         if prof.regime != "small" else {2: 0})
    types = [AlgebraType.from_solution(s, prof) for s in sols]
    v.trace.add("dimension-equation", f"pinned enumeration gives {[t.notation for t in types]}", "enumerated",
                dim=prof.dim, g=g, types=[t.notation for t in types])
    if len(types) != 1 or types[0].degrees != [1, q]:
        v.outcome = UNSUPPORTED
        v.findings.append(f"|G(H*)| = q^2 left types {[t.notation for t in types]}")
        v.surviving = types
        return _decide(v, "dimension-equation", "unexpected types", g=g)
    t = types[0]
    v.surviving = [t]
    n = t.count(q)
    v.trace.add("orbit-lengths", f"{n} characters of degree {q}; nontrivial orbit lengths are at least {q}",
                "all orbits fixed", size=n, g=g, smallest_orbit=min(d for d in divisors(g) if d > 1))
    v.outcome = UPPER
    return _decide(v, "central-grouplikes", f"G(H*) fixes every character of {t.notation}", type=t.notation, g=g)


# -------------------------------------------------------------------- 4 q^2
def classify_4q2(q: int, g_h: int | None = None, budget: int = DEFAULT_BUDGET) -> list[CaseVerdict]:
    """One verdict per admissible |G(H*)| for dimension 4 q^2."""
    if not is_prime(q) or q == 2:
        raise HypothesisViolation(f"q = {q} must be an odd prime")
    if q == 3:
        prof = DimensionProfile(2, 3)
        v = CaseVerdict(prof, None, SEMISOLVABLE, None)
        v.trace.add("dim36-cited", "dim H = 36: cited classification, no computation", SEMISOLVABLE, dim=36)
        v.trace.add("verdict", "dimension 36: upper or lower semisolvable", SEMISOLVABLE, g=None, outcome=SEMISOLVABLE)
        return [v]
    if q > 16:
        return classify_p2q2(2, q, g_h, budget)
    prof = DimensionProfile(2, q)
    return [_timed(_case_small, prof, g, g_h, budget) for g in divisors(prof.dim)]


def _case_small(prof: DimensionProfile, g: int, g_h: int | None, budget: int) -> CaseVerdict:
    q, dim = prof.q, prof.dim
    v = CaseVerdict(prof, g, IMPOSSIBLE)
    v.trace.add("nichols-zoeller", f"{g} divides {dim}", "admissible", g=g, dim=dim)
    higher = [2, 4, q]
    if g == 1:
        v.surviving = []
        return _decide(v, "nontrivial-grouplike", "|G(H*)| = 1 is excluded", g=g)
    if g == dim:
        v.outcome = DUAL_GROUP_ALGEBRA
        v.surviving = [AlgebraType(((1, dim),), prof)]
        return _decide(v, "dual-group-algebra", f"|G(H*)| = {dim} = dim H", g=g, dim=dim)

    if g in (2, 2 * q):
        # chi_2 chi_2^* has no room for a trivial stabilizer: residual 3
        if _stabilizer_residual(v, 2, g, higher):
            v.findings.append("degree-2 characters may have trivial stabilizer")
        empty_a0 = _pinned(v, prof, g, {2: 0}) if g == 2 * q else None
        if g == 2 and _pinned(v, prof, g, {q: 0}):
            v.findings.append("types with c = 0 exist for |G(H*)| = 2")
        survivors = _survivors(prof, g, v)
        a0 = [t for t in survivors if t.count(2) == 0]
        rest = [t for t in survivors if t.count(2) != 0]
        bad = [t.notation for t in rest if not any(f.startswith("quotient-dim-pq2") for f in _flags(t))]
        if bad:
            v.findings.append(f"types without a quotient of dimension 2 q^2: {bad}")
        v.trace.add("p-part-quotient", f"a != 0 types all have a quotient of dimension {2 * q * q}",
                    "quotient 2q^2", g=g, types=[t.notation for t in rest], dim_quotient=2 * q * q)
        if g == 2 * q and empty_a0:
            v.findings.append(f"a = 0 types for |G(H*)| = {g}: {empty_a0}")
        if a0 and not _fusion_eliminate(v, a0, budget):
            v.outcome = UNSUPPORTED
            v.surviving = survivors
            return _decide(v, "fusion-feasible", "an a = 0 type was not refuted", g=g)
        v.surviving = rest
        v.outcome = UPPER
        return _decide(v, "upper-from-quotient-pq2", f"quotient Hopf algebra of dimension {2 * q * q}",
                       g=g, dim_quotient=2 * q * q, p=2, q=q)

    if g in (q, q * q):
        excluded = _no_trivial_stabilizer_classes(v, prof, g, [2])
        if not excluded:
            v.findings.append(f"degree-2 characters not excluded for |G(H*)| = {g}")
        survivors = _survivors_pinned(prof, g, v)
        if g == q * q:
            return _central_case(v, prof, g)
        if survivors and not _fusion_eliminate(v, survivors, budget):
            v.outcome = UNSUPPORTED
            v.surviving = survivors
            return _decide(v, "fusion-feasible", "a type survived the fusion search", g=g)
        v.surviving = []
        if survivors:
            return _decide(v, "fusion-infeasible", f"every a = 0 type is refuted: {[t.notation for t in survivors]}",
                           g=g, types=[t.notation for t in survivors])
        return _decide(v, "empty-enumeration", f"no type with a = 0 and |G(H*)| = {g}", dim=dim, g=g,
                       pins={"2": 0}, types=[])

    if g == 2 * q * q:
        v.surviving = _survivors(prof, g, v)
        v.outcome = UPPER
        return _decide(v, "upper-from-quotient-pq2", f"kG(H*) is a Hopf subalgebra of H* of dimension {g}",
                       g=g, dim_quotient=g, p=2, q=q)
    # g in (4, 4q)
    v.surviving = _survivors(prof, g, v)
    return _biproduct_case(v, prof, g, g_h)


def _pinned(v: CaseVerdict, prof: DimensionProfile, g: int, pins: dict) -> list[str]:
    sols = enumerate_dimension_solutions(prof, g, frobenius_degree_set(prof), pins)
    names = [AlgebraType.from_solution(s, prof).notation for s in sols]
    label = {d: l for d, l in prof.degree_labels().items()}
    pin_txt = ", ".join(f"{label[d]}={n}" for d, n in pins.items())
    v.trace.add(
        "empty-enumeration" if not names else "dimension-equation",
        f"{pin_txt}: " + (f"no type with |G(H*)| = {g}" if not names else f"types {names}"),
        "empty" if not names else "enumerated",
        dim=prof.dim, g=g, pins={str(d): n for d, n in pins.items()}, types=names,
    )
    return names


def _survivors_pinned(prof: DimensionProfile, g: int, v: CaseVerdict) -> list[AlgebraType]:
    """Surviving types for |G(H*)| in {q, q^2}: all a != 0 types fail the residual rule."""
    reports = screen_types(prof, g)
    refuted = [r.type.notation for r in reports if r.type.count(2) and residual_contradiction(r.type) is not None]
    open_a = [r.type.notation for r in reports if r.type.count(2) and residual_contradiction(r.type) is None]
    v.trace.add("degree-residual", f"{len(refuted)} types with a != 0 refuted by the residual rule",
                "a = 0", g=g, refuted=refuted, open=open_a)
    if open_a:
        v.findings.append(f"a != 0 types not refuted: {open_a}")
    _pinned(v, prof, g, {2: 0})
    return [r.type for r in reports if r.passed and r.type.count(2) == 0 and residual_contradiction(r.type) is None]


# ------------------------------------------------------------------ summary
def classify(p: int, q: int, g_h: int | None = None, budget: int = DEFAULT_BUDGET) -> list[CaseVerdict]:
    """Dispatch on the regime of (p, q)."""
    if p == 2:
        return classify_4q2(q, g_h, budget)
    return classify_p2q2(p, q, g_h, budget)


def findings(verdicts: list[CaseVerdict]) -> list[str]:
    out = []
    for v in verdicts:
        for f in v.findings:
            out.append(f"dim {v.dim}, |G(H*)| = {v.g_order}: {f}")
    return out
