"""Backtracking search for a consistent fusion table of a candidate type."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from ..arithmetic import divisors
from ..rules import ProofTrace
from ..typeprofile import AlgebraType
from .csp import FusionCSP
from .groups import GrouplikeGroup
from .structure import (
    BudgetExceeded,
    NodeCounter,
    enumerate_class_structures,
    representable,
)
from .table import (
    Contradiction,
    FusionTable,
    build_skeleton,
    stabilizer_of,
    with_structure,
)

DEFAULT_BUDGET = 10**7

FEASIBLE = "Feasible"
INFEASIBLE = "Infeasible"
UNSUPPORTED = "Unsupported"
BUDGET_EXCEEDED = "BudgetExceeded"


def residual_contradiction(t: AlgebraType, g_order: int | None = None) -> Contradiction | None:
    """chi chi^* minus its group-like part must be a sum of higher degrees.

    The group-like part has |G[chi]| terms, and |G[chi]| divides both
    |G(H*)| and deg(chi)^2. Needs no fusion data at all.
    """
    g = t.g_order if g_order is None else g_order
    higher = [d for d in t.degrees if d > 1]
    for d in higher:
        options = [s for s in divisors(gcd(g, d * d))]
        if not any(representable(d * d - s, higher) for s in options):
            res = ", ".join(str(d * d - s) for s in options)
            return Contradiction(
                "degree-residual",
                f"residual of chi_{d} chi_{d}^* is one of {res}; none is a sum of degrees {higher}",
                ((d,),),
            )
    return None


def propagate(table: FusionTable) -> FusionTable | Contradiction:
    """Close ``table`` under the rule set or report the violated rule."""
    bad = residual_contradiction(table.type, table.g)
    if bad is not None:
        return bad
    for d in sorted(set(table.degrees)):
        if d == 1 or not table.class_assigned(d):
            continue
        for x in table.degree_class(d):
            st = stabilizer_of(table, x)
            if isinstance(st, Contradiction):
                return st
    if not table.structure_known:
        return table
    csp = FusionCSP(table)
    if csp.contradiction is not None:
        return csp.contradiction
    dom = csp.propagate(list(csp.initial))
    if isinstance(dom, Contradiction):
        return dom
    bad = csp.closure_violation(dom)
    if bad is not None:
        return bad
    return table.with_entries(csp.entries(dom))


@dataclass
class SearchResult:
    status: str
    type: AlgebraType
    group: GrouplikeGroup
    nodes: int = 0
    witness: FusionTable | None = None
    trace: ProofTrace = field(default_factory=ProofTrace)
    structures: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_json(self, witness: bool = True) -> dict:
        out = {
            "type": self.type.notation,
            "group": self.group.label,
            "status": self.status,
            "nodes": self.nodes,
            "structures": self.structures,
            "trace": self.trace.to_json(),
        }
        if witness:
            out["witness"] = None if self.witness is None else self.witness.to_json()
        return out


def _class_sizes(t: AlgebraType) -> list[tuple[int, int]]:
    return [(d, n) for d, n in t.entries if d > 1]


def _assembled(skeleton: FusionTable, per_class):
    """Tables for every combination of per-class structures, in canonical order."""
    group = skeleton.group
    offsets = {}
    pos = group.order
    for d, n in _class_sizes(skeleton.type):
        offsets[d] = pos
        pos += n
    for choice in product(*(s for _, s in per_class)):
        dual = list(skeleton.dual)
        left = [list(r) for r in skeleton.left]
        for (d, _), cs in zip(per_class, choice):
            off = offsets[d]
            for k, dk in enumerate(cs.dual):
                dual[off + k] = off + dk
            for h in range(group.order):
                for k, img in enumerate(cs.left[h]):
                    left[h][off + k] = off + img
        yield with_structure(skeleton, dual, left)


def structured_tables(t: AlgebraType, group: GrouplikeGroup, focus=None, budget: int = DEFAULT_BUDGET):
    """Skeleton tables with duality and action filled in, one per structure choice."""
    counter = NodeCounter(budget)
    higher = [d for d in t.degrees if d > 1]
    per_class = [(d, enumerate_class_structures(group, n, d, higher, counter)) for d, n in _class_sizes(t)]
    yield from _assembled(build_skeleton(t, group, focus), per_class)


def search_consistent_table(
    t: AlgebraType,
    group: GrouplikeGroup,
    focus=None,
    budget: int = DEFAULT_BUDGET,
    relabel: dict[int, int] | None = None,
) -> SearchResult:
    """Exhaust duality, group-like action and multiplicities on the focus set.

    Returns Feasible with a witness or Infeasible with a trace; raises
    :class:`BudgetExceeded` when the node budget runs out. ``relabel``
    renames characters inside degree classes before the multiplicity search,
    which changes the exploration order but must not change the verdict.
    """
    skeleton = build_skeleton(t, group, focus)
    trace = ProofTrace()
    if not group.is_abelian:
        trace.add("fusion-infeasible", f"G(H*) = {group.label} is non-abelian; not modelled", UNSUPPORTED)
        return SearchResult(UNSUPPORTED, t, group, trace=trace)
    counter = NodeCounter(budget)
    bad = residual_contradiction(t, group.order)
    if bad is not None:
        trace.add(bad.rule, bad.detail, "contradiction", type=t.notation, g=group.order)
        trace.add("fusion-infeasible", f"{t.notation} refuted by propagation alone", INFEASIBLE,
                  type=t.notation, group=group.label, nodes=0)
        return SearchResult(INFEASIBLE, t, group, 0, None, trace, 0)

    higher = [d for d in t.degrees if d > 1]
    per_class = []
    for d, n in _class_sizes(t):
        structs = enumerate_class_structures(group, n, d, higher, counter)
        trace.add(
            "orbit-lengths",
            f"degree {d}: {len(structs)} duality/action structures up to relabeling",
            "structures",
            degree=d, count=len(structs),
        )
        per_class.append((d, structs))
        if not structs:
            trace.add("stabilizer-divides-degsq",
                      f"no action of {group.label} on {n} characters of degree {d} has admissible stabilizers",
                      "contradiction", degree=d, size=n)
            trace.add("fusion-infeasible", f"{t.notation} has no admissible structure", INFEASIBLE,
                      type=t.notation, group=group.label, nodes=counter.nodes)
            return SearchResult(INFEASIBLE, t, group, counter.nodes, None, trace, 0)

    stats: dict[str, int] = {}
    combos = 0
    for table in _assembled(skeleton, per_class):
        combos += 1
        if relabel:
            table = table.relabel(relabel)
        csp = FusionCSP(table)
        dom = csp.solve(counter, stats)
        if dom is not None:
            witness = table.with_entries(csp.entries(dom))
            trace.add("fusion-feasible", f"consistent table found after {counter.nodes} nodes", FEASIBLE,
                      type=t.notation, group=group.label, nodes=counter.nodes)
            return SearchResult(FEASIBLE, t, group, counter.nodes, witness, trace, combos)
    for rule in sorted(stats):
        trace.add(rule, f"{stats[rule]} dead ends closed by this rule", "contradiction", count=stats[rule])
    trace.add(
        "fusion-infeasible",
        f"{t.notation} with G(H*) = {group.label}: {combos} structures, {counter.nodes} nodes, no consistent table",
        INFEASIBLE,
        type=t.notation, group=group.label, nodes=counter.nodes, structures=combos,
    )
    return SearchResult(INFEASIBLE, t, group, counter.nodes, None, trace, combos)


def eliminate(t: AlgebraType, budget: int = DEFAULT_BUDGET, groups=None, focus=None) -> list[SearchResult]:
    """Run the search once per abelian group class of order |G(H*)|.

    A BudgetExceeded run is recorded with that status instead of raising.
    """
    from .groups import abelian_classes

    out = []
    for group in groups or abelian_classes(t.g_order):
        try:
            out.append(search_consistent_table(t, group, focus, budget))
        except BudgetExceeded as exc:
            res = SearchResult(BUDGET_EXCEEDED, t, group, exc.nodes)
            res.trace.add("fusion-infeasible", str(exc), BUDGET_EXCEEDED, nodes=exc.nodes)
            out.append(res)
    return out


def combined_status(results: list[SearchResult]) -> str:
    """Infeasible only if every group class is; Feasible if any is."""
    statuses = {r.status for r in results}
    if FEASIBLE in statuses:
        return FEASIBLE
    if BUDGET_EXCEEDED in statuses:
        return BUDGET_EXCEEDED
    if UNSUPPORTED in statuses:
        return UNSUPPORTED
    return INFEASIBLE
