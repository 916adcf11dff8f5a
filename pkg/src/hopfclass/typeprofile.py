"""Candidate algebra types and the filters that need no fusion data."""

from __future__ import annotations

import re
from functools import lru_cache
from math import gcd
from dataclasses import dataclass, field

from .arithmetic import (
    SMALL,
    DimensionProfile,
    TypeSolution,
    divisors,
    enumerate_dimension_solutions,
)
from .rules import citation


class TypeParseError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraType:
    """Simple-module dimensions with multiplicities, ``(1,n1;d2,n2;...)``.

    ``profile`` is optional so that small test algebras (group algebras of
    order 8, random instances) can be modelled with the same class.
    """

    entries: tuple[tuple[int, int], ...]
    profile: DimensionProfile | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        degs = [d for d, _ in self.entries]
        if not degs or degs[0] != 1:
            raise ValueError("degree 1 must be present and first")
        if any(b <= a for a, b in zip(degs, degs[1:])):
            raise ValueError("degrees must be strictly increasing")
        if any(n < 1 for _, n in self.entries):
            raise ValueError("counts must be positive")
        dim = self.dim
        if self.g_order and dim % self.g_order:
            raise ValueError(f"|G| = {self.g_order} does not divide {dim}")
        if self.profile is not None:
            if dim != self.profile.dim:
                raise ValueError(f"type has dimension {dim}, profile {self.profile.dim}")
            allowed = frobenius_degree_set(self.profile)
            bad = [d for d in degs if d not in allowed]
            if bad:
                raise ValueError(f"degrees {bad} outside {sorted(allowed)}")

    @property
    def dim(self) -> int:
        return sum(n * d * d for d, n in self.entries)

    @property
    def g_order(self) -> int:
        return self.entries[0][1]

    def count(self, degree: int) -> int:
        return dict(self.entries).get(degree, 0)

    @property
    def degrees(self) -> list[int]:
        return [d for d, _ in self.entries]

    @property
    def notation(self) -> str:
        return "(" + ";".join(f"{d},{n}" for d, n in self.entries) + ")"

    def __str__(self) -> str:
        return self.notation

    @classmethod
    def from_solution(cls, sol: TypeSolution, profile: DimensionProfile | None = None):
        entries = ((1, sol.g_order),) + tuple((d, n) for d, n in sol.counts if n)
        return cls(entries, profile)

    def to_json(self) -> dict:
        return {"type": self.notation, "dim": self.dim}


_TYPE_RE = re.compile(r"^\((\d+,\d+)(;\d+,\d+)*\)$")


def parse_type(text: str, profile: DimensionProfile | None = None) -> AlgebraType:
    """Parse ``"(1,2;4,3;5,2)"``; no whitespace allowed."""
    if not _TYPE_RE.match(text):
        raise TypeParseError(f"malformed type string {text!r}")
    pairs = tuple(
        tuple(int(x) for x in chunk.split(",")) for chunk in text[1:-1].split(";")
    )
    try:
        return AlgebraType(pairs, profile)
    except ValueError as exc:
        raise TypeParseError(f"{text}: {exc}") from exc


def frobenius_degree_set(profile: DimensionProfile) -> frozenset[int]:
    """Possible simple-module dimensions: 1, p, p^2 and q.

    Degrees must divide dim = p^2 q^2 and have square at most dim; pq is
    excluded since (pq)^2 = dim would leave no room for the trivial module,
    and q^2, p^2 q, ... exceed sqrt(dim).
    """
    p, q = profile.p, profile.q
    return frozenset({1, p, p * p, q})


@dataclass(frozen=True)
class Failure:
    rule: str
    citation: str
    detail: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "detail": self.detail}


@dataclass(frozen=True)
class FilterReport:
    type: AlgebraType
    failures: tuple[Failure, ...] = ()
    flags: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "type": self.type.notation,
            "passed": self.passed,
            "failures": [f.to_json() for f in self.failures],
            "flags": list(self.flags),
        }


def _fail(rule: str, detail: str) -> Failure:
    return Failure(rule, citation(rule), detail)


def nontrivial_grouplike_filter(t: AlgebraType) -> FilterReport:
    if t.g_order == 1:
        return FilterReport(t, (_fail("nontrivial-grouplike", "|G(H*)| = 1"),))
    return FilterReport(t)


def grouplike_count_bound_filter(t: AlgebraType) -> FilterReport:
    g = t.g_order
    fails = tuple(
        _fail("grouplike-count-bound", f"{g} does not divide {n}*{d}^2 = {n * d * d}")
        for d, n in t.entries[1:]
        if (n * d * d) % g
    )
    return FilterReport(t, fails)


def quotient_applies(t: AlgebraType) -> bool:
    """Whether the low-degree quotient argument is available for ``t``.

    With p^4 < q, products of characters of degree <= p^2 cannot reach
    degree q, so it always applies. For p = 2 and small q it needs the
    degree-2 characters to be fixed by all group-likes, which holds when
    |G(H*)| is 2 or 2q (no degree-3 characters exist to absorb the
    residual of chi_2 chi_2^*).
    """
    prof = t.profile
    if prof is None:
        return False
    if prof.regime == SMALL:
        return t.g_order in (2, 2 * prof.q)
    return True


def quotient_dimension(t: AlgebraType) -> int:
    prof = t.profile
    p = prof.p
    if prof.regime == SMALL:
        return t.g_order + t.count(2) * 4
    return t.g_order + t.count(p) * p * p + t.count(p * p) * p**4


def p_part_quotient_filter(t: AlgebraType) -> FilterReport:
    if not quotient_applies(t):
        return FilterReport(t)
    prof = t.profile
    dq = quotient_dimension(t)
    if prof.dim % dq:
        return FilterReport(
            t, (_fail("p-part-quotient", f"quotient dimension {dq} does not divide {prof.dim}"),)
        )
    flags = []
    if dq == prof.dim:
        flags.append("quotient-is-whole")
    if dq == prof.p * prof.q**2:
        flags.append(f"quotient-dim-pq2:{dq}")
    return FilterReport(t, (), tuple(flags))


@lru_cache(maxsize=None)
def _is_sum(total: int, parts: tuple[int, ...]) -> bool:
    if total == 0:
        return True
    if total < 0 or not parts:
        return False
    d = parts[0]
    return any(_is_sum(total - k * d, parts[1:]) for k in range(total // d + 1))


def degree_residual_filter(t: AlgebraType) -> FilterReport:
    """chi chi^* = (|G[chi]| group-likes) + higher terms, |G[chi]| | gcd(g, d^2)."""
    higher = tuple(d for d in t.degrees if d > 1)
    fails = []
    for d in higher:
        stabs = divisors(gcd(t.g_order, d * d))
        if not any(_is_sum(d * d - s, higher) for s in stabs):
            res = ", ".join(str(d * d - s) for s in stabs)
            fails.append(_fail("degree-residual", f"chi_{d} chi_{d}^* leaves {res}, not a sum of {list(higher)}"))
    return FilterReport(t, tuple(fails))


FILTERS = (
    nontrivial_grouplike_filter,
    grouplike_count_bound_filter,
    p_part_quotient_filter,
    degree_residual_filter,
)


def apply_filters(t: AlgebraType) -> FilterReport:
    failures, flags = [], []
    for f in FILTERS:
        rep = f(t)
        failures.extend(rep.failures)
        flags.extend(rep.flags)
    return FilterReport(t, tuple(failures), tuple(flags))


def screen_types(profile: DimensionProfile, g_order: int, fixed=None) -> list[FilterReport]:
    if g_order not in divisors(profile.dim):
        raise ValueError(f"{g_order} does not divide {profile.dim}")
    if g_order == profile.dim:
        return [apply_filters(AlgebraType(((1, g_order),), profile))]
    sols = enumerate_dimension_solutions(
        profile, g_order, frobenius_degree_set(profile), fixed
    )
    return [apply_filters(AlgebraType.from_solution(s, profile)) for s in sols]
