"""Partial fusion tables of a character algebra.

Characters are numbered ``0 .. N-1``: the group-likes first (same index as
in the :class:`GrouplikeGroup`, so 0 is the counit), then the higher
degrees in ascending order. Multiplicities are stored per ordered triple
``(a, b, c)`` meaning ``m(c, a b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement

from ..rules import citation
from ..typeprofile import AlgebraType
from .groups import GrouplikeGroup


class GroupMismatch(ValueError):
    pass


class Unassigned(LookupError):
    pass


@dataclass(frozen=True)
class Contradiction:
    rule: str
    detail: str
    entries: tuple = ()

    @property
    def citation(self) -> str:
        return citation(self.rule)

    def __bool__(self) -> bool:  # a Contradiction is never a usable table
        return False

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "citation": self.citation,
            "detail": self.detail,
            "entries": [list(e) for e in self.entries],
        }


@dataclass(frozen=True)
class Character:
    id: int
    name: str
    degree: int
    dual: int | None


@dataclass(frozen=True)
class Stabilizer:
    character: int
    subgroup: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.subgroup)


@dataclass(frozen=True)
class NeedsEntries:
    pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True, eq=False)
class FusionTable:
    type: AlgebraType
    group: GrouplikeGroup
    degrees: tuple[int, ...]
    names: tuple[str, ...]
    dual: tuple[int | None, ...]
    left: tuple[tuple[int | None, ...], ...]  # left[h][x] = h x
    entries: dict = field(default_factory=dict)  # (a, b, c) -> m(c, a b)
    focus: tuple[tuple[int, int], ...] = ()

    # ----------------------------------------------------------- basics
    @property
    def size(self) -> int:
        return len(self.degrees)

    @property
    def g(self) -> int:
        return self.group.order

    def is_grouplike(self, x: int) -> bool:
        return x < self.g

    def characters(self) -> list[Character]:
        return [Character(i, self.names[i], self.degrees[i], self.dual[i]) for i in range(self.size)]

    def degree_class(self, degree: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == degree]

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out

    def class_assigned(self, degree: int) -> bool:
        ids = self.degree_class(degree)
        return all(self.dual[x] is not None for x in ids) and all(
            self.left[h][x] is not None for h in range(self.g) for x in ids
        )

    @property
    def structure_known(self) -> bool:
        return all(d is not None for d in self.dual) and all(
            x is not None for row in self.left for x in row
        )

    def right(self, x: int, h: int) -> int:
        """``x h``, obtained as ``(h^{-1} x^*)^*``."""
        d = self.dual
        return d[self.left[self.group.inverse[h]][d[x]]]

    def determined(self, a: int, b: int, c: int) -> int | None:
        """m(c, a b) when a group-like is involved, else None."""
        g = self.g
        if a < g:
            return int(self.left[a][b] == c)
        if b < g:
            return int(self.right(a, b) == c)
        if c < g:
            return int(b == self.right(self.dual[a], c))
        return None

    def mult(self, a: int, b: int, c: int) -> int | None:
        if self.structure_known:
            v = self.determined(a, b, c)
            if v is not None:
                return v
        return self.entries.get((a, b, c))

    def product(self, a: int, b: int) -> dict[int, int] | None:
        """Decomposition of a b when every constituent is known."""
        out = {}
        for c in range(self.size):
            v = self.mult(a, b, c)
            if v is None:
                return None
            if v:
                out[c] = v
        return out

    def with_entries(self, entries: dict) -> "FusionTable":
        merged = dict(self.entries)
        merged.update(entries)
        return replace(self, entries=merged)

    def relabel(self, perm: dict[int, int]) -> "FusionTable":
        """Rename characters by ``perm`` (must preserve degrees; group-likes fixed)."""
        full = [perm.get(i, i) for i in range(self.size)]
        if any(self.degrees[i] != self.degrees[full[i]] for i in range(self.size)):
            raise ValueError("relabeling must preserve degrees")
        inv = [0] * self.size
        for i, j in enumerate(full):
            inv[j] = i
        m = lambda x: None if x is None else full[x]  # noqa: E731
        dual = tuple(m(self.dual[inv[j]]) for j in range(self.size))
        left = tuple(tuple(m(row[inv[j]]) for j in range(self.size)) for row in self.left)
        names = tuple(self.names[inv[j]] for j in range(self.size))
        entries = {(full[a], full[b], full[c]): v for (a, b, c), v in self.entries.items()}
        focus = tuple((full[a], full[b]) for a, b in self.focus)
        return replace(self, dual=dual, left=left, names=names, entries=entries, focus=focus)

    def to_json(self) -> dict:
        ent = sorted(
            ([a, b, c, v] for (a, b, c), v in self.entries.items() if v),
        )
        return {
            "type": self.type.notation,
            "group": self.group.label,
            "characters": [
                {"id": c.id, "name": c.name, "degree": c.degree, "dual": c.dual}
                for c in self.characters()
            ],
            "group_table": [list(r) for r in self.group.table],
            "left_action": [list(r) for r in self.left],
            "focus": [list(p) for p in self.focus],
            "entries": ent,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FusionTable":
        """Inverse of :meth:`to_json`; zero multiplicities are not restored."""
        from ..typeprofile import parse_type

        chars = obj["characters"]
        g = len(obj["group_table"])
        group = GrouplikeGroup(
            tuple(c["name"] for c in chars[:g]),
            tuple(tuple(r) for r in obj["group_table"]),
            obj["group"],
        )
        return cls(
            parse_type(obj["type"]),
            group,
            tuple(c["degree"] for c in chars),
            tuple(c["name"] for c in chars),
            tuple(c["dual"] for c in chars),
            tuple(tuple(r) for r in obj["left_action"]),
            {(a, b, c): v for a, b, c, v in obj["entries"]},
            tuple(tuple(p) for p in obj["focus"]),
        )


def default_focus(t: AlgebraType, degrees: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """All ordered pairs inside and between the two largest degree classes."""
    top = sorted({d for d in degrees if d > 1})[-2:]
    ids = [i for i, d in enumerate(degrees) if d in top]
    return tuple((a, b) for a in ids for b in ids)


def build_skeleton(t: AlgebraType, group: GrouplikeGroup, focus=None) -> FusionTable:
    """Characters for ``t`` with only the group law filled in."""
    if group.order != t.g_order:
        raise GroupMismatch(f"group of order {group.order} for type {t.notation}")
    g = group.order
    degrees = [1] * g
    names = list(group.names)
    for d, n in t.entries[1:]:
        for k in range(n):
            degrees.append(d)
            names.append(f"x{d}_{k}")
    size = len(degrees)
    dual = tuple(group.inverse) + (None,) * (size - g)
    left = tuple(
        tuple(group.mul(h, x) for x in range(g)) + (None,) * (size - g) for h in range(g)
    )
    degrees = tuple(degrees)
    if focus is None:
        focus = default_focus(t, degrees)
    return FusionTable(t, group, degrees, tuple(names), dual, left, {}, tuple(focus))


def with_structure(table: FusionTable, dual, left) -> FusionTable:
    return replace(table, dual=tuple(dual), left=tuple(tuple(r) for r in left))


# ------------------------------------------------------------- group action
def stabilizer_of(table: FusionTable, x: int) -> Stabilizer | Contradiction:
    """{h : h x = x}; a Contradiction when its order fails to divide deg^2."""
    if any(table.left[h][x] is None for h in range(table.g)):
        raise Unassigned(f"action on {table.names[x]} not assigned")
    sub = frozenset(h for h in range(table.g) if table.left[h][x] == x)
    deg = table.degrees[x]
    if (deg * deg) % len(sub):
        return Contradiction(
            "stabilizer-divides-degsq",
            f"|G[{table.names[x]}]| = {len(sub)} does not divide {deg}^2",
            ((x,),),
        )
    return Stabilizer(x, sub)


def orbit_assignment(table: FusionTable, degree: int) -> list[tuple[tuple[int, ...], ...]]:
    """Left actions of the group on the degree class, up to relabeling.

    An action is returned as ``perms[h][k]``: the position in the class of
    ``h`` applied to the k-th class member. For abelian groups a transitive
    action is fixed by its stabilizer subgroup, so actions up to isomorphism
    are multisets of subgroups whose indices sum to the class size; the
    stabilizer order must divide ``degree^2``.
    """
    group = table.group
    n = len(table.degree_class(degree))
    if not group.is_abelian:
        raise ValueError("orbit assignment needs an abelian group")
    subs = [s for s in group.subgroups() if (degree * degree) % len(s) == 0]
    out = []
    for k in range(1, n + 1):
        for combo in combinations_with_replacement(range(len(subs)), k):
            if sum(group.order // len(subs[i]) for i in combo) != n:
                continue
            out.append(_action_from_subgroups(group, [subs[i] for i in combo]))
    return out


def _action_from_subgroups(group: GrouplikeGroup, subs) -> tuple[tuple[int, ...], ...]:
    points: list[tuple[int, frozenset]] = []  # (orbit index, coset)
    for oi, sub in enumerate(subs):
        seen = set()
        for a in range(group.order):
            coset = frozenset(group.mul(a, s) for s in sub)
            if coset not in seen:
                seen.add(coset)
                points.append((oi, coset))
    index = {pt: i for i, pt in enumerate(points)}
    perms = []
    for h in range(group.order):
        row = []
        for oi, coset in points:
            moved = frozenset(group.mul(h, x) for x in coset)
            row.append(index[(oi, moved)])
        perms.append(tuple(row))
    return tuple(perms)


# ------------------------------------------------------------- subalgebras
def standard_subalgebra_closure(table: FusionTable, seed) -> tuple[frozenset[int], int] | NeedsEntries:
    """Smallest *-closed, product-closed set containing ``seed`` and its sum of deg^2."""
    members = set(seed)
    changed = True
    while changed:
        changed = False
        for x in list(members):
            d = table.dual[x]
            if d is None:
                return NeedsEntries(((x, x),))
            if d not in members:
                members.add(d)
                changed = True
        missing = []
        for a in sorted(members):
            for b in sorted(members):
                prod = table.product(a, b)
                if prod is None:
                    missing.append((a, b))
                    continue
                new = set(prod) - members
                if new:
                    members |= new
                    changed = True
        if missing:
            return NeedsEntries(tuple(missing))
    dim = sum(table.degrees[x] ** 2 for x in members)
    return frozenset(members), dim
