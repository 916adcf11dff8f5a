"""Finite groups given by multiplication tables, mainly abelian ones."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from ..arithmetic import divisors


@dataclass(frozen=True, eq=False)
class GrouplikeGroup:
    """Group on ``range(order)`` with identity 0."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        n = len(self.names)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("table shape mismatch")
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
            raise ValueError("element 0 must be the identity")

    @property
    def order(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple[int, ...]:
        return tuple(self.table[a].index(0) for a in range(self.order))

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: each new generator enlarges the span."""
        span = {0}
        gens = []
        for a in range(1, self.order):
            if a in span:
                continue
            gens.append(a)
            span = self.closure(gens)
        return tuple(gens)

    def closure(self, elements) -> set[int]:
        span = {0}
        frontier = [0]
        elements = list(elements)
        while frontier:
            x = frontier.pop()
            for s in elements:
                y = self.table[x][s]
                if y not in span:
                    span.add(y)
                    frontier.append(y)
        return span

    def check_axioms(self) -> bool:
        n, t = self.order, self.table
        if any(sorted(row) != list(range(n)) for row in t):
            return False
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def subgroups(self) -> list[frozenset[int]]:
        """All subgroups, sorted by size then elements (abelian: from <=2 generators per step)."""
        found = {frozenset({0})}
        frontier = [frozenset({0})]
        while frontier:
            nxt = []
            for h in frontier:
                for a in range(self.order):
                    if a in h:
                        continue
                    k = frozenset(self.closure(set(h) | {a}))
                    if k not in found:
                        found.add(k)
                        nxt.append(k)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    @cached_property
    def invariants(self) -> tuple[int, ...]:
        """Invariant factors (abelian groups only); () for the trivial group."""
        if not self.is_abelian:
            raise ValueError("invariant factors need an abelian group")
        return _invariants_from_orders(self)

    def to_json(self) -> dict:
        return {"label": self.label, "order": self.order}


def _invariants_from_orders(g: GrouplikeGroup) -> tuple[int, ...]:
    # count elements with x^k = 1 for each k; this determines the abelian group
    n = g.order
    if n == 1:
        return ()
    counts = {}
    for k in divisors(n):
        counts[k] = sum(1 for a in range(n) if k % g.element_order(a) == 0)
    for inv in abelian_invariants(n):
        cand = abelian_group(inv)
        if all(
            sum(1 for a in range(n) if k % cand.element_order(a) == 0) == counts[k]
            for k in counts
        ):
            return inv
    raise AssertionError("no abelian invariants matched")


def _prime_factorization(n: int) -> dict[int, int]:
    out, d = {}, 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_invariants(n: int) -> list[tuple[int, ...]]:
    """Invariant-factor lists (d1 | d2 | ...) of every abelian group of order n."""
    if n == 1:
        return [()]
    per_prime = []
    for p, e in sorted(_prime_factorization(n).items()):
        per_prime.append([tuple(p**k for k in part) for part in _partitions(e)])
    out = []
    for choice in product(*per_prime):
        width = max(len(c) for c in choice)
        factors = []
        for i in range(width):
            f = 1
            for c in choice:
                if i < len(c):
                    f *= c[i]
            factors.append(f)
        out.append(tuple(sorted(factors)))
    return sorted(out, key=lambda t: (len(t), t))


def abelian_group(invariants) -> GrouplikeGroup:
    """Z/d1 x ... x Z/dk with mixed-radix element numbering."""
    inv = tuple(int(d) for d in invariants if d != 1)
    elems = list(product(*(range(d) for d in inv))) if inv else [()]
    index = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(index[tuple((x + y) % d for x, y, d in zip(a, b, inv))] for b in elems)
        for a in elems
    )
    names = tuple("e" if i == 0 else "g" + "".join(map(str, e)) for i, e in enumerate(elems))
    if len(inv) == 1:
        names = tuple("e" if i == 0 else f"g^{i}" for i in range(inv[0]))
    label = "x".join(f"Z{d}" for d in inv) or "1"
    return GrouplikeGroup(names, table, label)


def abelian_classes(n: int) -> list[GrouplikeGroup]:
    return [abelian_group(inv) for inv in abelian_invariants(n)]
