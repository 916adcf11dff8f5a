"""Exact integer helpers and the dimension-equation enumerator.

Everything here is rule-free: filters that discard candidates live in
:mod:`hopfclass.typeprofile`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping


class EmptyDegreeSet(ValueError):
    pass


class InconsistentPin(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n`` in increasing order."""
    if n < 1:
        raise ValueError(f"divisors() needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


GENERAL = "general"
SMALL = "small"
SMALL_QS = (3, 5, 7, 11, 13)


@dataclass(frozen=True)
class DimensionProfile:
    p: int
    q: int

    def __post_init__(self) -> None:
        if not (is_prime(self.p) and is_prime(self.q)):
            raise ValueError(f"p={self.p}, q={self.q} must both be prime")
        if self.p == self.q:
            raise ValueError("p and q must be distinct")

    @property
    def dim(self) -> int:
        return self.p**2 * self.q**2

    @property
    def regime(self) -> str | None:
        """``"small"`` for p=2 and q <= 13, ``"general"`` when p^4 < q."""
        if self.p == 2 and self.q in SMALL_QS:
            return SMALL
        if self.p**4 < self.q:
            return GENERAL
        return None

    def degree_labels(self) -> dict[int, str]:
        """Names of the count variables keyed by degree."""
        return {self.p: "a", self.p**2: "b", self.q: "c"}


@dataclass(frozen=True)
class TypeSolution:
    dim: int
    g_order: int
    counts: tuple[tuple[int, int], ...]  # (degree, count), ascending degree
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        total = self.g_order + sum(n * d * d for d, n in self.counts)
        if total != self.dim:
            raise ValueError(f"dimension equation broken: {total} != {self.dim}")

    def count(self, degree: int) -> int:
        return dict(self.counts).get(degree, 0)

    def named(self) -> dict[str, int]:
        names = dict(self.labels)
        return {names.get(d, f"n{d}"): n for d, n in self.counts}


def enumerate_dimension_solutions(
    profile: DimensionProfile | int,
    g_order: int,
    degree_set,
    fixed: Mapping | None = None,
) -> list[TypeSolution]:
    """Every nonnegative count vector with ``g_order + sum n_d d^2 = dim``.

    ``degree_set`` may contain 1; it is ignored since degree 1 is carried by
    ``g_order``. ``fixed`` pins counts, keyed either by degree or by the
    profile's letter names (``{"a": 0}``). Solutions come out in
    lexicographic order of the count vector keyed by ascending degree.
    """
    dim = profile.dim if isinstance(profile, DimensionProfile) else int(profile)
    labels = profile.degree_labels() if isinstance(profile, DimensionProfile) else {}
    if dim % g_order:
        raise ValueError(f"g_order {g_order} does not divide {dim}")
    degrees = sorted(d for d in set(degree_set) if d > 1)
    if not degrees:
        raise EmptyDegreeSet("degree set has no degree > 1")

    pins: dict[int, int] = {}
    by_name = {v: k for k, v in labels.items()}
    for key, val in (fixed or {}).items():
        deg = by_name[key] if isinstance(key, str) else int(key)
        if deg not in degrees:
            raise ValueError(f"pinned degree {deg} not in degree set")
        pins[deg] = int(val)
    pinned_mass = g_order + sum(n * d * d for d, n in pins.items())
    if pinned_mass > dim:
        raise InconsistentPin(f"pins already use {pinned_mass} > {dim}")

    free = [d for d in degrees if d not in pins]
    rest = dim - pinned_mass
    bounds = [rest // (d * d) for d in free]
    out = []
    # last free degree is solved for directly instead of looped
    for head in product(*(range(b + 1) for b in bounds[:-1])):
        mass = sum(n * d * d for n, d in zip(head, free))
        if mass > rest:
            continue
        if free:
            last_sq = free[-1] ** 2
            left = rest - mass
            if left % last_sq:
                continue
            assign = dict(zip(free, head + (left // last_sq,)))
        else:
            if mass != rest:
                continue
            assign = {}
        assign.update(pins)
        counts = tuple((d, assign[d]) for d in degrees)
        out.append(
            TypeSolution(dim, g_order, counts, tuple(sorted(labels.items())))
        )
    out.sort(key=lambda s: tuple(n for _, n in s.counts))
    return out


def no_solution_check(dim: int, offset: int, square: int) -> bool:
    """True iff no c >= 0 satisfies ``dim == offset + c * square``."""
    if dim < offset:
        return True
    return (dim - offset) % square != 0


@dataclass(frozen=True)
class CoidealObstruction:
    eq1_solvable: bool  # q^2 = 1 + m p, m >= 1
    eq2_solvable: bool  # q^2 = q + n p, n >= 1
    obstructed: bool


def coideal_obstruction(p: int, q: int) -> CoidealObstruction:
    if p == q:
        raise ValueError("p and q must differ")
    eq1 = q * q > 1 and (q * q - 1) % p == 0
    eq2 = q * q > q and (q * q - q) % p == 0
    return CoidealObstruction(eq1, eq2, not (eq1 or eq2))
