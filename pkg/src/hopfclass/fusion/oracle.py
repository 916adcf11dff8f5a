"""Ground-truth fusion tables from finite groups of order at most 16.

The character ring of a group algebra kG satisfies every rule the search
imposes, so these tables must never be refuted. Characters are computed
with Burnside's method from class multiplication coefficients (floating
point, with every derived multiplicity checked to be an integer).
"""

from __future__ import annotations

from itertools import product

import numpy as np

from ..typeprofile import AlgebraType
from .groups import GrouplikeGroup, abelian_group
from .table import FusionTable, default_focus

_TOL = 1e-6


# ------------------------------------------------------------------ groups
def _table_from(elements, mul, label: str) -> GrouplikeGroup:
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    return GrouplikeGroup(tuple(str(i) for i in range(len(elements))), table, label)


def _generate(gens, mul, identity):
    elems = [identity]
    seen = {identity}
    i = 0
    while i < len(elems):
        x = elems[i]
        i += 1
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return elems


def metacyclic(m: int, n: int, r: int, s: int, label: str) -> GrouplikeGroup:
    """<a, b | a^m, b^n = a^s, b a b^-1 = a^r>, elements a^i b^j."""

    def mul(x, y):
        i, j = x
        k, l = y
        e = i + k * pow(r, j, m)
        jl = j + l
        if jl >= n:
            jl -= n
            e += s
        return (e % m, jl)

    elems = [(i, j) for j in range(n) for i in range(m)]
    return _table_from(elems, mul, label)


def direct_product(g1: GrouplikeGroup, g2: GrouplikeGroup, label: str) -> GrouplikeGroup:
    elems = list(product(range(g1.order), range(g2.order)))
    return _table_from(elems, lambda x, y: (g1.mul(x[0], y[0]), g2.mul(x[1], y[1])), label)


def _perm_group(gens, label):
    n = len(gens[0])
    mul = lambda p, q: tuple(p[q[i]] for i in range(n))  # noqa: E731
    return _table_from(_generate(gens, mul, tuple(range(n))), mul, label)


def _pauli() -> GrouplikeGroup:
    # 2x2 matrices over Z[i], entries as (re, im)
    def cm(x, y):
        return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    def ca(x, y):
        return (x[0] + y[0], x[1] + y[1])

    def mul(A, B):
        return tuple(
            tuple(ca(cm(A[i][0], B[0][j]), cm(A[i][1], B[1][j])) for j in range(2))
            for i in range(2)
        )

    z, o, mo, im = (0, 0), (1, 0), (-1, 0), (0, 1)
    X = ((z, o), (o, z))
    Z = ((o, z), (z, mo))
    iI = ((im, z), (z, im))
    ident = ((o, z), (z, o))
    return _table_from(_generate([X, Z, iI], mul, ident), mul, "Pauli")


def _g16_3() -> GrouplikeGroup:
    # <a, b, c | a^4 = b^2 = c^2 = 1, ab = ba, bc = cb, c a c = a b>
    def mul(x, y):
        i, j, k = x
        i2, j2, k2 = y
        return ((i + i2) % 4, (j + j2 + k * i2) % 2, (k + k2) % 2)

    elems = [(i, j, k) for k in range(2) for j in range(2) for i in range(4)]
    return _table_from(elems, mul, "(Z4xZ2):Z2")


def small_groups() -> list[GrouplikeGroup]:
    """One representative of every group of order 1..16 (42 groups)."""
    Z = lambda *inv: abelian_group(inv)  # noqa: E731
    out = [Z(), Z(2), Z(3), Z(4), Z(2, 2), Z(5), Z(6), metacyclic(3, 2, 2, 0, "S3"), Z(7)]
    out += [Z(8), Z(2, 4), Z(2, 2, 2), metacyclic(4, 2, 3, 0, "D4"), metacyclic(4, 2, 3, 2, "Q8")]
    out += [Z(9), Z(3, 3), Z(10), metacyclic(5, 2, 4, 0, "D5"), Z(11)]
    out += [
        Z(12), Z(2, 6), metacyclic(6, 2, 5, 0, "D6"), metacyclic(3, 4, 2, 0, "Dic3"),
        _perm_group([(1, 2, 0, 3), (1, 0, 3, 2)], "A4"),
    ]
    out += [Z(13), Z(14), metacyclic(7, 2, 6, 0, "D7"), Z(15)]
    d4 = metacyclic(4, 2, 3, 0, "D4")
    q8 = metacyclic(4, 2, 3, 2, "Q8")
    out += [
        Z(16), Z(4, 4), Z(2, 8), Z(2, 2, 4), Z(2, 2, 2, 2),
        metacyclic(8, 2, 7, 0, "D8"), metacyclic(8, 2, 7, 4, "Q16"),
        metacyclic(8, 2, 3, 0, "SD16"), metacyclic(8, 2, 5, 0, "M16"),
        metacyclic(4, 4, 3, 0, "Z4:Z4"),
        direct_product(d4, abelian_group((2,)), "D4xZ2"),
        direct_product(q8, abelian_group((2,)), "Q8xZ2"),
        _pauli(), _g16_3(),
    ]
    return out


def group_signature(g: GrouplikeGroup) -> tuple:
    """Isomorphism invariants used to tell the catalogue apart."""
    n = g.order
    orders = tuple(sorted(g.element_order(a) for a in range(n)))
    classes = conjugacy_classes(g)
    center = sum(1 for c in classes if len(c) == 1)
    comm = g.closure(
        {g.mul(g.mul(a, b), g.mul(g.inverse[a], g.inverse[b])) for a in range(n) for b in range(n)}
    )
    squares = len({g.mul(a, a) for a in range(n)})
    return (n, orders, len(classes), center, len(comm), squares)


# --------------------------------------------------------------- characters
def conjugacy_classes(g: GrouplikeGroup) -> list[list[int]]:
    seen, out = set(), []
    for a in range(g.order):
        if a in seen:
            continue
        cls = sorted({g.mul(g.mul(x, a), g.inverse[x]) for x in range(g.order)})
        seen.update(cls)
        out.append(cls)
    return out


def character_table(g: GrouplikeGroup, seed: int = 0) -> tuple[list[list[int]], np.ndarray]:
    """Classes and the complex character table (rows = irreducibles)."""
    classes = conjugacy_classes(g)
    k = len(classes)
    where = {}
    for i, c in enumerate(classes):
        for x in c:
            where[x] = i
    M = np.zeros((k, k, k))
    for r, cr in enumerate(classes):
        for s, cs in enumerate(classes):
            for x in cr:
                for y in cs:
                    M[r, s, where[g.mul(x, y)]] += 1
    # M[r, s, t] counts pairs landing on each element of C_t
    sizes = np.array([len(c) for c in classes], dtype=float)
    M = M / sizes[None, None, :]
    rng = np.random.default_rng(seed)
    A = np.tensordot(rng.standard_normal(k), M, axes=1)  # (s, t)
    vals, vecs = np.linalg.eig(A)
    rows = []
    for i in range(k):
        v = vecs[:, i] / vecs[0, i]  # omega with omega(identity class) = 1
        deg = np.sqrt(g.order / np.sum(np.abs(v) ** 2 / sizes))
        rows.append(v * deg / sizes)
    table = np.array(rows)
    return classes, table


def _int(x: complex) -> int:
    r = round(x.real)
    if abs(x - r) > _TOL:
        raise ArithmeticError(f"non-integral value {x}")
    return int(r)


def group_fusion_table(g: GrouplikeGroup) -> FusionTable:
    """Fusion table of the character ring of kG, full on every triple."""
    classes, chars = character_table(g)
    sizes = np.array([len(c) for c in classes], dtype=float)
    k = len(classes)
    degs = [_int(chars[i, 0]) for i in range(k)]
    # canonical order: trivial first, then linear characters, then by degree
    order = sorted(range(k), key=lambda i: (degs[i], 0 if np.allclose(chars[i], 1) else 1, i))
    chars = chars[order]
    degs = [degs[i] for i in order]

    def find(vec) -> int:
        for j in range(k):
            if np.allclose(chars[j], vec, atol=_TOL):
                return j
        raise ArithmeticError("product of characters is not irreducible")

    glike = [i for i in range(k) if degs[i] == 1]
    m = len(glike)
    gtable = tuple(tuple(find(chars[a] * chars[b]) for b in glike) for a in glike)
    lin = GrouplikeGroup(tuple(f"l{i}" for i in range(m)), gtable, "")
    lin = GrouplikeGroup(lin.names, lin.table, "x".join(f"Z{d}" for d in lin.invariants) or "1")
    dual = tuple(find(np.conj(chars[i])) for i in range(k))
    left = tuple(tuple(find(chars[h] * chars[x]) for x in range(k)) for h in range(m))
    entries = {}
    for a in range(k):
        for b in range(k):
            prod = chars[a] * chars[b]
            for c in range(k):
                val = np.sum(sizes * prod * np.conj(chars[c])) / g.order
                entries[(a, b, c)] = _int(val)
    counts: dict[int, int] = {}
    for d in degs:
        counts[d] = counts.get(d, 0) + 1
    t = AlgebraType(tuple(sorted(counts.items())))
    names = tuple(("e" if i == 0 else f"l{i}") if degs[i] == 1 else f"x{degs[i]}_{i}" for i in range(k))
    return FusionTable(t, lin, tuple(degs), names, dual, left, entries, default_focus(t, tuple(degs)))


def grouplike_class(table: FusionTable) -> GrouplikeGroup:
    """The catalogue abelian group isomorphic to the table's group-likes."""
    return abelian_group(table.group.invariants)
