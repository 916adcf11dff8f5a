"""Post-hoc validator for a (partial) fusion table.

Deliberately independent of the search code: it reads only the raw fields
of a table (degrees, dual, left action, explicit entries) and recomputes
each rule from scratch with plain loops.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str


def _mult_fn(table):
    g = table.group.order
    D, L, inv = table.dual, table.left, table.group.inverse
    entries = table.entries

    def right(x, h):
        if D[x] is None or L[inv[h]][D[x]] is None:
            return None
        return D[L[inv[h]][D[x]]]

    def m(a, b, c):
        if a < g:
            return None if L[a][b] is None else int(L[a][b] == c)
        if b < g:
            r = right(a, b)
            return None if r is None else int(r == c)
        if c < g:
            if D[a] is None:
                return None
            r = right(D[a], c)
            return None if r is None else int(b == r)
        return entries.get((a, b, c))

    return m, right


def validate(table, check_closure: bool = True) -> list[Violation]:
    """Every violated rule; an empty list means the table is consistent."""
    out: list[Violation] = []
    n = len(table.degrees)
    deg = table.degrees
    grp = table.group
    g = grp.order
    D, L = table.dual, table.left
    dim = table.type.dim

    if sum(d * d for d in deg) != dim:
        out.append(Violation("dimension-equation", f"sum of squared degrees is not {dim}"))
    for h in range(g):
        if D[h] != grp.inverse[h]:
            out.append(Violation("duality", f"dual of group-like {h} is not its inverse"))
    for x in range(n):
        y = D[x]
        if y is None:
            continue
        if deg[y] != deg[x]:
            out.append(Violation("duality", f"dual of {x} changes degree"))
        if D[y] is not None and D[y] != x:
            out.append(Violation("duality", f"dual is not an involution at {x}"))

    known_action = all(v is not None for row in L for v in row)
    if known_action:
        for h in range(g):
            if sorted(L[h]) != list(range(n)):
                out.append(Violation("grouplike-equivariance", f"left action of {h} is not a permutation"))
                return out
            for x in range(n):
                if deg[L[h][x]] != deg[x]:
                    out.append(Violation("grouplike-equivariance", f"{h} moves {x} to another degree"))
            for k in range(g):
                if L[h][k] != grp.mul(h, k):
                    out.append(Violation("grouplike-equivariance", f"action on group-likes is not the group law"))
        for h1 in range(g):
            for h2 in range(g):
                p = grp.mul(h1, h2)
                if any(L[p][x] != L[h1][L[h2][x]] for x in range(n)):
                    out.append(Violation("grouplike-equivariance", f"action is not a homomorphism at ({h1}, {h2})"))
        for x in range(g, n):
            stab = sum(1 for h in range(g) if L[h][x] == x)
            if (deg[x] * deg[x]) % stab:
                out.append(Violation("stabilizer-divides-degsq", f"|G[{x}]| = {stab} does not divide {deg[x]}^2"))

    m, right = _mult_fn(table)
    if known_action and all(v is not None for v in D):
        for h in range(g):
            for s in range(g):
                for x in range(n):
                    if L[s][right(x, h)] != right(L[s][x], h):
                        out.append(Violation("grouplike-equivariance", "left and right actions do not commute"))
                        break

    # Nichols relations on explicit entries
    ginv = grp.inverse
    for (a, b, c), v in sorted(table.entries.items()):
        if v is None:
            continue
        if v < 0:
            out.append(Violation("degree-accounting", f"negative multiplicity at {(a, b, c)}"))
        if min(a, b, c) < g:
            want = m(a, b, c) if min(a, b, c) < g else None
            # m() answers group-like triples from the action; compare with explicit value
            if want is not None and want != v:
                out.append(Violation("grouplike-multiplicity", f"{(a, b, c)} = {v}, group-like rule gives {want}"))
            continue
        if any(D[z] is None for z in (a, b, c)):
            continue
        related = {
            "frobenius-reciprocity": [(c, D[b], a), (b, D[c], D[a])],
            "duality": [(D[b], D[a], D[c])],
            "grouplike-equivariance": [],
        }
        if known_action:
            for s in range(g):
                related["grouplike-equivariance"] += [
                    (L[s][a], b, L[s][c]),
                    (a, right(b, s), right(c, s)),
                    (right(a, s), L[ginv[s]][b], c),
                ]
        for rule, trips in related.items():
            for u in trips:
                w = m(*u)
                if w is not None and w != v:
                    out.append(Violation(rule, f"{(a, b, c)} = {v} but {u} = {w}"))

    # degree accounting on every row with at least one explicit pure entry
    rows = sorted({(a, b) for (a, b, c) in table.entries})
    full_rows = {}
    for a, b in rows:
        total, complete = 0, True
        row = {}
        for c in range(n):
            v = m(a, b, c)
            if v is None:
                complete = False
                continue
            total += v * deg[c]
            if v:
                row[c] = v
        target = deg[a] * deg[b]
        if complete and total != target:
            out.append(Violation("degree-accounting", f"row {a}*{b} sums to {total}, expected {target}"))
        elif not complete and total > target:
            out.append(Violation("degree-accounting", f"row {a}*{b} exceeds {target}"))
        if complete:
            full_rows[(a, b)] = row

    if check_closure and known_action and all(v is not None for v in D):
        for x in range(g, n):
            members = set(range(g)) | {x, D[x]}
            ok = True
            changed = True
            while changed and ok:
                changed = False
                for a in sorted(members):
                    for b in sorted(members):
                        cs = []
                        for c in range(n):
                            v = m(a, b, c)
                            if v is None:
                                ok = False
                                break
                            if v:
                                cs.append(c)
                        if not ok:
                            break
                        for c in cs:
                            for y in (c, D[c]):
                                if y not in members:
                                    members.add(y)
                                    changed = True
                    if not ok:
                        break
            if ok:
                sub = sum(deg[y] ** 2 for y in members)
                if dim % sub:
                    out.append(Violation("standard-subalgebra-closure", f"closure of {x} has dimension {sub}"))
    return out


def is_consistent(table) -> bool:
    return not validate(table)
