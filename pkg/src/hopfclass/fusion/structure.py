"""Duality involutions and group-like actions on one degree class.

A class structure is the dual map ``D`` together with the left action of
each generator of an abelian group-like group. Structures are generated in
breadth-first canonical labeling (every new point receives the next free
label), which reaches each isomorphism class, and duplicates are removed
with an exact canonical code.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groups import GrouplikeGroup


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, budget: int) -> None:
        super().__init__(f"node budget {budget} exhausted after {nodes} nodes")
        self.nodes = nodes
        self.budget = budget


class NodeCounter:
    def __init__(self, budget: int) -> None:
        if budget < 1:
            raise ValueError("budget must be >= 1")
        self.budget = budget
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(self.nodes, self.budget)


@dataclass(frozen=True)
class ClassStructure:
    """Maps on positions ``0..n-1`` of a degree class."""

    dual: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]  # left[h][k] for every group element h

    def stabilizer(self, k: int) -> list[int]:
        return [h for h, row in enumerate(self.left) if row[k] == k]


def extend_action(group: GrouplikeGroup, gen_perms: dict[int, list[int]], n: int):
    """Left action of every element from generator images; None if inconsistent."""
    perms: dict[int, tuple[int, ...]] = {0: tuple(range(n))}
    frontier = [0]
    while frontier:
        h = frontier.pop()
        ph = perms[h]
        for s, ps in gen_perms.items():
            x = group.mul(s, h)
            px = tuple(ps[ph[k]] for k in range(n))
            old = perms.get(x)
            if old is None:
                perms[x] = px
                frontier.append(x)
            elif old != px:
                return None
    return tuple(perms[h] for h in range(group.order))


def _residual_ok(deg: int, stab: int, higher: list[int], residual_cache: dict) -> bool:
    key = (deg, stab)
    if key not in residual_cache:
        residual_cache[key] = representable(deg * deg - stab, higher)
    return residual_cache[key]


def representable(total: int, parts) -> bool:
    """Whether ``total`` is a nonnegative integer combination of ``parts``."""
    if total < 0:
        return False
    ok = [True] + [False] * total
    for p in set(parts):
        for s in range(p, total + 1):
            if ok[s - p]:
                ok[s] = True
    return ok[total]


def _canonical_code(dual, gens, n: int, ngen: int):
    seen_components = []
    assigned = [False] * n
    for root in range(n):
        if assigned[root]:
            continue
        comp = _component(dual, gens, root, n)
        for x in comp:
            assigned[x] = True
        best = min(_bfs_code(dual, gens, r, ngen) for r in comp)
        seen_components.append(best)
    return tuple(sorted(seen_components))


def _component(dual, gens, root, n):
    comp = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for y in [dual[x]] + [g[x] for g in gens]:
            if y not in comp:
                comp.add(y)
                stack.append(y)
    return comp


def _bfs_code(dual, gens, root, ngen):
    label = {root: 0}
    order = [root]
    i = 0
    code = []
    while i < len(order):
        x = order[i]
        i += 1
        row = []
        for y in [dual[x]] + [g[x] for g in gens]:
            if y not in label:
                label[y] = len(order)
                order.append(y)
            row.append(label[y])
        code.append(tuple(row))
    return tuple(code)


def gset_actions(group: GrouplikeGroup, n: int, degree: int, higher_degrees=None):
    """Left actions on ``n`` points up to isomorphism, as full permutation tuples.

    For an abelian group a transitive action is determined by its stabilizer,
    so an action is a multiset of subgroups with indices summing to ``n``.
    Stabilizer orders must divide ``degree^2``; when ``higher_degrees`` is
    given, ``degree^2 - |stabilizer|`` must also be a sum of those degrees.
    """
    if not group.is_abelian:
        raise ValueError("group-like actions are only modelled for abelian groups")
    dsq = degree * degree
    subs = [
        h
        for h in group.subgroups()
        if dsq % len(h) == 0
        and (higher_degrees is None or representable(dsq - len(h), higher_degrees))
    ]
    out = []

    def rec(start: int, left: int, chosen: list) -> None:
        if left == 0:
            out.append(_action_from_subgroups(group, chosen))
            return
        for i in range(start, len(subs)):
            size = group.order // len(subs[i])
            if size <= left:
                chosen.append(subs[i])
                rec(i, left - size, chosen)
                chosen.pop()

    if n:
        rec(0, n, [])
    return out


def _action_from_subgroups(group: GrouplikeGroup, subs) -> tuple[tuple[int, ...], ...]:
    points = []  # (orbit index, coset)
    for oi, sub in enumerate(subs):
        seen = set()
        for a in range(group.order):
            coset = frozenset(group.mul(a, x) for x in sub)
            if coset not in seen:
                seen.add(coset)
                points.append((oi, coset))
    index = {pt: i for i, pt in enumerate(points)}
    return tuple(
        tuple(index[(oi, frozenset(group.mul(h, x) for x in coset))] for oi, coset in points)
        for h in range(group.order)
    )


def enumerate_class_structures(
    group: GrouplikeGroup,
    n: int,
    degree: int,
    higher_degrees: list[int],
    counter: NodeCounter | None = None,
) -> list[ClassStructure]:
    """All (dual, action) structures on a class of ``n`` characters of ``degree``.

    Actions come from :func:`gset_actions`. For each, the dual involution is
    built point by point; after every assignment the left action must
    commute with the induced right action ``r_h = D l_{h^-1} D`` wherever
    both sides are defined. Results are deduplicated by canonical code.
    """
    gens = list(group.generators)
    out: list[ClassStructure] = []
    seen = set()
    for perms in gset_actions(group, n, degree, higher_degrees):
        lam = [perms[s] for s in gens]
        lam_inv = [_invert(p) for p in lam]
        for dual in _duals_for_action(lam, lam_inv, n, counter):
            if not _commutes(group, perms, dual, gens):
                continue
            code = _canonical_code(dual, lam, n, len(gens))
            if code not in seen:
                seen.add(code)
                out.append(ClassStructure(tuple(dual), perms))
    return out


def _invert(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return out


def _commutes(group, perms, dual, gens) -> bool:
    inv = group.inverse
    n = len(dual)
    for h in gens:
        r = [dual[perms[inv[h]][dual[k]]] for k in range(n)]
        for s in gens:
            ls = perms[s]
            if any(ls[r[k]] != r[ls[k]] for k in range(n)):
                return False
    return True


def _duals_for_action(lam, lam_inv, n, counter):
    """Involutions D such that mu_s = D l_s D commutes with every l_t.

    Propagates D l_s = mu_s D, D^2 = 1 and mu_s l_t = l_t mu_s on partial maps.
    """
    ng = len(lam)

    def assign(dual, mu, mu_inv, queue) -> bool:
        while queue:
            kind, a, b, c = queue.pop()
            if kind == "D":
                k, w = a, b
                if dual[k] == w:
                    continue
                if dual[k] != -1:
                    return False
                if dual[w] != -1 and dual[w] != k:
                    return False
                dual[k] = w
                queue.append(("D", w, k, None))
                for si in range(ng):
                    k2 = lam[si][k]
                    if dual[k2] != -1:
                        queue.append(("M", si, w, dual[k2]))
                    k0 = lam_inv[si][k]
                    if dual[k0] != -1:
                        queue.append(("M", si, dual[k0], w))
                    if mu[si][w] != -1:
                        queue.append(("D", k2, mu[si][w], None))
            else:
                si, x, y = a, b, c
                if mu[si][x] == y:
                    continue
                if mu[si][x] != -1 or mu_inv[si][y] != -1:
                    return False
                mu[si][x] = y
                mu_inv[si][y] = x
                for t in range(ng):
                    queue.append(("M", si, lam[t][x], lam[t][y]))
                k = dual[x]
                if k != -1:
                    queue.append(("D", lam[si][k], y, None))
        return True

    results = []

    def rec(dual, mu, mu_inv) -> None:
        v = next((k for k in range(n) if dual[k] == -1), None)
        if v is None:
            results.append(tuple(dual))
            return
        for w in range(n):
            if dual[w] != -1:
                continue
            if counter is not None:
                counter.tick()
            d2, m2, mi2 = list(dual), [list(m) for m in mu], [list(m) for m in mu_inv]
            if assign(d2, m2, mi2, [("D", v, w, None)]):
                rec(d2, m2, mi2)

    rec([-1] * n, [[-1] * n for _ in range(ng)], [[-1] * n for _ in range(ng)])
    return results
