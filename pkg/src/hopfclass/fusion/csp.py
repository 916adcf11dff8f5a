"""Integer constraint model for the unknown fusion multiplicities.

Once duality and the group-like action are fixed, every multiplicity with
a group-like argument is determined. The remaining unknowns ``m(c, a b)``
are merged into classes by the Nichols relations (reciprocity, duality,
equivariance under group-likes), and each product row ``a b`` yields a
linear equation ``sum_c m(c, a b) deg c = deg a deg b``. Domains are value
bitmasks; rows are made arc consistent with subset-sum bitsets.
"""

from __future__ import annotations

from functools import lru_cache

from .table import Contradiction, FusionTable


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def add(self, x) -> None:
        self.parent.setdefault(x, x)


def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _values(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _min_value(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class FusionCSP:
    def __init__(self, table: FusionTable) -> None:
        if not table.structure_known:
            raise ValueError("duality and group-like action must be assigned")
        self.table = table
        self.contradiction: Contradiction | None = None
        g, n = table.g, table.size
        self.g = g
        self.deg = table.degrees
        D = table.dual
        L = table.left
        R = [[table.right(x, h) for x in range(n)] for h in range(g)]
        gens = table.group.generators
        inv = table.group.inverse

        recip = [
            lambda t: (t[2], D[t[1]], t[0]),
            lambda t: (t[1], D[t[2]], D[t[0]]),
        ]
        duality = [lambda t: (D[t[1]], D[t[0]], D[t[2]])]
        equiv = []
        for s in gens:
            equiv.append(lambda t, s=s: (L[s][t[0]], t[1], L[s][t[2]]))
            equiv.append(lambda t, s=s: (t[0], R[s][t[1]], R[s][t[2]]))
            equiv.append(lambda t, s=s: (R[s][t[0]], L[inv[s]][t[1]], t[2]))
        stages = (("frobenius-reciprocity", recip), ("duality", duality), ("grouplike-equivariance", equiv))
        all_maps = recip + duality + equiv

        # explicit entries touching a group-like must match the group-like rule
        for (a, b, c), v in sorted(table.entries.items()):
            if min(a, b, c) < g:
                if table.determined(a, b, c) != v:
                    self.contradiction = Contradiction(
                        "grouplike-multiplicity",
                        f"m({table.names[c]}, {table.names[a]} {table.names[b]}) = {v}, group-like rule gives {table.determined(a, b, c)}",
                        ((a, b, c),),
                    )
                    return

        pure = range(g, n)
        seeds = [(a, b, c) for a, b in table.focus if a >= g and b >= g for c in pure]
        seeds += [t for t in table.entries if min(t) >= g]
        tracked = set(seeds)
        stack = list(tracked)
        while stack:
            t = stack.pop()
            for f in all_maps:
                u = f(t)
                if u not in tracked:
                    tracked.add(u)
                    stack.append(u)

        uf = _UnionFind()
        for t in tracked:
            uf.add(t)
        fixed: dict = {}
        for t, v in table.entries.items():
            if t in tracked:
                fixed[t] = v
        value_of = {t: (v, t) for t, v in fixed.items()}  # root -> (value, witness triple)
        for rule, maps in stages:
            for t in sorted(tracked):
                for f in maps:
                    ra, rb = uf.find(t), uf.find(f(t))
                    if ra == rb:
                        continue
                    va, vb = value_of.get(ra), value_of.get(rb)
                    if va and vb and va[0] != vb[0]:
                        self.contradiction = Contradiction(
                            rule,
                            f"entries {va[1]} = {va[0]} and {vb[1]} = {vb[0]} must agree",
                            (va[1], vb[1]),
                        )
                        return
                    uf.parent[rb] = ra
                    if va is None and vb is not None:
                        value_of[ra] = vb
                    value_of.pop(rb, None)

        def key(t):
            return (self.deg[t[0]], self.deg[t[1]], self.deg[t[2]], t)

        members: dict = {}
        for t in tracked:
            members.setdefault(uf.find(t), []).append(t)
        roots = sorted(members, key=lambda r: key(min(members[r], key=key)))
        self.var_of = {}
        self.classes = []
        for i, r in enumerate(roots):
            ts = sorted(members[r], key=key)
            self.classes.append(ts)
            for t in ts:
                self.var_of[t] = i
        nv = len(roots)
        self.nvars = nv
        self.fixed_value = [value_of.get(r, (None,))[0] for r in roots]

        # rows
        pairs = sorted({(t[0], t[1]) for t in tracked})
        rows = {}
        self.pair_terms: dict = {}
        for a, b in pairs:
            const = 0
            terms: dict[int, int] = {}
            complete = True
            for c in range(n):
                if c < g:
                    const += table.determined(a, b, c)
                    continue
                var = self.var_of.get((a, b, c))
                if var is None:
                    complete = False
                    continue
                terms[var] = terms.get(var, 0) + self.deg[c]
            rhs = self.deg[a] * self.deg[b] - const
            if rhs < 0:
                self.contradiction = Contradiction(
                    "degree-accounting",
                    f"group-like constituents of {table.names[a]} {table.names[b]} exceed its degree",
                    ((a, b),),
                )
                return
            self.pair_terms[(a, b)] = complete
            rows[(tuple(sorted(terms.items())), rhs, complete)] = (a, b)
        self.rows = []
        self.row_pair = []
        for (terms, rhs, eq), pair in sorted(rows.items(), key=lambda kv: kv[1]):
            self.rows.append((terms, rhs, eq))
            self.row_pair.append(pair)
        self.var_rows = [[] for _ in range(nv)]
        for ri, (terms, _, _) in enumerate(self.rows):
            for v, _ in terms:
                self.var_rows[v].append(ri)

        dom = []
        for v in range(nv):
            hi = min((rhs // c for ri in self.var_rows[v] for (x, c) in self.rows[ri][0] if x == v for rhs in (self.rows[ri][1],)), default=0)
            fv = self.fixed_value[v]
            if fv is not None:
                if fv > hi:
                    self.contradiction = Contradiction(
                        "degree-accounting", f"entry value {fv} exceeds the degree bound {hi}", (self.classes[v][0],)
                    )
                    return
                dom.append(1 << fv)
            else:
                dom.append((1 << (hi + 1)) - 1)
        self.initial = dom

        # closure seeds: group-likes plus one character
        self.group_ids = frozenset(range(g))

    # ------------------------------------------------------------ propagate
    def propagate(self, dom: list[int], changed=None) -> list[int] | Contradiction:
        rows = self.rows
        queue = list(range(len(rows))) if changed is None else sorted({r for v in changed for r in self.var_rows[v]})
        inq = set(queue)
        while queue:
            ri = queue.pop()
            inq.discard(ri)
            terms, rhs, eq = rows[ri]
            new = self._revise(dom, terms, rhs, eq)
            if new is None:
                a, b = self.row_pair[ri]
                names = self.table.names
                return Contradiction(
                    "degree-accounting",
                    f"no multiplicities complete {names[a]} {names[b]} to degree {self.deg[a] * self.deg[b]}",
                    ((a, b),),
                )
            for v, m in new:
                if m != dom[v]:
                    dom[v] = m
                    for r2 in self.var_rows[v]:
                        if r2 not in inq:
                            inq.add(r2)
                            queue.append(r2)
        return dom

    @staticmethod
    def _revise(dom, terms, rhs, eq):
        full = (1 << (rhs + 1)) - 1
        if not eq:
            low = sum(c * _min_value(dom[v]) for v, c in terms)
            if low > rhs:
                return None
            out = []
            for v, c in terms:
                slack = rhs - (low - c * _min_value(dom[v]))
                cap = slack // c
                m = dom[v] & ((1 << (cap + 1)) - 1)
                out.append((v, m))
            return out
        k = len(terms)
        prefix = [1]
        for v, c in terms:
            p = prefix[-1]
            acc = 0
            for val in _values(dom[v]):
                sh = c * val
                if sh > rhs:
                    break
                acc |= p << sh
            prefix.append(acc & full)
        if not (prefix[-1] >> rhs) & 1:
            return None
        back = 1 << rhs  # sums from which rhs is reachable with the remaining vars
        out = [None] * k
        for i in range(k - 1, -1, -1):
            v, c = terms[i]
            p = prefix[i]
            keep = 0
            nb = 0
            for val in _values(dom[v]):
                sh = c * val
                if sh > rhs:
                    break
                shifted = back >> sh
                if p & shifted:
                    keep |= 1 << val
                nb |= shifted
            if not keep:
                return None
            out[i] = (v, keep)
            back = nb
        return out

    # ------------------------------------------------------------ closure
    def closure_violation(self, dom: list[int]) -> Contradiction | None:
        t = self.table
        n, g = t.size, self.g
        cache: dict = {}

        def support(a, b):
            if (a, b) in cache:
                return cache[(a, b)]
            if a < g:
                res = {t.left[a][b]}
            elif b < g:
                res = {t.right(a, b)}
            else:
                res = set()
                for c in range(n):
                    if c < g:
                        if t.determined(a, b, c):
                            res.add(c)
                        continue
                    var = self.var_of.get((a, b, c))
                    if var is None:
                        res = None
                        break
                    m = dom[var]
                    if m == 1:
                        continue
                    if m & 1:
                        res = None
                        break
                    res.add(c)
            cache[(a, b)] = res
            return res

        dim = t.type.dim
        for x in range(g, n):
            members = set(range(g)) | {x, t.dual[x]}
            frontier = list(members)
            ok = True
            while frontier and ok:
                new = []
                for a in frontier:
                    for b in list(members):
                        for pair in ((a, b), (b, a)):
                            s = support(*pair)
                            if s is None:
                                ok = False
                                break
                            for c in s:
                                if c not in members:
                                    members.add(c)
                                    members.add(t.dual[c])
                                    new.append(c)
                                    new.append(t.dual[c])
                        if not ok:
                            break
                    if not ok:
                        break
                frontier = new
            if not ok:
                continue
            sub = sum(self.deg[c] ** 2 for c in members)
            if dim % sub:
                return Contradiction(
                    "standard-subalgebra-closure",
                    f"closure of G(H*) and {t.names[x]} has dimension {sub}, not dividing {dim}",
                    tuple(sorted((c,) for c in members if c >= g)),
                )
        return None

    # ------------------------------------------------------------ search
    def solve(self, counter, stats: dict | None = None) -> list[int] | None:
        """First complete assignment in canonical order, or None."""
        stats = stats if stats is not None else {}
        if self.contradiction is not None:
            stats[self.contradiction.rule] = stats.get(self.contradiction.rule, 0) + 1
            return None
        dom = self.propagate(list(self.initial))
        if isinstance(dom, Contradiction):
            stats[dom.rule] = stats.get(dom.rule, 0) + 1
            return None
        return self._dfs(dom, counter, stats)

    def _dfs(self, dom, counter, stats):
        bad = self.closure_violation(dom)
        if bad is not None:
            stats[bad.rule] = stats.get(bad.rule, 0) + 1
            return None
        best, best_size = None, None
        for v, m in enumerate(dom):
            if m & (m - 1):
                size = _popcount(m)
                if best is None or size < best_size:
                    best, best_size = v, size
                    if size == 2:
                        break
        if best is None:
            return dom
        for val in _values(dom[best]):
            counter.tick()
            child = list(dom)
            child[best] = 1 << val
            res = self.propagate(child, [best])
            if isinstance(res, Contradiction):
                stats[res.rule] = stats.get(res.rule, 0) + 1
                continue
            found = self._dfs(res, counter, stats)
            if found is not None:
                return found
        return None

    def entries(self, dom) -> dict:
        out = {}
        for v, ts in enumerate(self.classes):
            m = dom[v]
            if m and not m & (m - 1):
                val = _min_value(m)
                for t in ts:
                    out[t] = val
        return out
