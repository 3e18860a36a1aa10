"""Pure-Python search kernels over adjacency bitmasks.

These are the reference implementations; ``_kernels.pyx`` mirrors them line for
line on ``uint64`` masks. Both return plain tuples so the wrappers in
:mod:`twoktree.solver` stay backend-agnostic.

Status codes: 0 found, 1 none, 2 budget exhausted.
"""

from __future__ import annotations

import time

FOUND, NONE, BUDGET = 0, 1, 2


class _OutOfBudget(Exception):
    pass


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reach(adj, start_bit, allowed):
    seen = frontier = start_bit
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


class _RoleSearch:
    """Backtracking over leaf/internal roles, then realisation of a tree for a full role split.

    A spanning tree with no degree in [2,k] is a tree ``T_I`` on the internal set ``I``
    plus every other vertex hung as a leaf off some internal vertex, such that each
    internal vertex reaches degree >= k+1. Counting degrees gives ``|I| <= (n-2)/k``.
    """

    def __init__(self, adj, n, k, node_limit, deadline):
        self.adj = list(adj)
        self.n = n
        self.k = k
        self.full = (1 << n) - 1
        self.deg = [m.bit_count() for m in adj]
        self.max_internal = (n - 2) // k
        self.node_limit = node_limit
        self.deadline = deadline
        self.nodes = 0
        self.max_depth = 0

    def tick(self):
        self.nodes += 1
        if self.node_limit and self.nodes > self.node_limit:
            raise _OutOfBudget
        if self.deadline and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def propagate(self, I, L):
        adj = self.adj
        while True:
            changed = False
            if I.bit_count() > self.max_internal:
                return None
            U = self.full & ~I & ~L
            if U and I.bit_count() == self.max_internal:
                L |= U
                U = 0
                changed = True
            for v in _bits(L):
                avail = adj[v] & (I | U)
                if not avail:
                    return None
                if not (avail & I) and not (avail & (avail - 1)):
                    I |= avail
                    U &= ~avail
                    changed = True
            if I:
                comp = _reach(adj, I & -I, I | U)
                if I & ~comp:
                    return None
                outside = U & ~comp
                if outside:
                    L |= outside
                    changed = True
            if not changed:
                return I, L

    def search(self, I, L, depth):
        self.tick()
        if depth > self.max_depth:
            self.max_depth = depth
        st = self.propagate(I, L)
        if st is None:
            return None
        I, L = st
        U = self.full & ~I & ~L
        if not U:
            return self.realize(I, L)
        adj, deg = self.adj, self.deg
        # fail-first: an undominated leaf with the fewest possible internal neighbours
        best = -1
        best_cnt = 0
        for v in _bits(L):
            if adj[v] & I:
                continue
            cnt = (adj[v] & U).bit_count()
            if best < 0 or cnt < best_cnt:
                best, best_cnt = v, cnt
        if best >= 0:
            cands = sorted(_bits(adj[best] & U), key=lambda c: (-deg[c], c))
            excluded = 0
            for c in cands:
                res = self.search(I | (1 << c), L | excluded, depth + 1)
                if res is not None:
                    return res
                excluded |= 1 << c
            return None
        v = max(_bits(U), key=lambda c: (deg[c], -c))
        bit = 1 << v
        if I:
            order = ((I, L | bit), (I | bit, L))
        else:
            order = ((I | bit, L), (I, L | bit))
        for nI, nL in order:
            res = self.search(nI, nL, depth + 1)
            if res is not None:
                return res
        return None

    def realize(self, I, L):
        adj, k = self.adj, self.k
        inner = list(_bits(I))
        if not inner:
            return None
        leaves = list(_bits(L))
        if len(inner) == 1:
            c = inner[0]
            if len(leaves) >= k + 1:
                return [(c, x) for x in leaves]
            return None
        # quick necessary check: tree degree inside I is at most deg_{G[I]}
        need = 0
        for c in inner:
            lack = k + 1 - (adj[c] & I).bit_count()
            if lack > 0:
                if (adj[c] & L).bit_count() < lack:
                    return None
                need += lack
        if need > len(leaves):
            return None
        iedges = [(a, b) for a in inner for b in _bits(adj[a] & I) if a < b]
        pos = {c: i for i, c in enumerate(inner)}
        comp = list(range(len(inner)))
        tdeg = dict.fromkeys(inner, 0)
        chosen = []
        target = len(inner) - 1

        def rec(idx, ncomp_edges):
            self.tick()
            if ncomp_edges == target:
                return self.attach(inner, leaves, L, tdeg, chosen)
            if idx == len(iedges):
                return None
            a, b = iedges[idx]
            ca, cb = comp[pos[a]], comp[pos[b]]
            if ca != cb:
                saved = comp[:]
                for i in range(len(comp)):
                    if comp[i] == cb:
                        comp[i] = ca
                tdeg[a] += 1
                tdeg[b] += 1
                chosen.append((a, b))
                res = rec(idx + 1, ncomp_edges + 1)
                if res is not None:
                    return res
                chosen.pop()
                tdeg[a] -= 1
                tdeg[b] -= 1
                comp[:] = saved
            if self._still_connectable(iedges, idx + 1, comp, pos):
                return rec(idx + 1, ncomp_edges)
            return None

        return rec(0, 0)

    @staticmethod
    def _still_connectable(iedges, start, comp, pos):
        parent = {c: c for c in comp}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        groups = len(parent)
        for a, b in iedges[start:]:
            ra, rb = find(comp[pos[a]]), find(comp[pos[b]])
            if ra != rb:
                parent[ra] = rb
                groups -= 1
                if groups == 1:
                    return True
        return groups == 1

    def attach(self, inner, leaves, L, tdeg, chosen):
        adj, k = self.adj, self.k
        slots = []
        for c in inner:
            slots.extend([c] * max(0, k + 1 - tdeg[c]))
        if len(slots) > len(leaves):
            return None
        owner = {}

        def augment(s, seen):
            for x in _bits(adj[slots[s]] & L):
                if x in seen:
                    continue
                seen.add(x)
                if x not in owner or augment(owner[x], seen):
                    owner[x] = s
                    return True
            return False

        for s in range(len(slots)):
            if not augment(s, set()):
                return None
        edges = list(chosen)
        for x in leaves:
            if x in owner:
                edges.append((slots[owner[x]], x))
            else:
                c = ((adj[x] & ~L) & -(adj[x] & ~L)).bit_length() - 1
                edges.append((c, x))
        return edges


def search_roles(adj, n, k, node_limit=0, time_limit=0.0):
    """Exact search for a spanning tree of a connected graph on ``n >= 3`` vertices.

    Returns ``(status, edges, nodes, max_depth)``.
    """
    deadline = time.monotonic() + time_limit if time_limit else 0.0
    s = _RoleSearch(adj, n, k, node_limit, deadline)
    forced = 0
    for v in range(n):
        if s.deg[v] < k + 1:
            forced |= 1 << v
    try:
        edges = s.search(0, forced, 0)
    except _OutOfBudget:
        return BUDGET, None, s.nodes, s.max_depth
    if edges is None:
        return NONE, None, s.nodes, s.max_depth
    return FOUND, edges, s.nodes, s.max_depth


def enumerate_trees(adj, n, k):
    """Walk every spanning tree by edge contraction/deletion until one has no degree in [2,k].

    Returns ``(edges or None, trees_seen)``.
    """
    edges = [(a, b) for a in range(n) for b in _bits(adj[a]) if a < b]
    m = len(edges)
    comp = list(range(n))
    deg = [0] * n
    chosen = []
    count = [0]

    def connectable(start):
        parent = list(comp)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        groups = len(set(comp))
        for a, b in edges[start:]:
            ra, rb = find(comp[a]), find(comp[b])
            if ra != rb:
                parent[ra] = rb
                groups -= 1
        return groups == 1

    def rec(idx):
        if len(chosen) == n - 1:
            count[0] += 1
            for d in deg:
                if 2 <= d <= k:
                    return None
            return list(chosen)
        if idx == m:
            return None
        a, b = edges[idx]
        ca, cb = comp[a], comp[b]
        if ca != cb:
            # contract: merge the two components
            saved = comp[:]
            for i in range(n):
                if comp[i] == cb:
                    comp[i] = ca
            deg[a] += 1
            deg[b] += 1
            chosen.append((a, b))
            res = rec(idx + 1)
            if res is not None:
                return res
            chosen.pop()
            deg[a] -= 1
            deg[b] -= 1
            comp[:] = saved
        # delete: only while the remaining edges can still span
        if connectable(idx + 1):
            return rec(idx + 1)
        return None

    if n <= 1:
        return [], 1
    res = rec(0)
    return res, count[0]
