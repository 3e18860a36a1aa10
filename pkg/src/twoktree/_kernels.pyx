# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels on one ``uint64`` adjacency word per vertex (n <= 64).

Mirrors :mod:`twoktree._pykernels` branch for branch, so both backends visit the same
nodes in the same order and report the same counts.
"""

from libc.stdint cimport uint64_t
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef enum:
    FOUND = 0
    NONE = 1
    BUDGET = 2
    MAXN = 64
    MAXE = 2016


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int low(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t bit(int v) nogil:
    return (<uint64_t>1) << v


cdef double now() nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef uint64_t reach(uint64_t* adj, uint64_t start, uint64_t allowed) nogil:
    cdef uint64_t seen = start, frontier = start, nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= adj[low(f)]
            f &= f - 1
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


cdef struct Search:
    uint64_t adj[MAXN]
    int deg[MAXN]
    int n
    int k
    int max_internal
    uint64_t full
    long long nodes
    long long node_limit
    int max_depth
    double deadline
    bint out
    # realisation scratch
    int inner[MAXN]
    int ninner
    int pos[MAXN]
    int ea[MAXE]
    int eb[MAXE]
    int ne
    int comp[MAXN]
    int tdeg[MAXN]
    int ca[MAXN]
    int cb[MAXN]
    int nchosen
    uint64_t L
    # leaf matching
    int slots[MAXN]
    int nslots
    int owner[MAXN]
    # result
    int ru[MAXN]
    int rv[MAXN]
    int nres


cdef inline bint tick(Search* s) nogil:
    s.nodes += 1
    if s.node_limit and s.nodes > s.node_limit:
        s.out = True
    elif s.deadline != 0.0 and (s.nodes & 255) == 0 and now() > s.deadline:
        s.out = True
    return s.out


cdef bint propagate(Search* s, uint64_t* pI, uint64_t* pL) nogil:
    cdef uint64_t I = pI[0], L = pL[0], U, avail, lv, comp, outside
    cdef bint changed
    while True:
        changed = False
        if popc(I) > s.max_internal:
            return False
        U = s.full & ~I & ~L
        if U and popc(I) == s.max_internal:
            L |= U
            U = 0
            changed = True
        lv = L
        while lv:
            avail = s.adj[low(lv)] & (I | U)
            lv &= lv - 1
            if not avail:
                return False
            if not (avail & I) and not (avail & (avail - 1)):
                I |= avail
                U &= ~avail
                changed = True
        if I:
            comp = reach(s.adj, I & (~I + 1), I | U)
            if I & ~comp:
                return False
            outside = U & ~comp
            if outside:
                L |= outside
                changed = True
        if not changed:
            pI[0] = I
            pL[0] = L
            return True


cdef bint augment(Search* s, int slot, uint64_t* seen) nogil:
    cdef uint64_t xs = s.adj[s.slots[slot]] & s.L
    cdef int x
    while xs:
        x = low(xs)
        xs &= xs - 1
        if seen[0] & bit(x):
            continue
        seen[0] |= bit(x)
        if s.owner[x] < 0 or augment(s, s.owner[x], seen):
            s.owner[x] = slot
            return True
    return False


cdef bint attach(Search* s) nogil:
    cdef int i, c, r, x, total = 0
    cdef uint64_t seen, lv, up
    for i in range(s.ninner):
        c = s.inner[i]
        r = s.k + 1 - s.tdeg[c]
        if r > 0:
            total += r
    if total > popc(s.L):
        return False
    s.nslots = 0
    for i in range(s.ninner):
        c = s.inner[i]
        r = s.k + 1 - s.tdeg[c]
        while r > 0:
            s.slots[s.nslots] = c
            s.nslots += 1
            r -= 1
    for x in range(s.n):
        s.owner[x] = -1
    for i in range(s.nslots):
        seen = 0
        if not augment(s, i, &seen):
            return False
    s.nres = 0
    for i in range(s.nchosen):
        s.ru[s.nres] = s.ca[i]
        s.rv[s.nres] = s.cb[i]
        s.nres += 1
    lv = s.L
    while lv:
        x = low(lv)
        lv &= lv - 1
        if s.owner[x] >= 0:
            s.ru[s.nres] = s.slots[s.owner[x]]
        else:
            up = s.adj[x] & ~s.L
            s.ru[s.nres] = low(up)
        s.rv[s.nres] = x
        s.nres += 1
    return True


cdef bint connectable(Search* s, int start) nogil:
    cdef int parent[MAXN]
    cdef bint present[MAXN]
    cdef int i, groups = 0, ra, rb
    for i in range(s.ninner):
        parent[i] = i
        present[i] = False
    for i in range(s.ninner):
        if not present[s.comp[i]]:
            present[s.comp[i]] = True
            groups += 1
    for i in range(start, s.ne):
        ra = s.comp[s.pos[s.ea[i]]]
        while parent[ra] != ra:
            parent[ra] = parent[parent[ra]]
            ra = parent[ra]
        rb = s.comp[s.pos[s.eb[i]]]
        while parent[rb] != rb:
            parent[rb] = parent[parent[rb]]
            rb = parent[rb]
        if ra != rb:
            parent[ra] = rb
            groups -= 1
            if groups == 1:
                return True
    return groups == 1


cdef int realize_rec(Search* s, int idx, int nedges) nogil:
    """1 found, 0 exhausted, -1 out of budget."""
    cdef int a, b, pa, pb, cA, cB, i, res
    cdef int saved[MAXN]
    if tick(s):
        return -1
    if nedges == s.ninner - 1:
        return 1 if attach(s) else 0
    if idx == s.ne:
        return 0
    a = s.ea[idx]
    b = s.eb[idx]
    cA = s.comp[s.pos[a]]
    cB = s.comp[s.pos[b]]
    if cA != cB:
        for i in range(s.ninner):
            saved[i] = s.comp[i]
            if s.comp[i] == cB:
                s.comp[i] = cA
        s.tdeg[a] += 1
        s.tdeg[b] += 1
        s.ca[s.nchosen] = a
        s.cb[s.nchosen] = b
        s.nchosen += 1
        res = realize_rec(s, idx + 1, nedges + 1)
        if res != 0:
            return res
        s.nchosen -= 1
        s.tdeg[a] -= 1
        s.tdeg[b] -= 1
        for i in range(s.ninner):
            s.comp[i] = saved[i]
    if connectable(s, idx + 1):
        return realize_rec(s, idx + 1, nedges)
    return 0


cdef int realize(Search* s, uint64_t I, uint64_t L) nogil:
    cdef int i, j, c, lack, need = 0, nleaves = popc(L)
    cdef uint64_t m, rest
    if not I:
        return 0
    s.ninner = 0
    m = I
    while m:
        c = low(m)
        m &= m - 1
        s.pos[c] = s.ninner
        s.inner[s.ninner] = c
        s.ninner += 1
    s.L = L
    if s.ninner == 1:
        if nleaves >= s.k + 1:
            c = s.inner[0]
            s.nres = 0
            m = L
            while m:
                s.ru[s.nres] = c
                s.rv[s.nres] = low(m)
                s.nres += 1
                m &= m - 1
            return 1
        return 0
    for i in range(s.ninner):
        c = s.inner[i]
        lack = s.k + 1 - popc(s.adj[c] & I)
        if lack > 0:
            if popc(s.adj[c] & L) < lack:
                return 0
            need += lack
    if need > nleaves:
        return 0
    s.ne = 0
    for i in range(s.ninner):
        c = s.inner[i]
        rest = s.adj[c] & I
        while rest:
            j = low(rest)
            rest &= rest - 1
            if c < j:
                s.ea[s.ne] = c
                s.eb[s.ne] = j
                s.ne += 1
    for i in range(s.ninner):
        s.comp[i] = i
        s.tdeg[s.inner[i]] = 0
    s.nchosen = 0
    return realize_rec(s, 0, 0)


cdef int search(Search* s, uint64_t I, uint64_t L, int depth) nogil:
    """1 found, 0 exhausted, -1 out of budget."""
    cdef uint64_t U, lv, excluded, v_bit, cm
    cdef int best, best_cnt, cnt, v, i, j, c, res, ncand, tmp
    cdef int cands[MAXN]
    if tick(s):
        return -1
    if depth > s.max_depth:
        s.max_depth = depth
    if not propagate(s, &I, &L):
        return 0
    U = s.full & ~I & ~L
    if not U:
        return realize(s, I, L)
    best = -1
    best_cnt = 0
    lv = L
    while lv:
        v = low(lv)
        lv &= lv - 1
        if s.adj[v] & I:
            continue
        cnt = popc(s.adj[v] & U)
        if best < 0 or cnt < best_cnt:
            best = v
            best_cnt = cnt
    if best >= 0:
        ncand = 0
        cm = s.adj[best] & U
        while cm:
            c = low(cm)
            cm &= cm - 1
            # insertion by (-deg, id); ids arrive ascending so ties stay stable
            j = ncand
            while j > 0 and s.deg[cands[j - 1]] < s.deg[c]:
                cands[j] = cands[j - 1]
                j -= 1
            cands[j] = c
            ncand += 1
        excluded = 0
        for i in range(ncand):
            res = search(s, I | bit(cands[i]), L | excluded, depth + 1)
            if res != 0:
                return res
            excluded |= bit(cands[i])
        return 0
    v = -1
    lv = U
    while lv:
        c = low(lv)
        lv &= lv - 1
        if v < 0 or s.deg[c] > s.deg[v]:
            v = c
    v_bit = bit(v)
    if I:
        res = search(s, I, L | v_bit, depth + 1)
        if res != 0:
            return res
        return search(s, I | v_bit, L, depth + 1)
    res = search(s, I | v_bit, L, depth + 1)
    if res != 0:
        return res
    return search(s, I, L | v_bit, depth + 1)


def search_roles(adj, int n, int k, long long node_limit=0, double time_limit=0.0):
    """Exact search on ``3 <= n <= 64`` vertices; returns ``(status, edges, nodes, max_depth)``."""
    if n > MAXN:
        raise ValueError("compiled kernel handles at most 64 vertices")
    cdef Search s
    cdef int v, res
    cdef uint64_t forced = 0
    s.n = n
    s.k = k
    s.full = (<uint64_t>0 - 1) if n == 64 else (bit(n) - 1)
    s.max_internal = (n - 2) // k
    s.nodes = 0
    s.node_limit = node_limit
    s.max_depth = 0
    s.out = False
    s.deadline = now() + time_limit if time_limit > 0 else 0.0
    for v in range(n):
        s.adj[v] = <uint64_t>adj[v]
        s.deg[v] = popc(s.adj[v])
        if s.deg[v] < k + 1:
            forced |= bit(v)
    with nogil:
        res = search(&s, 0, forced, 0)
    if res < 0:
        return BUDGET, None, s.nodes, s.max_depth
    if res == 0:
        return NONE, None, s.nodes, s.max_depth
    return FOUND, [(s.ru[i], s.rv[i]) for i in range(s.nres)], s.nodes, s.max_depth


cdef struct Enum:
    int n
    int k
    int m
    int ea[MAXE]
    int eb[MAXE]
    int comp[MAXN]
    int deg[MAXN]
    int ca[MAXN]
    int cb[MAXN]
    int nchosen
    long long count


cdef bint enum_connectable(Enum* e, int start) nogil:
    cdef int parent[MAXN]
    cdef bint present[MAXN]
    cdef int i, groups = 0, ra, rb
    for i in range(e.n):
        parent[i] = e.comp[i]
        present[i] = False
    for i in range(e.n):
        if not present[e.comp[i]]:
            present[e.comp[i]] = True
            groups += 1
    for i in range(start, e.m):
        ra = e.comp[e.ea[i]]
        while parent[ra] != ra:
            parent[ra] = parent[parent[ra]]
            ra = parent[ra]
        rb = e.comp[e.eb[i]]
        while parent[rb] != rb:
            parent[rb] = parent[parent[rb]]
            rb = parent[rb]
        if ra != rb:
            parent[ra] = rb
            groups -= 1
    return groups == 1


cdef bint enum_rec(Enum* e, int idx) nogil:
    cdef int a, b, cA, cB, i
    cdef int saved[MAXN]
    if e.nchosen == e.n - 1:
        e.count += 1
        for i in range(e.n):
            if 2 <= e.deg[i] <= e.k:
                return False
        return True
    if idx == e.m:
        return False
    a = e.ea[idx]
    b = e.eb[idx]
    cA = e.comp[a]
    cB = e.comp[b]
    if cA != cB:
        for i in range(e.n):
            saved[i] = e.comp[i]
            if e.comp[i] == cB:
                e.comp[i] = cA
        e.deg[a] += 1
        e.deg[b] += 1
        e.ca[e.nchosen] = a
        e.cb[e.nchosen] = b
        e.nchosen += 1
        if enum_rec(e, idx + 1):
            return True
        e.nchosen -= 1
        e.deg[a] -= 1
        e.deg[b] -= 1
        for i in range(e.n):
            e.comp[i] = saved[i]
    if enum_connectable(e, idx + 1):
        return enum_rec(e, idx + 1)
    return False


def enumerate_trees(adj, int n, int k):
    """Contraction/deletion walk over spanning trees; returns ``(edges or None, trees_seen)``."""
    if n > MAXN:
        raise ValueError("compiled kernel handles at most 64 vertices")
    if n <= 1:
        return [], 1
    cdef Enum e
    cdef int a, b
    cdef uint64_t rest
    cdef bint ok
    e.n = n
    e.k = k
    e.m = 0
    e.nchosen = 0
    e.count = 0
    for a in range(n):
        e.comp[a] = a
        e.deg[a] = 0
        rest = <uint64_t>adj[a]
        while rest:
            b = low(rest)
            rest &= rest - 1
            if a < b:
                e.ea[e.m] = a
                e.eb[e.m] = b
                e.m += 1
    with nogil:
        ok = enum_rec(&e, 0)
    if not ok:
        return None, e.count
    return [(e.ca[i], e.cb[i]) for i in range(e.nchosen)], e.count
