"""Graph generators: the extremal graph H, case-targeting fixtures, random graphs.

Case fixtures share one skeleton: ``u = 0`` of minimum degree ``delta = 2k``, its
neighbourhood ``1..delta`` a clique, and ``W`` (everything else) made of one or two
large cliques. The recipes only differ in how ``N(u)`` touches ``W`` and, for the
split variants, in a cut vertex ``w0`` placed at the smallest id of ``W``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, GraphError
from .thresholds import thresholds


@dataclass(frozen=True)
class ExtremalParams:
    """``strict`` enforces ``k <= n/6``; relaxed params only need nonempty blocks."""

    k: int
    n: int
    strict: bool = True

    def block_sizes(self) -> tuple[int, int, int]:
        k, n = self.k, self.n
        return 2 * k - 1, (n + 2) // 2 - k, (n + 1) // 2 - k

    def validate(self) -> None:
        k, n = self.k, self.n
        if k < 2:
            raise GraphError(f"class bound k must be >= 2, got {k}")
        if self.strict and 6 * k > n:
            raise GraphError(f"extremal family needs 2 <= k <= n/6, got k={k}, n={n}")
        if min(self.block_sizes()) < 1:
            raise GraphError("extremal family block sizes must be positive")


def build_h(p: ExtremalParams) -> Graph:
    """Three cliques ``K_{2k-1}``, ``K_{ceil((n+1)/2)-k}``, ``K_{floor((n+1)/2)-k}`` plus bridges.

    ``u = 0`` is joined to the first vertex ``v`` of the middle block; every other vertex
    of the first block gets a partner in the last block (distinct while they last).
    """
    p.validate()
    a, b, c = p.block_sizes()
    blocks = [range(0, a), range(a, a + b), range(a + b, a + b + c)]
    edges = []
    for blk in blocks:
        edges.extend((x, y) for x in blk for y in blk if x < y)
    u, v = blocks[0][0], blocks[1][0]
    edges.append((u, v))
    last = list(blocks[2])
    for i, ui in enumerate(blocks[0][1:]):
        edges.append((ui, last[i % len(last)]))
    return Graph(p.n, edges)


# -- case fixtures ----------------------------------------------------------------------

CASE_LABELS = (
    "dense",
    "W-connected/Case1",
    "W-connected/Case2/Subcase2.1",
    "W-connected/Case2/Subcase2.2",
    "W-disconnected/overlap/Case1",
    "W-disconnected/overlap/Case2",
    "W-disconnected/disjoint/Case1",
    "W-disconnected/disjoint/Case2",
    "W-disconnected/disjoint/Case3",
)

# how W is laid out for the W-connected subcases; decides which branch the
# one-semi-tree extension takes
VARIANTS = ("plain", "split-full", "split-partial")


class FixtureError(RuntimeError):
    """A generated fixture does not route to the case it was built for."""


class _Builder:
    def __init__(self, n: int):
        self.n = n
        self.edges: set[tuple[int, int]] = set()

    def add(self, x: int, y: int) -> None:
        if x != y:
            self.edges.add((min(x, y), max(x, y)))

    def clique(self, vs) -> None:
        vs = list(vs)
        for i, x in enumerate(vs):
            for y in vs[i + 1:]:
                self.add(x, y)

    def join(self, x: int, ys) -> None:
        for y in ys:
            self.add(x, y)

    def graph(self) -> Graph:
        return Graph(self.n, sorted(self.edges))


def _skeleton(k: int, n: int):
    delta = 2 * k
    b = _Builder(n)
    nu = list(range(1, delta + 1))
    b.join(0, nu)
    b.clique(nu)
    return b, nu, list(range(delta + 1, n))


def _halves(ws: list[int]) -> tuple[list[int], list[int]]:
    h = (len(ws) + 1) // 2
    return ws[:h], ws[h:]


def _connected_w(k: int, n: int, touch, variant: str) -> Graph:
    """W connected; ``touch(builder, nu, block)`` wires N(u) into W."""
    b, nu, ws = _skeleton(k, n)
    if variant == "plain":
        b.clique(ws)
        touch(b, nu, ws)
        return b.graph()
    # w0 is the only link between two cliques, so removing it splits W
    w0, rest = ws[0], ws[1:]
    c1, c2 = _halves(rest)
    b.clique(c1)
    b.clique(c2)
    b.join(w0, c1)
    if variant == "split-full":
        b.join(w0, c2)
    elif variant == "split-partial":
        b.join(w0, c2[: len(c2) // 2])
    else:
        raise GraphError(f"unknown variant {variant!r}")
    touch(b, nu, c1)
    return b.graph()


def _disconnected_w(k: int, n: int, touch) -> Graph:
    b, nu, ws = _skeleton(k, n)
    c1, c2 = _halves(ws)
    b.clique(c1)
    b.clique(c2)
    touch(b, nu, c1, c2)
    return b.graph()


def _build_case(label: str, k: int, n: int, variant: str) -> Graph:
    if label == "dense":
        # K_n minus a (near-)perfect matching
        b = _Builder(n)
        b.clique(range(n))
        for x in range(0, n - 1, 2):
            b.edges.discard((x, x + 1))
        return b.graph()
    if label == "W-connected/Case1":
        # u1 sees all of W
        return _connected_w(k, n, lambda b, nu, ws: b.join(nu[0], ws), "plain")
    if label == "W-connected/Case2/Subcase2.1":
        # every u_i sees at most k-1 vertices of W; u1 sees exactly k-1 of the first block
        def touch(b, nu, blk):
            b.join(nu[0], blk[: k - 1])
            for j in range(1, len(nu), 2):
                b.add(nu[j], blk[(k - 1 + j) % len(blk)])
        return _connected_w(k, n, touch, variant)
    if label == "W-connected/Case2/Subcase2.2":
        def touch(b, nu, blk):
            b.join(nu[0], blk[: 2 * k])
            b.add(nu[1], blk[2 * k])
        return _connected_w(k, n, touch, variant)
    if label == "W-disconnected/overlap/Case1":
        # u1 sees all of C1 (star branch) and two vertices of C2 (quasi branch)
        def touch(b, nu, c1, c2):
            b.join(nu[0], c1)
            b.join(nu[0], c2[:2])
            b.add(nu[1], c2[5])
        return _disconnected_w(k, n, touch)
    if label == "W-disconnected/overlap/Case2":
        if k < 3:
            raise GraphError("overlap/Case2 needs a vertex with 2 <= d_W <= k-1, impossible for k=2")
        def touch(b, nu, c1, c2):
            b.add(nu[0], c1[0])
            b.add(nu[0], c2[0])
            b.add(nu[1], c2[3])
        return _disconnected_w(k, n, touch)
    if label == "W-disconnected/disjoint/Case1":
        def touch(b, nu, c1, c2):
            b.join(nu[0], c1)
            b.join(nu[1], c2[: k + 1])
            b.add(nu[2], c1[7])
        return _disconnected_w(k, n, touch)
    if label == "W-disconnected/disjoint/Case2":
        def touch(b, nu, c1, c2):
            b.join(nu[0], c1[: k - 1])
            b.add(nu[1], c2[0])
            b.add(nu[2], c1[4])
        return _disconnected_w(k, n, touch)
    if label == "W-disconnected/disjoint/Case3":
        def touch(b, nu, c1, c2):
            b.join(nu[0], c1[: k + 2])
            b.add(nu[1], c2[0])
        return _disconnected_w(k, n, touch)
    raise GraphError(f"unknown case label {label!r}; expected one of {', '.join(CASE_LABELS)}")


def case_family(label: str, k: int, n: int, variant: str = "plain", verify: bool = True) -> Graph:
    """A graph meeting the construction's hypotheses whose build takes branch ``label``.

    ``variant`` only matters for the W-connected subcases. With ``verify`` the graph is
    run through the construction and rejected unless the trace hits ``label``.
    """
    if k < 2:
        raise GraphError(f"class bound k must be >= 2, got {k}")
    n1 = thresholds(k).n1
    if n < n1:
        raise GraphError(f"case fixtures need n >= n1({k}) = {n1}, got n={n}")
    if variant not in VARIANTS:
        raise GraphError(f"unknown variant {variant!r}")
    g = _build_case(label, k, n, variant)
    if verify:
        from .constructive import construct_2k_st

        _, trace = construct_2k_st(g, k)
        if trace.label != label:
            raise FixtureError(f"fixture for {label!r} routed to {trace.label!r}")
    return g


def random_graph(n: int, edge_prob: float, seed: int | None = 0) -> Graph:
    """G(n, p) sample; the same seed always yields the same graph."""
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {edge_prob}")
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < edge_prob]
    return Graph(n, edges)
