"""Exact and heuristic construction of spanning trees with no degree in [2, k]."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import kernels
from .certificate import ContractError, TreeCertificate, classify
from .graph import Graph, is_connected
from .thresholds import dense_condition, thresholds

log = logging.getLogger(__name__)

FOUND = "found"
NONE = "none"
BUDGET = "budget_exhausted"
_STATUS = {0: FOUND, 1: NONE, 2: BUDGET}

NAIVE_CAP = 10


class DenseOracleError(RuntimeError):
    """The dense oracle failed on an input that meets its minimum-degree precondition."""


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 5_000_000
    time_limit: float | None = None

    def __post_init__(self):
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")


@dataclass
class SolveOutcome:
    status: str
    certificate: TreeCertificate | None = None
    nodes: int = 0
    max_depth: int = 0
    reason: str | None = None
    backend: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_dict(self) -> dict:
        out = {"status": self.status, "nodes": self.nodes, "max_depth": self.max_depth}
        if self.reason:
            out["reason"] = self.reason
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_text()
        return out


def _trivial(g: Graph, k: int) -> SolveOutcome | None:
    if k < 2:
        raise ContractError(f"class bound k must be >= 2, got {k}")
    if g.n == 0:
        return SolveOutcome(NONE, reason="empty graph")
    if not is_connected(g):
        return SolveOutcome(NONE, reason="graph is disconnected")
    if g.n <= 2:
        return SolveOutcome(FOUND, TreeCertificate(range(g.n), list(g.edges()), k))
    return None


def _checked(g: Graph, k: int, edges) -> TreeCertificate:
    cert = TreeCertificate(range(g.n), edges, k)
    kind = classify(g, cert, k)
    if not kind.is_full:
        raise RuntimeError(f"search returned an unsound certificate: {kind}")
    return cert


def solve_exact(g: Graph, k: int, budget: SearchBudget | None = None,
                backend: str | None = None) -> SolveOutcome:
    """Decide whether ``g`` has a [2,k]-ST; complete unless the budget runs out."""
    budget = budget or SearchBudget()
    early = _trivial(g, k)
    if early is not None:
        return early
    code, edges, nodes, depth = kernels.search_roles(
        g.masks, g.n, k, budget.node_limit, budget.time_limit or 0.0, backend=backend)
    status = _STATUS[code]
    cert = _checked(g, k, edges) if status == FOUND else None
    used = kernels._pick(g.n, backend).__name__.rsplit(".", 1)[-1]
    return SolveOutcome(status, cert, nodes, depth, backend=used)


def solve_naive(g: Graph, k: int, cap: int = NAIVE_CAP, backend: str | None = None) -> SolveOutcome:
    """Enumerate spanning trees one by one; only meant as an oracle on small graphs."""
    if g.n > cap:
        raise ContractError(f"naive enumeration is capped at n <= {cap}, got n={g.n}")
    early = _trivial(g, k)
    if early is not None:
        return early
    edges, seen = kernels.enumerate_trees(g.masks, g.n, k, backend=backend)
    if edges is None:
        return SolveOutcome(NONE, nodes=seen)
    return SolveOutcome(FOUND, _checked(g, k, edges), nodes=seen)


# -- dense oracle --------------------------------------------------------------------------


def _grow(g: Graph, k: int, seed: int) -> list[tuple[int, int]] | None:
    """Greedy growth from a spanning star at ``seed``; ``None`` when it stalls.

    Invariant throughout: every tree vertex has degree 1 or at least k+1.
    """
    masks = g.masks
    n = g.n
    if masks[seed].bit_count() < k + 1:
        return None
    parent = {seed: -1}
    tdeg = [0] * n
    for x in g.neighbors(seed):
        parent[x] = seed
        tdeg[x] = 1
    tdeg[seed] = masks[seed].bit_count()
    internal = 1 << seed
    covered = masks[seed] | internal
    full = (1 << n) - 1

    def attach(p: int, x: int):
        nonlocal covered
        parent[x] = p
        tdeg[p] += 1
        tdeg[x] = 1
        covered |= 1 << x

    while covered != full:
        uncovered = full & ~covered
        # cheapest move: hang uncovered vertices on existing internal vertices
        moved = False
        for w in _iter(uncovered):
            hub = masks[w] & internal
            if hub:
                attach(_low(hub), w)
                moved = True
        if moved:
            continue
        leaves = covered & ~internal
        ranked = sorted(_iter(leaves), key=lambda v: (-(masks[v] & uncovered).bit_count(), v))
        done = False
        for leaf in ranked:
            fresh = masks[leaf] & uncovered
            cnt = fresh.bit_count()
            if cnt == 0:
                break
            if cnt >= k:
                for w in _iter(fresh):
                    attach(leaf, w)
                internal |= 1 << leaf
                done = True
                break
            # promote the leaf by also stealing k - cnt leaves from roomy internal vertices
            steal = []
            spare = {}
            for y in _iter(masks[leaf] & leaves & ~(1 << leaf)):
                p = parent[y]
                if p < 0 or p == leaf:
                    continue
                room = spare.get(p, tdeg[p] - (k + 1))
                if room > 0:
                    steal.append(y)
                    spare[p] = room - 1
                    if len(steal) == k - cnt:
                        break
            if len(steal) < k - cnt:
                continue
            for y in steal:
                tdeg[parent[y]] -= 1
                parent[y] = leaf
                tdeg[leaf] += 1
            for w in _iter(fresh):
                attach(leaf, w)
            internal |= 1 << leaf
            done = True
            break
        if not done:
            return None
    return [(p, x) for x, p in parent.items() if p >= 0]


def _iter(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def solve_dense(g: Graph, k: int, seeds: int = 8, fallback_nodes: int = 2_000_000) -> TreeCertificate:
    """Produce a [2,k]-ST of a connected graph with minimum degree at least ``c_k * sqrt(n)``.

    Greedy growth from the highest-degree seeds, then exact search as a last resort.
    """
    if k < 2:
        raise ContractError(f"class bound k must be >= 2, got {k}")
    n = g.n
    delta = g.min_degree()
    if n == 0 or not is_connected(g):
        raise ContractError("dense oracle needs a nonempty connected graph")
    if not dense_condition(delta, n, k):
        raise ContractError(
            f"dense oracle precondition: delta={delta} < c_k*sqrt(n)={thresholds(k).c_k * n ** 0.5:.3f}")
    if n <= 2:
        return TreeCertificate(range(n), list(g.edges()), k)
    degs = g.degrees()
    order = sorted(range(n), key=lambda v: (-degs[v], v))
    for seed in order[:seeds]:
        edges = _grow(g, k, seed)
        if edges is not None:
            return _checked(g, k, edges)
    log.warning("dense greedy stalled on n=%d, falling back to exact search", n)
    out = solve_exact(g, k, SearchBudget(node_limit=fallback_nodes))
    if out.found:
        return out.certificate
    raise DenseOracleError(f"dense oracle contract violated (exact search: {out.status})")
