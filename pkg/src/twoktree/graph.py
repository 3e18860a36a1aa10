"""Immutable simple graphs and the structural quantities the rest of the package reads.

Vertices are the integers ``0..n-1``. Adjacency is stored twice: as sorted
neighbour tuples (for deterministic iteration) and as integer bitmasks (for
fast set algebra and popcounts).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

COMPLETE = "complete"


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex arguments."""


class ParseError(GraphError):
    """Edge-list text that does not follow the ``n m`` / ``u v`` format."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def vertices_of(mask: int) -> list[int]:
    return list(_bits(mask))


class Graph:
    """A simple undirected graph on ``0..n-1``; never mutated after construction."""

    __slots__ = ("_n", "_nbrs", "_masks", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        masks = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if masks[u] >> v & 1:
                raise GraphError(f"parallel edge ({u}, {v})")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
            m += 1
        self._n = n
        self._masks = tuple(masks)
        self._nbrs = tuple(tuple(_bits(x)) for x in masks)
        self._m = m

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        g._n = len(masks)
        g._masks = tuple(masks)
        g._nbrs = tuple(tuple(_bits(x)) for x in masks)
        g._m = sum(x.bit_count() for x in masks) // 2
        return g

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls.from_masks([full ^ (1 << v) for v in range(n)])

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return self._m

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._masks == other._masks

    def __hash__(self) -> int:
        return hash(self._masks)

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self._m})"

    def _check(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise GraphError(f"vertex {v} out of range for n={self._n}")

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._nbrs[v]

    def neighbor_mask(self, v: int) -> int:
        self._check(v)
        return self._masks[v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self._masks[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, nb in enumerate(self._nbrs):
            for v in nb:
                if u < v:
                    yield (u, v)

    def degrees(self) -> list[int]:
        return [x.bit_count() for x in self._masks]

    def min_degree(self) -> int:
        return min((x.bit_count() for x in self._masks), default=0)

    def degree_into(self, v: int, within: int | Iterable[int]) -> int:
        """``d_S(v)``: neighbours of ``v`` inside a vertex set (mask or iterable)."""
        if not isinstance(within, int):
            within = mask_of(within)
        return (self.neighbor_mask(v) & within).bit_count()

    def neighbors_in(self, v: int, within: int | Iterable[int]) -> list[int]:
        if not isinstance(within, int):
            within = mask_of(within)
        return vertices_of(self.neighbor_mask(v) & within)

    def is_complete(self) -> bool:
        return all(x.bit_count() == self._n - 1 for x in self._masks)

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..len-1``; also returns the original labels."""
        labels = sorted(set(vertices))
        for v in labels:
            self._check(v)
        index = {v: i for i, v in enumerate(labels)}
        sub = mask_of(labels)
        masks = []
        for v in labels:
            masks.append(mask_of(index[w] for w in _bits(self._masks[v] & sub)))
        return Graph.from_masks(masks), labels

    def to_edge_list(self) -> str:
        lines = [f"{self._n} {self._m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_edge_list().encode()).hexdigest()

    def to_dot(self, highlight: Iterable[tuple[int, int]] = ()) -> str:
        bold = {(min(e), max(e)) for e in highlight}
        out = ["graph G {"]
        for v in range(self._n):
            out.append(f"  {v};")
        for u, v in self.edges():
            style = " [penwidth=3]" if (u, v) in bold else ""
            out.append(f"  {u} -- {v}{style};")
        out.append("}")
        return "\n".join(out) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the canonical ``n m`` header followed by ``m`` lines of ``u v`` with ``u < v``."""
    lines = text.splitlines()
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip()]
    if not body:
        raise ParseError("empty input", 1)
    lineno, head = body[0]
    if len(head) != 2:
        raise ParseError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must hold two integers", lineno) from None
    if n < 0 or m < 0:
        raise ParseError("negative count in header", lineno)
    if len(body) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(body) - 1}", lineno)
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, parts in body[1:]:
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        if u == v:
            raise ParseError(f"self-loop {u} {v}", lineno)
        if not 0 <= u < v < n:
            raise ParseError(f"edge {u} {v} violates 0 <= u < v < {n}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v))
    return Graph(n, edges)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def degree(g: Graph, v: int) -> int:
    return g.neighbor_mask(v).bit_count()


def neighborhood_union(g: Graph, u: int, v: int) -> frozenset[int]:
    """``N(u) | N(v)``; may contain ``u`` or ``v`` themselves when they are adjacent."""
    if u == v:
        raise GraphError("neighborhood_union needs two distinct vertices")
    return frozenset(_bits(g.neighbor_mask(u) | g.neighbor_mask(v)))


def _nonadjacent_min(g: Graph, key) -> int | str:
    masks = g.masks
    n = g.n
    best = None
    for u in range(n):
        rest = ((1 << n) - 1) & ~masks[u] & ~((1 << (u + 1)) - 1)
        for v in _bits(rest):
            val = key(masks[u], masks[v])
            if best is None or val < best:
                best = val
    return COMPLETE if best is None else best


def nc_value(g: Graph) -> int | str:
    """Minimum ``|N(u) | N(v)|`` over nonadjacent pairs, or ``COMPLETE``."""
    return _nonadjacent_min(g, lambda a, b: (a | b).bit_count())


def sigma_value(g: Graph) -> int | str:
    """Minimum degree sum over nonadjacent pairs, or ``COMPLETE``."""
    return _nonadjacent_min(g, lambda a, b: a.bit_count() + b.bit_count())


def reach_mask(g: Graph, start: int, allowed: int) -> int:
    """Vertices reachable from ``start`` inside the induced subgraph on ``allowed``."""
    masks = g.masks
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Connected components of ``G[within]``, ordered by smallest member."""
    if within is None:
        rest = (1 << g.n) - 1
    else:
        rest = mask_of(within)
        if rest >> g.n:
            raise GraphError("vertex set exceeds graph order")
    out = []
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = reach_mask(g, start, rest)
        out.append(frozenset(_bits(comp)))
        rest &= ~comp
    return out


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    return len(components(g, within)) <= 1


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    sm = mask_of(s)
    return all((g.neighbor_mask(v) | (1 << v)) & sm == sm for v in _bits(sm))


@dataclass(frozen=True)
class HypothesisReport:
    n: int
    k: int
    delta: int
    sigma: int | str
    nc: int | str
    connected: bool
    flags: dict[str, bool] = field(default_factory=dict)
    reasons: dict[str, list[str]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "sigma": self.sigma,
            "nc": self.nc,
            "connected": self.connected,
            "flags": dict(self.flags),
            "reasons": {key: list(v) for key, v in self.reasons.items()},
        }


def hypothesis_report(g: Graph, k: int) -> HypothesisReport:
    """Evaluate the degree, degree-sum and neighbourhood-union hypotheses for class bound ``k``."""
    from .thresholds import dense_condition, thresholds

    if k < 2:
        raise GraphError(f"class bound k must be >= 2, got {k}")
    n = g.n
    th = thresholds(k)
    delta = g.min_degree()
    sigma = sigma_value(g)
    nc = nc_value(g)
    connected = n > 0 and is_connected(g)

    reasons: dict[str, list[str]] = {}

    def flag(name: str, checks: list[tuple[bool, str]]) -> bool:
        failed = [msg for ok, msg in checks if not ok]
        reasons[name] = failed
        return not failed

    sigma_ok_1 = sigma == COMPLETE or sigma >= n - 1
    sigma_ok_2 = sigma == COMPLETE or sigma >= n - 2
    nc_ok = nc == COMPLETE or 2 * nc >= n - 2
    flags = {
        # delta >= 4*sqrt(2n)  <=>  delta^2 >= 32 n
        "thm1_1": flag("thm1_1", [(connected, "disconnected"),
                                  (delta * delta >= 32 * n, f"delta {delta} < 4*sqrt(2n)")]),
        "thm1_2": flag("thm1_2", [(n >= 8, f"n {n} < 8"),
                                  (sigma_ok_1, f"sigma {sigma} < n-1 = {n - 1}")]),
        "thm1_4": flag("thm1_4", [(connected, "disconnected"),
                                  (dense_condition(delta, n, k), f"delta {delta} < c_k*sqrt(n) = {th.c_k * n ** 0.5:.4f}")]),
        "thm1_5_condition": flag("thm1_5_condition", [(connected, "disconnected"),
                                                      (n >= th.n0, f"n < n0 ({n} < {th.n0})"),
                                                      (sigma_ok_2, f"sigma {sigma} < n-2 = {n - 2}")]),
        "thm1_6": flag("thm1_6", [(connected, "disconnected"),
                                  (n >= th.n1, f"n < n1 ({n} < {th.n1})"),
                                  (delta >= 2 * k, f"delta {delta} < {2 * k}"),
                                  (nc_ok, f"nc {nc} < (n-2)/2 = {(n - 2) / 2}")]),
    }
    return HypothesisReport(n=n, k=k, delta=delta, sigma=sigma, nc=nc,
                            connected=connected, flags=flags, reasons=reasons)
