"""Tree certificates: validation, degree-class classification, gluing, induced paths."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, mask_of, vertices_of


class ContractError(ValueError):
    """A documented precondition of an operation was not met by its caller."""


@dataclass(frozen=True)
class TreeCertificate:
    """An explicit edge list claimed to form a tree on ``vertices``.

    Nothing about the claim is trusted; :func:`classify` re-checks it against a host graph.
    """

    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]
    k: int

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]], k: int):
        object.__setattr__(self, "vertices", frozenset(vertices))
        object.__setattr__(self, "edges", tuple((int(a), int(b)) for a, b in edges))
        object.__setattr__(self, "k", int(k))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], k: int,
                   extra: Iterable[int] = ()) -> "TreeCertificate":
        edges = list(edges)
        vs = {x for e in edges for x in e} | set(extra)
        return cls(vs, edges, k)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for a, b in self.edges:
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
        return deg

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def to_text(self) -> str:
        out = [f"cert k={self.k}", "vertices: " + " ".join(map(str, sorted(self.vertices)))]
        out.extend(f"edge {a} {b}" for a, b in self.edges)
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TreeCertificate":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("cert k="):
            raise ValueError("certificate must start with 'cert k=<k>'")
        try:
            k = int(lines[0][len("cert k="):])
        except ValueError:
            raise ValueError("bad class bound in certificate header") from None
        if len(lines) < 2 or not lines[1].startswith("vertices:"):
            raise ValueError("second certificate line must be 'vertices: <ids>'")
        try:
            vs = [int(x) for x in lines[1][len("vertices:"):].split()]
        except ValueError:
            raise ValueError("bad vertex id in certificate") from None
        edges = []
        for i, ln in enumerate(lines[2:], start=3):
            parts = ln.split()
            if len(parts) != 3 or parts[0] != "edge":
                raise ValueError(f"line {i}: expected 'edge u v'")
            try:
                edges.append((int(parts[1]), int(parts[2])))
            except ValueError:
                raise ValueError(f"line {i}: bad edge endpoint") from None
        return cls(vs, edges, k)


@dataclass(frozen=True)
class TreeKind:
    """Classification result.

    ``kind`` is ``"full"`` (a [2,k]-ST of the span), ``"semi"``, ``"quasi"`` or ``"invalid"``.
    ``witnesses`` are the vertices whose tree degree lies in ``[2, k]``.
    """

    kind: str
    i: int = 0
    witnesses: tuple[int, ...] = ()
    spanning: bool = False
    reason: str | None = None

    @property
    def is_full(self) -> bool:
        return self.kind == "full"

    @property
    def is_valid_tree(self) -> bool:
        return self.kind != "invalid"

    def __str__(self) -> str:
        if self.kind == "full":
            return "full_2k_ST"
        if self.kind == "invalid":
            return f"invalid({self.reason})"
        return f"{self.kind}({self.i}, {{{', '.join(map(str, self.witnesses))}}})"


def tree_problem(g: Graph, t: TreeCertificate) -> str | None:
    """Return why ``t`` is not a tree of ``g`` on ``t.vertices``, or ``None`` if it is one."""
    n = g.n
    for v in t.vertices:
        if not 0 <= v < n:
            return f"vertex {v} outside host graph"
    seen = set()
    for a, b in t.edges:
        if a not in t.vertices or b not in t.vertices:
            return f"edge {a}-{b} has endpoint outside vertex set"
        if a == b:
            return f"loop {a}-{b}"
        key = (min(a, b), max(a, b))
        if key in seen:
            return f"repeated edge {a}-{b}"
        seen.add(key)
        if not g.has_edge(a, b):
            return f"edge {a}-{b} not in host graph"
    if not t.vertices:
        return "empty vertex set"
    if len(t.edges) != len(t.vertices) - 1:
        return f"{len(t.edges)} edges on {len(t.vertices)} vertices"
    parent = {v: v for v in t.vertices}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in t.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return f"edge {a}-{b} closes a cycle"
        parent[ra] = rb
    return None


def classify(g: Graph, t: TreeCertificate, k: int | None = None,
             span: Iterable[int] | None = None) -> TreeKind:
    """Validate ``t`` as a tree of ``g`` and classify it by its degrees.

    ``span`` is the vertex set the tree is meant to span (all of ``g`` by default).
    A spanning tree with degree-``k`` vertices is reported as quasi; the semi label is
    reserved for proper subtrees, which are the ones that can still be glued onto.
    """
    k = t.k if k is None else k
    if k < 2:
        raise ContractError(f"class bound k must be >= 2, got {k}")
    problem = tree_problem(g, t)
    if problem is not None:
        return TreeKind("invalid", reason=problem)
    target = frozenset(range(g.n)) if span is None else frozenset(span)
    spanning = t.vertices == target
    deg = t.degrees()
    bad = tuple(sorted(v for v, d in deg.items() if 2 <= d <= k))
    if not bad:
        return TreeKind("full" if spanning else "semi", 0, (), spanning)
    if not spanning and all(deg[v] == k for v in bad):
        return TreeKind("semi", len(bad), bad, spanning)
    return TreeKind("quasi", len(bad), bad, spanning)


def glue(g: Graph, t: TreeCertificate,
         parts: Sequence[tuple[Iterable[int], TreeCertificate]]) -> TreeCertificate:
    """Attach a [2,k]-ST of ``G[S_j]`` at each degree-``k`` vertex of the semi tree ``t``.

    Every ``S_j`` must meet ``V(t)`` in exactly one vertex ``v_j`` with ``d_t(v_j) = k``,
    the ``S_j`` must be pairwise disjoint, and the degree-``k`` vertices of ``t`` must all
    be covered. The result has no vertex of degree in ``[2, k]``.
    """
    k = t.k
    problem = tree_problem(g, t)
    if problem is not None:
        raise ContractError(f"glue: base is not a tree: {problem}")
    deg = t.degrees()
    low = sorted(v for v, d in deg.items() if 2 <= d < k)
    if low:
        raise ContractError(f"glue: base has vertices of degree in [2,k-1]: {low}")
    used: set[int] = set()
    anchors = []
    edges = list(t.edges)
    vertices = set(t.vertices)
    for j, (s, part) in enumerate(parts):
        s = frozenset(s)
        meet = s & t.vertices
        if len(meet) != 1:
            raise ContractError(f"glue: part {j} meets the base in {sorted(meet)}, expected one vertex")
        (vj,) = meet
        if deg[vj] != k:
            raise ContractError(f"glue: part {j} anchor {vj} has base degree {deg[vj]} != k={k}")
        if s & used:
            raise ContractError(f"glue: part {j} overlaps an earlier part")
        kind = classify(g, part, k, span=s)
        if not kind.is_full:
            raise ContractError(f"glue: part {j} is not a [2,k]-ST of its set: {kind}")
        used |= s
        anchors.append(vj)
        edges.extend(part.edges)
        vertices |= s
    missing = sorted(v for v, d in deg.items() if d == k and v not in anchors)
    if missing:
        raise ContractError(f"glue: degree-k base vertices without a part: {missing}")
    return TreeCertificate(vertices, edges, k)


def induced_path(g: Graph, x_set: Iterable[int], z: int) -> tuple[int, int]:
    """Lexicographically least ``(x, y)`` with ``zx, xy`` edges, ``zy`` a non-edge, ``x, y`` in ``x_set``."""
    from .graph import reach_mask

    xm = mask_of(x_set)
    if not xm:
        raise ContractError("induced_path: empty vertex set")
    if xm >> z & 1:
        raise ContractError(f"induced_path: z={z} lies in the vertex set")
    start = (xm & -xm).bit_length() - 1
    if reach_mask(g, start, xm) != xm:
        raise ContractError("induced_path: vertex set does not induce a connected graph")
    nz = g.neighbor_mask(z) & xm
    if not nz or nz == xm:
        raise ContractError(f"induced_path: need 1 <= |N(z) & X| < |X|, got {nz.bit_count()} of {xm.bit_count()}")
    far = xm & ~nz
    for x in vertices_of(nz):
        ys = g.neighbor_mask(x) & far
        if ys:
            return x, (ys & -ys).bit_length() - 1
    raise ContractError("induced_path: no induced path found")  # unreachable for connected X
