"""Constructive route to a [2,k]-ST under the neighbourhood-union hypotheses.

Given a connected graph with ``n >= n1(k)``, ``delta >= 2k`` and ``2 NC >= n - 2``, the
construction either hands the whole graph to the dense oracle (``delta >= c_k sqrt(n)``)
or fixes a minimum-degree vertex ``u``, looks at ``W = V - N[u]`` and assembles the tree
from small hand-built pieces plus dense-oracle trees on large cliquish blocks.

Every numeric inequality the construction leans on is evaluated exactly at runtime and
stored in the :class:`ProofTrace`. A failing inequality raises
:class:`ProofInvariantError`; nothing falls back silently.
"""

from __future__ import annotations

import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .certificate import ContractError, TreeCertificate, classify, glue, induced_path
from .graph import Graph, components, hypothesis_report, is_clique, is_connected, mask_of
from .solver import SearchBudget, solve_dense, solve_exact
from .thresholds import dense_condition, thresholds


class HypothesisError(ValueError):
    """The input graph does not satisfy the construction's hypotheses."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ProofInvariantError(RuntimeError):
    """An inequality or structural claim the construction relies on failed numerically."""

    def __init__(self, message: str, trace: "ProofTrace"):
        super().__init__(message)
        self.trace = trace


_OPS = {"<": operator.lt, "<=": operator.le, ">": operator.gt, ">=": operator.ge, "==": operator.eq}


def _num(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


@dataclass
class ProofTrace:
    k: int
    n: int
    u: int | None = None
    w_size: int | None = None
    case_path: list[str] = field(default_factory=list)
    steps: list[str] = field(default_factory=list)
    oracle_calls: list[dict] = field(default_factory=list)
    inequalities: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    certificate: TreeCertificate | None = None

    @property
    def label(self) -> str:
        return "/".join(self.case_path)

    def check(self, name: str, lhs, op: str, rhs) -> None:
        holds = _OPS[op](Fraction(lhs), Fraction(rhs))
        self.inequalities.append({"name": name, "lhs": _num(lhs), "op": op, "rhs": _num(rhs),
                                  "holds": holds})
        if not holds:
            raise ProofInvariantError(f"inequality failed: {name}: {_num(lhs)} {op} {_num(rhs)}", self)

    def check_dense(self, name: str, value, size: int) -> None:
        """Record ``value >= c_k * sqrt(size)`` (exact test, float shown for reading)."""
        holds = dense_condition(Fraction(value), size, self.k)
        rhs = thresholds(self.k).c_k * math.sqrt(size)
        self.inequalities.append({"name": name, "lhs": _num(Fraction(value)), "op": ">=",
                                  "rhs": rhs, "holds": holds, "exact": True})
        if not holds:
            raise ProofInvariantError(f"inequality failed: {name}: {_num(Fraction(value))} >= {rhs:.4f}", self)

    def fail(self, message: str) -> None:
        raise ProofInvariantError(message, self)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "u": self.u,
            "w_size": self.w_size,
            "label": self.label,
            "case_path": list(self.case_path),
            "steps": list(self.steps),
            "oracle_calls": list(self.oracle_calls),
            "inequalities": list(self.inequalities),
            "notes": dict(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- helpers -----------------------------------------------------------------------------


def _smallest(cands: Iterable[int], count: int, what: str, trace: ProofTrace) -> list[int]:
    pool = sorted(set(cands))
    if count < 0 or len(pool) < count:
        trace.fail(f"cannot choose {count} vertices for {what}: only {len(pool)} available")
    return pool[:count]


def _star(center: int, leaves: Iterable[int]) -> list[tuple[int, int]]:
    return [(center, x) for x in sorted(leaves)]


def _dense_on(g: Graph, k: int, vs: Iterable[int], site: str, trace: ProofTrace) -> TreeCertificate:
    """Dense-oracle tree on ``G[vs]``, after recording that its precondition holds."""
    vs = sorted(set(vs))
    sub, labels = g.subgraph(vs)
    d = sub.min_degree()
    trace.check_dense(f"{site}: min degree >= c_k sqrt(|part|)", d, len(vs))
    if not is_connected(sub):
        trace.fail(f"{site}: oracle input is disconnected")
    cert = solve_dense(sub, k)
    trace.oracle_calls.append({"site": site, "size": len(vs), "delta": d,
                               "justified": True})
    return TreeCertificate(vs, [(labels[a], labels[b]) for a, b in cert.edges], k)


def _merge(vertices: Iterable[int], k: int, *pieces) -> TreeCertificate:
    edges: list[tuple[int, int]] = []
    for p in pieces:
        edges.extend(p.edges if isinstance(p, TreeCertificate) else p)
    return TreeCertificate(vertices, edges, k)


# -- pieces ------------------------------------------------------------------------------


def component_solver(g: Graph, k: int, C: Iterable[int], removed: Iterable[int] = (), *,
                     cut: Iterable[int] = (), trace: ProofTrace | None = None) -> TreeCertificate:
    """[2,k]-ST of ``G[C - removed]`` for a component ``C`` of ``G[W - cut]``.

    Needs ``|removed| <= 2k - 2`` and ``|cut| + delta < (n - 4k + 6) / 4``; connectivity and
    density of the remainder are then checked before calling the dense oracle.
    """
    trace = trace or ProofTrace(k, g.n)
    C, removed, cut = set(C), set(removed), set(cut)
    if len(removed) > 2 * k - 2:
        raise ContractError(f"component_solver: |removed| = {len(removed)} > 2k-2 = {2 * k - 2}")
    if not removed <= C:
        raise ContractError("component_solver: removed set must lie inside the component")
    n, delta = g.n, g.min_degree()
    trace.check("|cut| + delta < (n-4k+6)/4", len(cut) + delta, "<", Fraction(n - 4 * k + 6, 4))
    rest = C - removed
    if not rest or not is_connected(g, rest):
        trace.fail("connectivity claim violated: component minus removed set is disconnected")
    return _dense_on(g, k, rest, "component", trace)


def attach_component(g: Graph, k: int, C: Iterable[int], v: int, *,
                     trace: ProofTrace | None = None) -> TreeCertificate:
    """Tree on ``C + v`` for a component ``C`` of ``G[W]`` and ``v`` in ``N(u)``.

    ``d_C(v) = |C|``: star at ``v``. ``d_C(v) = 1``: [2,k]-ST with ``v`` a leaf.
    Otherwise a tree whose only degree in ``[2, k]`` is ``d(v) = min(k, d_C(v))``.
    """
    trace = trace or ProofTrace(k, g.n)
    C = set(C)
    cm = mask_of(C)
    d = g.degree_into(v, cm)
    if d < 1 or v in C:
        raise ContractError(f"attach_component: vertex {v} needs a neighbour in the component")
    trace.check("|C| > 3k", len(C), ">", 3 * k)
    trace.check("min d_C(x) > 3k", min(g.degree_into(x, cm) for x in C), ">", 3 * k)
    span = C | {v}
    if d == len(C):
        trace.steps.append(f"attach {v}: star over component of size {len(C)}")
        cert = TreeCertificate(span, _star(v, C), k)
        expect = "full"
    else:
        x1, x2 = induced_path(g, C, v)
        s1 = _smallest(set(g.neighbors_in(v, cm)) - {x1}, min(k - 1, d - 1), "S1", trace)
        s2 = _smallest(set(g.neighbors_in(x1, cm)) - set(s1) - {x2}, k - 2, "S2", trace)
        base = component_solver(g, k, C, s1 + s2 + [x2], trace=trace)
        if d == 1:
            trace.steps.append(f"attach {v}: leaf via {x1}")
            cert = _merge(span, k, base, _star(x1, s2 + [v, x2]))
            expect = "full"
        else:
            trace.steps.append(f"attach {v}: quasi with d(v)={min(k, d)} via {x1}")
            cert = _merge(span, k, base, _star(v, s1 + [x1]), _star(x1, s2 + [x2]))
            expect = "quasi"
    kind = classify(g, cert, k, span=span)
    if kind.kind != expect or (expect == "quasi" and kind.witnesses != (v,)):
        trace.fail(f"attach_component produced {kind}, expected {expect}")
    dv = cert.degree(v)
    if dv != (d if expect == "full" else min(k, d)):
        trace.fail(f"attach_component: d_T({v}) = {dv} does not match d_C = {d}")
    return cert


def extend_semi_tree(g: Graph, k: int, t: TreeCertificate, v: int, *, u: int,
                     trace: ProofTrace | None = None) -> TreeCertificate:
    """Grow a 1-semi tree on ``N[u] | S`` (its degree-``k`` vertex ``v`` in ``S``) to a [2,k]-ST.

    Requires ``G[W]`` connected and ``2 <= |S| < (n - 4k + 10)/4 - delta``.
    """
    trace = trace or ProofTrace(k, g.n)
    n, delta = g.n, g.min_degree()
    closed = set(g.neighbors(u)) | {u}
    W = set(range(n)) - closed
    S = set(t.vertices) - closed
    if not closed <= t.vertices:
        raise ContractError("extend_semi_tree: tree must contain N[u]")
    if len(S) < 2:
        raise ContractError(f"extend_semi_tree: need |S| >= 2, got {len(S)}")
    if v not in S:
        raise ContractError(f"extend_semi_tree: degree-k vertex {v} must lie in S")
    kind = classify(g, t, k)
    if kind.kind != "semi" or kind.witnesses != (v,):
        raise ContractError(f"extend_semi_tree: expected a 1-semi tree at {v}, got {kind}")
    if not is_connected(g, W):
        raise ContractError("extend_semi_tree: G[W] must be connected")
    trace.check("|S| < (n-4k+10)/4 - delta", len(S), "<", Fraction(n - 4 * k + 10, 4) - delta)
    sp = S - {v}
    rest = W - sp
    comps = components(g, rest)
    if len(comps) == 1:
        trace.steps.append("extend: W - S' connected, dense tree glued at v")
        sub_delta = min(g.degree_into(x, mask_of(rest)) for x in rest)
        trace.check("min d_{W-S'} >= (n-2)/2 - delta - |S'|", sub_delta, ">=",
                    Fraction(n - 2, 2) - delta - len(sp))
        part = _dense_on(g, k, rest, "extend/W-S'", trace)
        return glue(g, t, [(rest, part)])
    trace.steps.append("extend: W - S' splits")
    trace.check("|S'| < (n+2)/4 - delta", len(sp), "<", Fraction(n + 2, 4) - delta)
    if len(comps) != 2:
        trace.fail(f"W - S' has {len(comps)} components, at most two are possible")
    c1, c2 = (set(comps[0]), set(comps[1])) if v in comps[0] else (set(comps[1]), set(comps[0]))
    for name, c in (("C1", c1), ("C2", c2)):
        trace.check(f"|{name}| >= n/2 - delta - |S'|", len(c), ">=", Fraction(n, 2) - delta - len(sp))
        trace.check(f"|{name}| <= (n-2)/2", len(c), "<=", Fraction(n - 2, 2))
        trace.check(f"|{name}| > k", len(c), ">", k)
    m1, m2 = mask_of(c1), mask_of(c2)
    xs = [y for y in sorted(sp) if g.degree_into(y, m2)]
    if not xs:
        trace.fail("no vertex of S' reaches the second component")
    x = xs[0]
    a = g.degree_into(x, m2)
    if a == len(c2):
        trace.steps.append(f"extend: {x} sees all of C2, star attached")
        grown = TreeCertificate(set(t.vertices) | c2, list(t.edges) + _star(x, c2), k)
        part = component_solver(g, k, c1, (), cut=sp, trace=trace)
        return glue(g, grown, [(c1, part)])
    trace.steps.append(f"extend: {x} sees part of C2, two-anchor semi tree")
    x1, x2 = induced_path(g, c2, x)
    trace.check("d_C2(x1) > 2k", g.degree_into(x1, m2), ">", 2 * k)
    trace.check("d_C1(x) + d_C2(x) > k", g.degree_into(x, m1) + a, ">", k)
    s1 = _smallest(set(g.neighbors_in(x, m2)) - {x1}, min(a - 1, k - 1), "S1", trace)
    s2 = _smallest(set(g.neighbors_in(x1, m2)) - set(s1) - {x2}, k - 2, "S2", trace)
    s3 = _smallest(set(g.neighbors_in(x, m1)) - {v}, k - 1 - len(s1), "S3", trace)
    new = set(s1) | set(s2) | set(s3) | {x1, x2}
    grown = TreeCertificate(set(t.vertices) | new,
                            list(t.edges) + _star(x, s1 + s3 + [x1]) + _star(x1, s2 + [x2]), k)
    trace.notes["two_anchor_removed"] = {"C1": len(s3), "C2": len(s1) + len(s2) + 1}
    p1 = component_solver(g, k, c1, s3, cut=sp, trace=trace)
    p2 = component_solver(g, k, c2, s1 + s2 + [x2], cut=sp, trace=trace)
    return glue(g, grown, [(c1 - set(s3), p1), (c2 - set(s1) - set(s2) - {x2}, p2)])


# -- the two top-level branches ----------------------------------------------------------


def case_w_connected(g: Graph, k: int, u: int, W: Iterable[int], *,
                     trace: ProofTrace | None = None) -> TreeCertificate:
    trace = trace or ProofTrace(k, g.n)
    n, delta = g.n, g.min_degree()
    W = sorted(W)
    wm = mask_of(W)
    nu = list(g.neighbors(u))
    reach = {x: g.degree_into(x, wm) for x in nu}
    u1 = max(nu, key=lambda x: (reach[x], -x))
    trace.notes["u1"] = u1
    if reach[u1] == 0:
        raise ContractError("case_w_connected: no edge between N(u) and W")
    if reach[u1] == len(W):
        trace.case_path.append("Case1")
        trace.steps.append(f"two centres u={u}, u1={u1}")
        return TreeCertificate(range(n), _star(u, nu) + _star(u1, W), k)
    trace.case_path.append("Case2")
    x1, x2 = induced_path(g, W, u1)
    trace.notes.update(x1=x1, x2=x2)
    trace.check("d_W(x1) > 3k", g.degree_into(x1, wm), ">", 3 * k)
    if reach[u1] <= k - 1:
        trace.case_path.append("Subcase2.1")
        trace.check("delta < (n-4k+4)/2", delta, "<", Fraction(n - 4 * k + 4, 2))
        if not is_clique(g, nu):
            trace.fail("neighbours with few W-neighbours do not form a clique")
        s1 = _smallest(set(g.neighbors_in(x1, wm)) - {x2}, k - 2, "S1", trace)
        hub = sorted((set(nu) | {u}) - {u1})
        t = TreeCertificate(set(nu) | {u, x1, x2} | set(s1),
                            _star(u1, hub + [x1]) + _star(x1, s1 + [x2]), k)
    else:
        trace.case_path.append("Subcase2.2")
        s2 = _smallest(set(g.neighbors_in(u1, wm)) - {x1}, k - 1, "S2", trace)
        s3 = _smallest(set(g.neighbors_in(x1, wm)) - set(s2) - {x2}, k - 2, "S3", trace)
        t = TreeCertificate(set(nu) | {u, x1, x2} | set(s2) | set(s3),
                            _star(u, nu) + _star(u1, s2 + [x1]) + _star(x1, s3 + [x2]), k)
    trace.notes["semi_degrees"] = {"u1": t.degree(u1), "x1": t.degree(x1)}
    return extend_semi_tree(g, k, t, x1, u=u, trace=trace)


def case_w_disconnected(g: Graph, k: int, u: int, C1: Iterable[int], C2: Iterable[int], *,
                        trace: ProofTrace | None = None) -> TreeCertificate:
    trace = trace or ProofTrace(k, g.n)
    n, delta = g.n, g.min_degree()
    c1, c2 = set(C1), set(C2)
    m1, m2 = mask_of(c1), mask_of(c2)
    nu = list(g.neighbors(u))
    trace.check("delta < (n-12k+14)/4", delta, "<", Fraction(n - 12 * k + 14, 4))
    n1 = [x for x in nu if g.degree_into(x, m1)]
    n2 = [x for x in nu if g.degree_into(x, m2)]
    if not n1 or not n2:
        trace.fail("a component of G[W] has no neighbour in N(u)")
    overlap = sorted(set(n1) & set(n2))
    everything = range(n)
    if overlap:
        trace.case_path.append("overlap")
        u1 = max(overlap, key=lambda x: (g.degree_into(x, (1 << n) - 1), -x))
        trace.notes["u1"] = u1
        t1 = attach_component(g, k, c1, u1, trace=trace)
        t2 = attach_component(g, k, c2, u1, trace=trace)
        dw = g.degree_into(u1, m1 | m2)
        if dw >= k:
            trace.case_path.append("Case1")
            return _merge(everything, k, t1, t2, _star(u, nu))
        trace.case_path.append("Case2")
        trace.check("d_{C1+C2}(u1) >= 2", dw, ">=", 2)
        trace.check("d_N(u)(u1) >= k", g.degree_into(u1, mask_of(nu)), ">=", k)
        sp = _smallest(g.neighbors_in(u1, mask_of(nu)), k - 2, "S'", trace)
        return _merge(everything, k, t1, t2, _star(u, set(nu) - set(sp)), _star(u1, sp))
    trace.case_path.append("disjoint")
    u1 = max(n1, key=lambda x: (g.degree_into(x, m1), -x))
    u2 = max(n2, key=lambda x: (g.degree_into(x, m2), -x))
    if g.degree_into(u1, m1) < g.degree_into(u2, m2):
        trace.steps.append("components swapped so that d_C1(u1) >= d_C2(u2)")
        c1, c2, m1, m2, u1, u2 = c2, c1, m2, m1, u2, u1
    d1, d2 = g.degree_into(u1, m1), g.degree_into(u2, m2)
    trace.notes.update(u1=u1, u2=u2, d_C1_u1=d1, d_C2_u2=d2)
    t1 = attach_component(g, k, c1, u1, trace=trace)
    t2 = attach_component(g, k, c2, u2, trace=trace)
    if d2 >= k:
        trace.case_path.append("Case1")
        trace.steps.append("star at u read as E(u, N(u))")
        return _merge(everything, k, t1, t2, _star(u, nu))
    if d1 <= k - 1:
        trace.case_path.append("Case2")
        trace.check("delta < (n-4k+4)/2", delta, "<", Fraction(n - 4 * k + 4, 2))
        if not is_clique(g, nu):
            trace.fail("N(u) is not a clique although every u_i has at most k-1 W-neighbours")
        others = sorted(set(nu) - {u1, u2})
        mine = [u2] + others[: k - 2]
        theirs = others[k - 2:]
        trace.check("delta - k >= k", len(theirs), ">=", k)
        return _merge(everything, k, t1, t2, _star(u1, mine), _star(u2, theirs), [(u, u1)])
    trace.case_path.append("Case3")
    trace.check("d_N(u)(u2) >= k", g.degree_into(u2, mask_of(nu)), ">=", k)
    sp = _smallest(g.neighbors_in(u2, mask_of(nu)), k - 1, "S'", trace)
    return _merge(everything, k, t1, t2, _star(u, set(nu) - set(sp)), _star(u2, sp))


# -- entry point -------------------------------------------------------------------------


def _construct(g: Graph, k: int, trace: ProofTrace) -> TreeCertificate:
    n, delta = g.n, g.min_degree()
    if dense_condition(delta, n, k):
        trace.case_path.append("dense")
        return _dense_on(g, k, range(n), "whole graph", trace)
    trace.check_dense("(n-12k+14)/4 >= c_k sqrt(n)", Fraction(n - 12 * k + 14, 4), n)
    degs = g.degrees()
    u = min(v for v in range(n) if degs[v] == delta)
    nu = set(g.neighbors(u))
    W = sorted(set(range(n)) - nu - {u})
    trace.u, trace.w_size = u, len(W)
    trace.check("|W| > 3k", len(W), ">", 3 * k)
    wm = mask_of(W)
    trace.check("min d_W(w) >= (n-2)/2 - delta", min(g.degree_into(w, wm) for w in W), ">=",
                Fraction(n - 2, 2) - delta)
    comps = components(g, W)
    if len(comps) == 1:
        trace.case_path.append("W-connected")
        return case_w_connected(g, k, u, W, trace=trace)
    trace.case_path.append("W-disconnected")
    trace.check("delta < (n+2)/4", delta, "<", Fraction(n + 2, 4))
    if len(comps) != 2:
        trace.fail(f"G[W] has {len(comps)} components, at most two are possible")
    return case_w_disconnected(g, k, u, comps[0], comps[1], trace=trace)


def construct_2k_st(g: Graph, k: int, *, fallback_exact: bool = False,
                    exact_budget: SearchBudget | None = None) -> tuple[TreeCertificate, ProofTrace]:
    """Build a [2,k]-ST certificate and the trace of how it was built.

    Raises :class:`HypothesisError` before doing any work when the hypotheses fail, and
    :class:`ProofInvariantError` when a step's numeric justification does not hold
    (unless ``fallback_exact`` asks for an exact search instead).
    """
    if k < 2:
        raise HypothesisError(f"class bound k must be >= 2, got {k}")
    report = hypothesis_report(g, k)
    if not report.flags["thm1_6"]:
        raise HypothesisError("; ".join(report.reasons["thm1_6"]), report)
    trace = ProofTrace(k, g.n)
    try:
        cert = _construct(g, k, trace)
    except ProofInvariantError as err:
        if not fallback_exact:
            raise
        trace.steps.append(f"invariant failure, exact fallback: {err}")
        out = solve_exact(g, k, exact_budget or SearchBudget())
        if not out.found:
            raise ProofInvariantError(f"exact fallback ended with {out.status}", trace) from err
        trace.case_path = ["fallback-exact"]
        cert = out.certificate
    kind = classify(g, cert, k)
    if not kind.is_full:
        raise ProofInvariantError(f"assembled tree is not a [2,k]-ST: {kind}", trace)
    trace.certificate = cert
    trace.notes["internal_degrees"] = {str(v): d for v, d in sorted(cert.degrees().items()) if d > 1}
    return cert, trace
