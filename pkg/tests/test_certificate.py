import itertools
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import cycle, graphs, path
from twoktree import ContractError, Graph, TreeCertificate, classify, glue, induced_path
from twoktree.graph import is_connected


def star_cert(n, center=0, k=2):
    return TreeCertificate(range(n), [(center, v) for v in range(n) if v != center], k)


def test_star_on_k5_is_full():
    assert classify(Graph.complete(5), star_cert(5, k=3), 3).is_full


def test_path_is_quasi():
    kind = classify(path(4), TreeCertificate(range(4), list(path(4).edges()), 2), 2)
    assert (kind.kind, kind.i, kind.witnesses) == ("quasi", 2, (1, 2))
    assert str(kind) == "quasi(2, {1, 2})"


def test_subtree_with_degree_k_vertex_is_semi():
    t = TreeCertificate({0, 1, 2, 3}, [(0, 1), (0, 2), (0, 3)], 3)
    kind = classify(Graph.complete(5), t, 3)
    assert (kind.kind, kind.i, kind.witnesses, kind.spanning) == ("semi", 1, (0,), False)


def test_clean_subtree_is_semi_zero():
    t = TreeCertificate({0, 1, 2, 3, 4}, [(0, 1), (0, 2), (0, 3), (0, 4)], 3)
    kind = classify(Graph.complete(6), t, 3)
    assert (kind.kind, kind.i) == ("semi", 0)


@pytest.mark.parametrize("edges, vertices, why", [
    ([(0, 1), (1, 2)], range(4), "edges on"),
    ([(0, 1), (1, 2), (0, 2)], range(4), "cycle"),
    ([(0, 3), (0, 1), (1, 2)], range(4), "not in host"),
    ([(0, 1), (1, 5)], range(3), "outside vertex set"),
    ([(0, 1), (0, 1)], range(3), "repeated"),
    ([], range(0), "empty"),
])
def test_invalid_certificates(edges, vertices, why):
    host = Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    kind = classify(host, TreeCertificate(vertices, edges, 2), 2)
    assert kind.kind == "invalid" and why in kind.reason


def test_serialization_round_trip():
    t = TreeCertificate({0, 1, 2, 3}, [(0, 1), (0, 2), (0, 3)], 3)
    text = t.to_text()
    assert text == "cert k=3\nvertices: 0 1 2 3\nedge 0 1\nedge 0 2\nedge 0 3\n"
    back = TreeCertificate.from_text(text)
    assert back == t and back.to_text() == text


@pytest.mark.parametrize("text", ["", "cert k=x\nvertices: 0\n", "cert k=2\n", "cert k=2\nvertices: 0 1\nedge 0\n"])
def test_bad_certificate_text(text):
    with pytest.raises(ValueError):
        TreeCertificate.from_text(text)


# -- glue ------------------------------------------------------------------------------


def test_glue_identity():
    g = path(3)
    t = TreeCertificate({1}, [], 2)
    assert glue(g, t, []) == t


def test_glue_path_with_star():
    # base 0-1-2 with d(1)=2=k; star at 3 over {1,4,5,6} hangs below 1
    g = Graph(7, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5), (3, 6)])
    base = TreeCertificate({0, 1, 2}, [(0, 1), (1, 2)], 2)
    part = TreeCertificate({1, 3, 4, 5, 6}, [(3, 1), (3, 4), (3, 5), (3, 6)], 2)
    out = glue(g, base, [({1, 3, 4, 5, 6}, part)])
    assert out.degree(1) == 3
    assert classify(g, out, 2).is_full


def test_glue_rejects_overlap():
    g = Graph.complete(7)
    base = TreeCertificate({0, 1, 2}, [(0, 1), (1, 2)], 2)
    part = TreeCertificate({1, 2, 3, 4, 5}, [(3, 1), (3, 2), (3, 4), (3, 5)], 2)
    with pytest.raises(ContractError, match="part 0"):
        glue(g, base, [({1, 2, 3, 4, 5}, part)])


def test_glue_rejects_uncovered_anchor_and_bad_part():
    g = Graph.complete(8)
    base = TreeCertificate({0, 1, 2}, [(0, 1), (1, 2)], 2)
    with pytest.raises(ContractError, match="without a part"):
        glue(g, base, [])
    bad = TreeCertificate({1, 3, 4}, [(1, 3), (3, 4)], 2)
    with pytest.raises(ContractError, match="part 0 is not"):
        glue(g, base, [({1, 3, 4}, bad)])


def test_glue_rejects_low_degree_base():
    g = Graph.complete(8)
    base = TreeCertificate({0, 1, 2}, [(0, 1), (1, 2)], 3)
    with pytest.raises(ContractError, match=r"\[2,k-1\]"):
        glue(g, base, [])


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3), st.randoms(use_true_random=False))
def test_glue_output_has_no_bad_degree(k, spare, rnd):
    # base: centre c with k children; every child except one is an anchor of degree k
    n_parts = k
    g_edges = set()
    base_edges = [(0, i) for i in range(1, k + 1)]
    verts = k + 1
    parts = []
    for j in range(1, n_parts + 1):
        extra = list(range(verts, verts + k - 1))
        verts += k - 1
        base_edges += [(j, x) for x in extra]
        hub = verts
        leaves = list(range(verts + 1, verts + 1 + k + spare))
        verts += 1 + k + spare
        s = {j, hub, *leaves}
        part_edges = [(hub, j)] + [(hub, x) for x in leaves]
        if rnd.random() < 0.5:
            part_edges = [(j, hub)] + [(j, x) for x in leaves]
        parts.append((s, TreeCertificate(s, part_edges, k)))
        g_edges |= {tuple(sorted(e)) for e in part_edges}
    base_edges.append((0, verts))
    verts += 1
    g_edges |= {tuple(sorted(e)) for e in base_edges}
    g = Graph(verts, sorted(g_edges))
    base = TreeCertificate({v for e in base_edges for v in e}, base_edges, k)
    out = glue(g, base, parts)
    assert classify(g, out, k).is_full


# -- induced_path ----------------------------------------------------------------------


def test_induced_path_examples():
    g = Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    assert induced_path(g, {0, 1, 2}, 3) == (0, 1)
    assert induced_path(cycle(5), {0, 1, 2, 3}, 4) == (0, 1)
    with pytest.raises(ContractError):
        induced_path(Graph.complete(4), {0, 1, 2}, 3)


def test_induced_path_rejects_bad_inputs():
    g = path(5)
    with pytest.raises(ContractError):
        induced_path(g, {0, 2}, 1)  # disconnected set
    with pytest.raises(ContractError):
        induced_path(g, {1, 2}, 2)  # z inside the set
    with pytest.raises(ContractError):
        induced_path(g, {3, 4}, 0)  # z has no neighbour in the set


def _check_induced(g, xs, z):
    nz = set(g.neighbors(z)) & xs
    valid = is_connected(g, xs) and 1 <= len(nz) < len(xs)
    if not valid:
        with pytest.raises(ContractError):
            induced_path(g, xs, z)
        return 0
    x, y = induced_path(g, xs, z)
    assert x in xs and y in xs
    assert g.has_edge(z, x) and g.has_edge(x, y) and not g.has_edge(z, y)
    best = min((a, b) for a in nz for b in xs if g.has_edge(a, b) and not g.has_edge(z, b))
    assert (x, y) == best
    return 1


def test_induced_path_exhaustive_small():
    checked = 0
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            g = Graph(n, [p for i, p in enumerate(pairs) if bits >> i & 1])
            for z in range(n):
                others = [v for v in range(n) if v != z]
                for r in range(1, len(others) + 1):
                    for xs in itertools.combinations(others, r):
                        checked += _check_induced(g, set(xs), z)
    assert checked > 1000


@settings(max_examples=400, deadline=None)
@given(graphs(min_n=3, max_n=7), st.data())
def test_induced_path_sampled(g, data):
    z = data.draw(st.integers(0, g.n - 1))
    others = [v for v in range(g.n) if v != z]
    xs = set(data.draw(st.lists(st.sampled_from(others), min_size=1, unique=True)))
    _check_induced(g, xs, z)


# -- relabelling -----------------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=2, max_n=8, connected=True), st.integers(2, 3), st.randoms(use_true_random=False))
def test_classify_respects_relabelling(g, k, rnd):
    # a BFS tree of g, then the same tree under a random permutation
    root = 0
    seen, edges, queue = {root}, [], [root]
    while queue:
        v = queue.pop(0)
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                edges.append((v, w))
                queue.append(w)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = Graph(g.n, [tuple(sorted((perm[a], perm[b]))) for a, b in g.edges()])
    a = classify(g, TreeCertificate(range(g.n), edges, k), k)
    b = classify(h, TreeCertificate(range(g.n), [(perm[x], perm[y]) for x, y in edges], k), k)
    assert (a.kind, a.i) == (b.kind, b.i)
    assert sorted(perm[w] for w in a.witnesses) == list(b.witnesses)
