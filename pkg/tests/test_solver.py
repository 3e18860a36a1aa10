import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cycle, graphs, path
from twoktree import (
    ContractError,
    Graph,
    SearchBudget,
    classify,
    solve_dense,
    solve_exact,
    solve_naive,
)
from twoktree import kernels
from twoktree.families import ExtremalParams, build_h, random_graph
from twoktree.graph import is_connected

BACKENDS = kernels.available()


def wheel(rim):
    return Graph(rim + 1, [(0, i) for i in range(1, rim + 1)]
                 + [(i, i % rim + 1) for i in range(1, rim + 1)])


def minus_matching(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if not (u % 2 == 0 and v == u + 1)])


@pytest.mark.parametrize("backend", BACKENDS)
def test_exact_examples(backend):
    out = solve_exact(Graph.complete(4), 2, backend=backend)
    assert out.found and classify(Graph.complete(4), out.certificate, 2).is_full
    assert solve_exact(path(4), 2, backend=backend).status == "none"
    h = build_h(ExtremalParams(2, 11, strict=False))
    assert solve_exact(h, 2, backend=backend).status == "none"


@pytest.mark.parametrize("backend", BACKENDS)
def test_naive_examples(backend):
    assert solve_naive(cycle(4), 2, backend=backend).status == "none"
    assert solve_naive(Graph.complete(5), 3, backend=backend).found
    out = solve_naive(wheel(5), 2, backend=backend)
    assert out.found and out.certificate.degree(0) == 5


def test_disconnected_and_trivial_inputs():
    out = solve_exact(Graph(4, [(0, 1), (2, 3)]), 2)
    assert out.status == "none" and "disconnected" in out.reason
    assert solve_exact(Graph(0), 2).status == "none"
    assert solve_exact(Graph(1), 2).found
    assert solve_exact(Graph(2, [(0, 1)]), 2).found
    with pytest.raises(ContractError):
        solve_exact(path(4), 1)


def test_naive_cap():
    with pytest.raises(ContractError):
        solve_naive(path(11), 2)
    assert solve_naive(path(11), 2, cap=11).status == "none"


@pytest.mark.parametrize("backend", BACKENDS)
def test_budget_is_reported_not_none(backend):
    out = solve_exact(minus_matching(15), 2, SearchBudget(node_limit=10), backend=backend)
    assert out.status == "budget_exhausted" and out.nodes == 11
    assert solve_exact(minus_matching(15), 2, backend=backend).found
    h = build_h(ExtremalParams(2, 17, strict=False))
    tight = solve_exact(h, 2, SearchBudget(node_limit=10), backend=backend)
    assert tight.status == "budget_exhausted" and tight.certificate is None


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(node_limit=0)
    with pytest.raises(ValueError):
        SearchBudget(time_limit=-1.0)


def test_time_limit_stops_search():
    h = build_h(ExtremalParams(2, 25, strict=False))
    out = solve_exact(h, 2, SearchBudget(node_limit=10**12, time_limit=0.05), backend="python")
    assert out.status in ("none", "budget_exhausted")


def test_backends_walk_the_same_tree():
    if "cython" not in BACKENDS:
        pytest.skip("compiled kernels not built")
    rng = random.Random(5)
    for _ in range(300):
        g = random_graph(rng.randint(4, 20), rng.uniform(0.2, 0.9), rng.randrange(10**6))
        if not is_connected(g):
            continue
        k = rng.choice([2, 3])
        a = solve_exact(g, k, backend="python")
        b = solve_exact(g, k, backend="cython")
        assert (a.status, a.nodes, a.max_depth) == (b.status, b.nodes, b.max_depth)
        if a.found:
            assert a.certificate == b.certificate
        if g.n <= 8:
            assert solve_naive(g, k, backend="python").nodes == solve_naive(g, k, backend="cython").nodes


def test_large_graphs_fall_back_to_python():
    assert kernels._pick(65, None).__name__.endswith("_pykernels")


@settings(max_examples=300, deadline=None)
@given(graphs(min_n=1, max_n=8, connected=True), st.sampled_from([2, 3]))
def test_exact_matches_naive(g, k):
    a, b = solve_exact(g, k), solve_naive(g, k)
    assert a.status == b.status
    for out in (a, b):
        if out.found:
            assert classify(g, out.certificate, k).is_full


@settings(max_examples=200, deadline=None)
@given(graphs(min_n=3, max_n=9, connected=True), st.integers(3, 5))
def test_monotone_in_k(g, k):
    out = solve_exact(g, k)
    if out.found:
        for smaller in range(2, k):
            assert classify(g, out.certificate, smaller).is_full
            assert solve_exact(g, smaller).found


# -- dense oracle ----------------------------------------------------------------------


def test_dense_on_complete_graph_is_a_star():
    cert = solve_dense(Graph.complete(20), 2)
    assert classify(Graph.complete(20), cert, 2).is_full
    assert cert.degree(0) == 19


def test_dense_on_k25_minus_matching():
    g = minus_matching(25)
    assert g.min_degree() == 23
    assert classify(g, solve_dense(g, 2), 2).is_full


def test_dense_precondition():
    with pytest.raises(ContractError, match="precondition"):
        solve_dense(cycle(6), 2)


def test_dense_is_deterministic():
    g = minus_matching(40)
    assert solve_dense(g, 2) == solve_dense(g, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(18, 70), st.integers(2, 3), st.integers(0, 10**6))
def test_dense_on_random_dense_graphs(n, k, seed):
    from twoktree.thresholds import dense_condition

    g = random_graph(n, 0.93, seed)
    if not is_connected(g) or not dense_condition(g.min_degree(), n, k):
        return
    assert classify(g, solve_dense(g, k), k).is_full
