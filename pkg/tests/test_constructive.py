import pytest

from twoktree import (
    ContractError,
    Graph,
    HypothesisError,
    ProofInvariantError,
    TreeCertificate,
    attach_component,
    classify,
    component_solver,
    construct_2k_st,
    extend_semi_tree,
)
from twoktree.constructive import ProofTrace, _construct
from twoktree.families import CASE_LABELS, VARIANTS, ExtremalParams, build_h, case_family
from twoktree.graph import components

K2_LABELS = [lb for lb in CASE_LABELS if lb != "W-disconnected/overlap/Case2"]


def run(label, k=2, n=276, variant="plain"):
    g = case_family(label, k, n, variant, verify=False)
    cert, trace = construct_2k_st(g, k)
    return g, cert, trace


@pytest.mark.parametrize("label", K2_LABELS)
def test_every_case_routes_and_certifies(label):
    g, cert, trace = run(label)
    assert trace.label == label
    assert classify(g, cert, 2).is_full
    assert all(row["holds"] for row in trace.inequalities)
    assert all(call["justified"] for call in trace.oracle_calls)


@pytest.mark.parametrize("label", ["W-connected/Case2/Subcase2.1", "W-connected/Case2/Subcase2.2"])
@pytest.mark.parametrize("variant", VARIANTS)
def test_extension_branches(label, variant):
    g, cert, trace = run(label, variant=variant)
    assert trace.label == label and classify(g, cert, 2).is_full
    joined = " | ".join(trace.steps)
    if variant == "plain":
        assert "W - S' connected" in joined
    elif variant == "split-full":
        assert "sees all of C2" in joined
    else:
        assert "two-anchor" in joined
        removed = trace.notes["two_anchor_removed"]
        assert max(removed.values()) <= 2 * 2 - 2


def test_subcase22_degrees():
    _, _, trace = run("W-connected/Case2/Subcase2.2")
    assert trace.notes["semi_degrees"] == {"u1": 3, "x1": 2}


@pytest.mark.parametrize("label", CASE_LABELS)
def test_every_case_at_k3(label):
    g, cert, trace = run(label, k=3, n=994)
    assert trace.label == label and classify(g, cert, 3).is_full


def test_dense_path_on_complete_graph():
    g = Graph.complete(280)
    cert, trace = construct_2k_st(g, 2)
    assert trace.label == "dense" and cert.degree(0) == 279


def test_hypotheses_checked_first():
    with pytest.raises(HypothesisError, match="delta 3 < 4"):
        construct_2k_st(build_h(ExtremalParams(2, 276)), 2)
    with pytest.raises(HypothesisError, match="n < n1"):
        construct_2k_st(Graph.complete(10), 2)


def test_deterministic():
    g = case_family("W-disconnected/disjoint/Case3", 2, 276, verify=False)
    c1, t1 = construct_2k_st(g, 2)
    c2, t2 = construct_2k_st(g, 2)
    assert c1 == c2 and t1.to_json() == t2.to_json()


def test_trace_serialises():
    import json

    _, _, trace = run("W-disconnected/overlap/Case1")
    data = json.loads(trace.to_json())
    assert data["label"] == "W-disconnected/overlap/Case1"
    assert data["u"] == 0 and data["w_size"] == 276 - 5
    assert {"name", "lhs", "op", "rhs", "holds"} <= set(data["inequalities"][0])


def test_invariant_failure_carries_trace():
    # three cliques hanging off u: the hypotheses fail, so bypass the gate and expect a hard error
    k, n = 2, 300
    edges = [(0, v) for v in range(1, 5)]
    edges += [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    blocks = [range(5, 103), range(103, 201), range(201, 300)]
    for blk in blocks:
        edges += [(a, b) for a in blk for b in blk if a < b]
        edges.append((1, blk[0]))
    g = Graph(n, edges)
    trace = ProofTrace(k, n)
    with pytest.raises(ProofInvariantError) as err:
        _construct(g, k, trace)
    assert err.value.trace is trace
    assert not trace.inequalities[-1]["holds"]


# -- lemma-level pieces ------------------------------------------------------------------


def overlap_fixture():
    g = case_family("W-disconnected/overlap/Case1", 2, 276, verify=False)
    c1, c2 = components(g, set(range(5, 276)))
    return g, set(c1), set(c2)


def test_attach_component_branches():
    g, c1, c2 = overlap_fixture()
    star = attach_component(g, 2, c1, 1)
    assert classify(g, star, 2, span=c1 | {1}).is_full and star.degree(1) == len(c1)
    quasi = attach_component(g, 2, c2, 1)
    kind = classify(g, quasi, 2, span=c2 | {1})
    assert (kind.kind, kind.witnesses) == ("quasi", (1,)) and quasi.degree(1) == 2
    leaf = attach_component(g, 2, c2, 2)
    assert classify(g, leaf, 2, span=c2 | {2}).is_full and leaf.degree(2) == 1


def test_attach_component_needs_an_edge():
    g, c1, _ = overlap_fixture()
    with pytest.raises(ContractError):
        attach_component(g, 2, c1, 3)


def test_component_solver_contracts():
    g, c1, _ = overlap_fixture()
    cert = component_solver(g, 2, c1)
    assert classify(g, cert, 2, span=c1).is_full
    some = sorted(c1)[:2]
    assert classify(g, component_solver(g, 2, c1, some), 2, span=c1 - set(some)).is_full
    with pytest.raises(ContractError):
        component_solver(g, 2, c1, sorted(c1)[:3])


def test_component_solver_connectivity_claim():
    # a path through C: removing its middle disconnects it
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)])
    trace = ProofTrace(2, 7)
    with pytest.raises(ProofInvariantError, match="connectivity claim"):
        component_solver(g, 2, {0, 1, 2}, {1}, trace=trace)


def test_extend_semi_tree_contracts():
    g = case_family("W-connected/Case2/Subcase2.2", 2, 276, verify=False)
    nu = list(g.neighbors(0))
    tiny = TreeCertificate({0, *nu}, [(0, v) for v in nu], 2)
    with pytest.raises(ContractError, match=r"\|S\| >= 2"):
        extend_semi_tree(g, 2, tiny, 1, u=0)
