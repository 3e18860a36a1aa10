"""Acceptance gate: one test per criterion, each logged as a PASS/FAIL summary line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import json
import random
import time

import networkx as nx

from twoktree import (
    COMPLETE,
    Graph,
    TreeCertificate,
    build_h,
    classify,
    construct_2k_st,
    nc_value,
    sigma_value,
    solve_exact,
    solve_naive,
)
from twoktree.cli import main
from twoktree.families import CASE_LABELS, ExtremalParams, case_family, random_graph
from twoktree.graph import is_connected
from twoktree.thresholds import thresholds

SEED = 20240229


def test_threshold_reproduction(criterion, capsys):
    entry = criterion(1, "threshold reproduction")
    thresholds.cache_clear()
    t0 = time.perf_counter()
    code = main(["thresholds", "--range", "2", "50", "--json"])
    elapsed = time.perf_counter() - t0
    rows = json.loads(capsys.readouterr().out)
    n1 = {r["k"]: r["n1"] for r in rows}
    first = [n1[k] for k in range(2, 6)]
    cubic = all(n1[k] > 16 * k ** 3 for k in range(2, 51))
    entry["ok"] = code == 0 and first == [276, 994, 2306, 4356] and cubic and elapsed < 1.0
    entry["detail"] = f"n1(2..5)={first}, n1>16k^3 on [2,50]: {cubic}, {elapsed:.3f}s"
    assert entry["ok"], entry["detail"]


def test_extremal_nonexistence(criterion):
    entry = criterion(2, "extremal family has no [2,k]-ST")
    t0 = time.perf_counter()
    statuses = {}
    for k, n in [(2, 11), (2, 13), (2, 15), (3, 15)]:
        g = build_h(ExtremalParams(k, n, strict=False))
        statuses[f"H({k},{n})"] = solve_exact(g, k).status
    elapsed = time.perf_counter() - t0
    entry["ok"] = all(s == "none" for s in statuses.values()) and elapsed < 60
    entry["detail"] = f"{statuses}, {elapsed:.3f}s"
    assert entry["ok"], entry["detail"]


def test_extremal_properties(criterion):
    entry = criterion(3, "extremal family degree and NC")
    bad = []
    count = 0
    for n in range(1, 61):
        for k in range(2, n // 6 + 1):
            g = build_h(ExtremalParams(k, n))
            count += 1
            if g.min_degree() != 2 * k - 1 or 2 * nc_value(g) < n - 2:
                bad.append((k, n))
    entry["ok"] = count > 0 and not bad
    entry["detail"] = f"{count} buildable (k,n), violations {bad}"
    assert entry["ok"], entry["detail"]


def test_oracle_equivalence(criterion):
    entry = criterion(4, "exact search agrees with enumeration")
    rng = random.Random(SEED)
    checked = disagreements = 0
    while checked < 10_000:
        n = rng.randint(4, 8)
        g = random_graph(n, rng.uniform(0.25, 0.95), rng.randrange(2**32))
        if not is_connected(g):
            continue
        k = rng.choice([2, 3])
        checked += 1
        if solve_exact(g, k).status != solve_naive(g, k).status:
            disagreements += 1
    entry["ok"] = disagreements == 0
    entry["detail"] = f"{checked} graphs, {disagreements} disagreements"
    assert entry["ok"], entry["detail"]


def test_degree_sum_condition_gives_hist(criterion):
    entry = criterion(5, "sigma >= n-1 graphs have a HIST")
    rng = random.Random(SEED + 1)
    tested = found = 0
    while tested < 1_000:
        n = rng.randint(8, 12)
        g = random_graph(n, rng.uniform(0.55, 0.95), rng.randrange(2**32))
        sigma = sigma_value(g)
        if sigma == COMPLETE or sigma < n - 1:
            continue
        tested += 1
        out = solve_exact(g, 2)
        found += out.found and classify(g, out.certificate, 2).is_full
    entry["ok"] = found == tested
    entry["detail"] = f"{found}/{tested} found"
    assert entry["ok"], entry["detail"]


def test_end_to_end_construction(criterion):
    entry = criterion(6, "construction follows every case at k=2, n=276")
    results = {}
    slowest = 0.0
    for label in CASE_LABELS:
        if label == "W-disconnected/overlap/Case2":
            continue  # needs 2 <= d_W(u1) <= k-1, empty for k=2
        t0 = time.perf_counter()
        g = case_family(label, 2, 276, verify=False)
        cert, trace = construct_2k_st(g, 2)
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        results[label] = classify(g, cert, 2).is_full and trace.label == label and dt < 30
    ok = [lb for lb, good in results.items() if good]
    entry["ok"] = len(results) >= 7 and len(ok) == len(results)
    entry["detail"] = f"{len(ok)}/{len(results)} labels, slowest {slowest:.2f}s"
    assert entry["ok"], {lb: good for lb, good in results.items() if not good}


def test_remark_sigma_implies_nc(criterion):
    entry = criterion(7, "sigma >= n-2 implies 2 NC >= n-2")
    rng = random.Random(SEED + 2)
    tested = premise = violations = 0
    while tested < 10_000:
        n = rng.randint(2, 12)
        g = random_graph(n, rng.uniform(0.3, 1.0), rng.randrange(2**32))
        sigma = sigma_value(g)
        if sigma == COMPLETE:
            continue
        tested += 1
        if sigma >= n - 2:
            premise += 1
            violations += 2 * nc_value(g) < n - 2
    entry["ok"] = violations == 0 and premise > 0
    entry["detail"] = f"{tested} graphs, {premise} met sigma >= n-2, {violations} violations"
    assert entry["ok"], entry["detail"]


def _reference_full(g, vertices, edges, k):
    """Independent check with networkx: spanning tree of g with no degree in [2,k]."""
    t = nx.Graph()
    t.add_nodes_from(vertices)
    t.add_edges_from(edges)
    if set(vertices) != set(range(g.n)) or len(edges) != t.number_of_edges():
        return False
    if any(not g.has_edge(a, b) for a, b in edges) or any(a == b for a, b in edges):
        return False
    return nx.is_tree(t) and all(not 2 <= d <= k for _, d in t.degree())


def test_certificate_fuzz(criterion, tmp_path, capsys):
    entry = criterion(8, "verify rejects broken certificates")
    rng = random.Random(SEED + 3)
    mutants = rejected = missed = false_alarm = 0
    kinds = {"drop": 0, "add": 0, "retarget": 0}
    while mutants < 1_000:
        n = rng.randint(5, 14)
        g = random_graph(n, rng.uniform(0.4, 0.95), rng.randrange(2**32))
        k = rng.choice([2, 3])
        if not is_connected(g):
            continue
        out = solve_exact(g, k)
        if not out.found:
            continue
        edges = list(out.certificate.edges)
        kind = rng.choice(list(kinds))
        if kind == "drop":
            edges.pop(rng.randrange(len(edges)))
        elif kind == "add":
            a, b = rng.sample(range(n), 2)
            edges.append((a, b))
        else:
            i = rng.randrange(len(edges))
            a = edges[i][rng.randrange(2)]
            edges[i] = (a, rng.choice([v for v in range(n) if v != a]))
        kinds[kind] += 1
        mutants += 1
        gpath, cpath = tmp_path / "g.txt", tmp_path / "c.cert"
        gpath.write_text(g.to_edge_list())
        cpath.write_text(TreeCertificate(range(n), edges, k).to_text())
        accepted = main(["verify", str(gpath), str(cpath)]) == 0
        capsys.readouterr()
        should = _reference_full(g, range(n), edges, k)
        if not should:
            rejected += not accepted
            missed += accepted
        elif not accepted:
            false_alarm += 1
    entry["ok"] = missed == 0 and false_alarm == 0
    entry["detail"] = (f"{mutants} mutants {kinds}, {rejected} broken ones rejected, "
                       f"{missed} missed, {false_alarm} valid ones wrongly rejected")
    assert entry["ok"], entry["detail"]


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-v"]))
