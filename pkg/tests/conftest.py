import itertools

import pytest
from hypothesis import strategies as st

from twoktree import Graph


@st.composite
def graphs(draw, min_n=0, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, chosen) if keep]
    if connected:
        # a random spanning path keeps the graph connected
        order = draw(st.permutations(range(n)))
        edges = set(edges) | {tuple(sorted(p)) for p in zip(order, order[1:])}
    return Graph(n, sorted(edges))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@pytest.fixture
def p4():
    return path(4)


@pytest.fixture
def k4():
    return Graph.complete(4)


# -- acceptance summary ------------------------------------------------------------------

ACCEPTANCE: list[dict] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; a test that dies before finishing is logged as FAIL."""
    entries = []

    def start(number: int, title: str) -> dict:
        entry = {"number": number, "title": title, "ok": False, "detail": "did not complete"}
        entries.append(entry)
        return entry

    yield start
    ACCEPTANCE.extend(entries)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in sorted(ACCEPTANCE, key=lambda e: e["number"]):
        mark = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(f"{mark} [{e['number']}] {e['title']}: {e['detail']}")
