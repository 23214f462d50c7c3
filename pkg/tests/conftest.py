import itertools
import random

import pytest
from hypothesis import strategies as st

from pcnil.graph import CommutationGraph, complete_graph, edgeless_graph, example_graph

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def all_graphs(n):
    vs = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(vs, 2))
    for mask in range(2 ** len(pairs)):
        yield CommutationGraph.from_pairs(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])


def random_graph(rng, n, p=0.5):
    vs = [f"v{i}" for i in range(n)]
    return CommutationGraph.from_pairs(vs, [e for e in itertools.combinations(vs, 2) if rng.random() < p])


def standard_graphs():
    """Every graph on at most 3 vertices plus 20 seeded random 4-vertex graphs."""
    out = [g for n in (1, 2, 3) for g in all_graphs(n)]
    rng = random.Random(20240521)
    out += [random_graph(rng, 4) for _ in range(20)]
    return out


@pytest.fixture
def ex():
    return example_graph()


@pytest.fixture
def edgeless2():
    return edgeless_graph("ab")


@pytest.fixture
def k3():
    return complete_graph(["a", "b", "c"])


@st.composite
def graphs(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    vs = [f"v{i}" for i in range(n)]
    pairs = list(itertools.combinations(vs, 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return CommutationGraph.from_pairs(vs, [p for p, keep in zip(pairs, chosen) if keep])


def words_over(g, min_size=0, max_size=6):
    return st.lists(st.sampled_from(g.vertices), min_size=min_size, max_size=max_size).map(tuple)
