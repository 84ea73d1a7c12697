from __future__ import annotations

import json
import sys
from itertools import combinations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from mqce import GenSpec, Graph, QcParams, gen_er
from mqce.predicates import is_quasi_clique

FIXTURES = Path(__file__).parent / "fixtures"
GAMMAS = ("0.5", "0.6", "0.7", "0.9", "1")


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def graph_of(n: int, edges) -> Graph:
    return Graph(n, edges)


def walk_mqcs(g: Graph, params: QcParams) -> list[tuple[int, ...]]:
    """Plain subset walk; slow, but independent of the numpy oracle."""
    qcs = [
        frozenset(c)
        for k in range(1, g.n + 1)
        for c in combinations(range(g.n), k)
        if is_quasi_clique(g, c, params)
    ]
    pool = set(qcs)
    return sorted(
        tuple(sorted(h)) for h in qcs if len(h) >= params.theta and not any(h < o for o in pool)
    )


def small_corpus(n_values, densities, seeds):
    for n in n_values:
        for d in densities:
            for s in seeds:
                m = min(int(round(d * n)), n * (n - 1) // 2)
                yield gen_er(GenSpec(n, m, 7919 * s + 31 * n + int(10 * d)))


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


params_st = st.builds(
    QcParams.parse, st.sampled_from(GAMMAS), st.integers(1, 5)
)


@pytest.fixture(scope="session")
def er_reference():
    return json.loads((FIXTURES / "er_reference.json").read_text())


# Constructed graphs realising two worked examples. Vertex v_i has id i; id 0
# is an unused isolated vertex.

PRUNE_EXAMPLE_EDGES = [
    (1, 3), (3, 4), (1, 2), (4, 2), (1, 5), (4, 5), (3, 6), (3, 7),
    (1, 6), (4, 7), (8, 9), (8, 2), (9, 5),
]

PIVOT_EXAMPLE_EDGES = [
    (1, 2), (1, 3), (1, 5), (1, 6), (3, 2), (3, 4), (3, 5), (2, 4), (2, 6), (4, 5),
    (4, 7), (5, 9), (6, 7), (6, 8), (7, 8), (7, 9), (8, 9), (8, 5), (9, 4),
]


def prune_example():
    """gamma=0.7, S={1,3,4}, C={2,5,...,9}: bound 2, then 1 after refinement."""
    return Graph(10, PRUNE_EXAMPLE_EDGES), (1, 3, 4), (2, 5, 6, 7, 8, 9)


def pivot_example():
    """gamma=0.6, S={1,2}, C={3,...,9}: bound 3; pivots 1 (in S) and 3 (in C)."""
    return Graph(10, PIVOT_EXAMPLE_EDGES), (1, 2), (3, 4, 5, 6, 7, 8, 9)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
