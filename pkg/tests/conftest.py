import os
import sys

import networkx as nx
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from extremal_diam.graph import Graph  # noqa: E402


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def from_nx(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), list(h.edges()))


def to_nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


PATH3 = path_graph(3)
PATH4 = path_graph(4)
PATH5 = path_graph(5)
K4 = complete_graph(4)
K13 = Graph(4, [(0, 1), (0, 2), (0, 3)])
CYCLE6 = cycle_graph(6)
C4 = cycle_graph(4)
# centre c=0, legs 0-1-2, 0-3-4, 0-5-6
SPIDER3 = Graph(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
C, A1, A2, B1, B2, D1, D2 = range(7)
PETERSEN = from_nx(nx.petersen_graph())
# three 2-cliques {0,1}, {2,3}, {4,5} joined completely along a path pattern
BLOB_PATH = Graph(
    6,
    [(0, 1), (2, 3), (4, 5)]
    + [(a, b) for a in (0, 1) for b in (2, 3)]
    + [(a, b) for a in (2, 3) for b in (4, 5)],
)


@pytest.fixture(scope="session")
def corpus_entries():
    from corpus import corpus

    return corpus()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.report_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
