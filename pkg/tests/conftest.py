import random

import networkx as nx
import pytest

from isocrit.graph import build_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), h.edges())


def random_graph(rng: random.Random, n_lo=1, n_hi=9, connected=False):
    while True:
        n = rng.randint(n_lo, n_hi)
        p = rng.random()
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        g = build_graph(n, edges)
        if not connected or nx.is_connected(to_nx(g)):
            return g


@pytest.fixture
def rng():
    return random.Random(20240611)


from hypothesis import strategies as st  # noqa: E402


@st.composite
def graphs(draw, min_n=1, max_n=8, connected=False):
    """Arbitrary simple graphs; ``connected`` adds a random spanning tree."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, keep in zip(pairs, mask) if keep}
    if connected:
        edges |= {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    return build_graph(n, edges)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
