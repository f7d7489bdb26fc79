import random

import pytest
from hypothesis import strategies as st

from noisyspan.graph import MoldGraph


def path_graph(n, copies=1):
    edges = []
    for i in range(n - 1):
        for _ in range(copies):
            edges.append((len(edges), i, i + 1))
    return MoldGraph(range(n), edges)


def triangle():
    return MoldGraph(range(3), [(0, 0, 1), (1, 1, 2), (2, 0, 2)])


def random_tree_edges(n, rng):
    """Random recursive tree on vertices 0..n-1; edge i joins i+1 to an earlier vertex."""
    return [(i, rng.randrange(i + 1), i + 1) for i in range(n - 1)]


@st.composite
def connected_multigraphs(draw, max_n=9, max_extra=14):
    """Connected loopless multigraph: random tree plus random extra (possibly parallel) edges."""
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    edges = random_tree_edges(n, rng)
    if n >= 2:
        for _ in range(draw(st.integers(0, max_extra))):
            u, v = rng.sample(range(n), 2)
            edges.append((len(edges), u, v))
    return MoldGraph(range(n), edges)


@pytest.fixture
def rng():
    return random.Random(12345)
