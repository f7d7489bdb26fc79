from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noisyspan.graph import is_spanning_tree, sparsity, trace_faces
from noisyspan.instances import (
    InstanceSpec,
    LadderMode,
    gen_complete,
    gen_grid,
    gen_ladder,
    gen_star,
    generate,
)


def test_grid_snake():
    g, emb, real = gen_grid(3, 3, "snake")
    assert (g.n, g.m) == (9, 12)
    assert len(real.realized) == 8 and is_spanning_tree(g, real.realized)
    # every path vertex has degree <= 2 in the realization
    deg = {v: 0 for v in g.vertices}
    for e in real.realized:
        for v in g.endpoints(e):
            deg[v] += 1
    assert max(deg.values()) == 2 and sorted(deg.values()).count(1) == 2


def test_grid_single_vertex():
    g, emb, real = gen_grid(1, 1, "random-tree")
    assert g.n == 1 and g.m == 0 and real.realized == frozenset()


def test_grid_2x2_random_tree():
    for seed in range(10):
        g, _, real = gen_grid(2, 2, "random-tree", seed=seed)
        assert len(real.realized) == 3 and real.realized < frozenset(g.edge_ids)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.integers(0, 1000))
def test_grid_random_tree_is_spanning_and_embedded(rows, cols, seed):
    g, emb, real = gen_grid(rows, cols, "random-tree", seed=seed)
    assert g.m == rows * (cols - 1) + cols * (rows - 1)
    assert is_spanning_tree(g, real.realized)
    assert len(trace_faces(g, emb)) == g.m - g.n + 2


def test_grid_same_seed_same_tree():
    assert gen_grid(6, 7, seed=3)[2].realized == gen_grid(6, 7, seed=3)[2].realized


def test_ladder_two_sided():
    g, real = gen_ladder(1)
    assert (g.n, g.m, len(real.realized)) == (2, 2, 1)
    g, real = gen_ladder(9, seed=4)
    assert len(real.realized) == 9 and is_spanning_tree(g, real.realized)
    assert all(len(s.edges) == 2 for s in g.super_edges())


@pytest.mark.parametrize("n", [1, 4, 7, 64])
def test_ladder_fp_half_pairs(n):
    g, real = gen_ladder(n, LadderMode.FP_LB, seed=n)
    singles = sum(1 for i in range(n) if len({2 * i, 2 * i + 1} & real.realized) == 1)
    doubles = sum(1 for i in range(n) if {2 * i, 2 * i + 1} <= real.realized)
    assert (singles, doubles) == (n // 2, n - n // 2)


def test_complete():
    g, real = gen_complete(2)
    assert g.m == 1 and real.realized == {0}
    g, real = gen_complete(5, seed=1)
    assert g.m == 10 and len(real.realized) == 4 and is_spanning_tree(g, real.realized)
    g, _ = gen_complete(20)
    assert sparsity(g)[0] == Fraction(19, 2)


def test_star():
    g, real = gen_star(6)
    assert g.m == 5 and real.realized == frozenset(g.edge_ids)
    assert all(0 in g.endpoints(e) for e in g.edge_ids)


def test_generate_dispatch():
    inst = generate(InstanceSpec("grid", rows=2, cols=3, seed=1))
    assert inst.embedding is not None and inst.graph.n == 6
    assert generate(InstanceSpec("ladder", n=3)).embedding is None
    with pytest.raises(ValueError):
        generate(InstanceSpec("torus", n=3))
    with pytest.raises(ValueError):
        gen_ladder(3, "fp-half-pairs")
