"""Instance families: embedded grids, two-edge ladders, complete graphs and stars.

Grid vertex ``(r, c)`` has id ``r * cols + c``. Edge ids are assigned in
row-major vertex order, right edge before down edge. Rotations list the
edge-ends at a vertex in the order up, right, down, left.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .graph import MoldGraph, PlanarEmbedding, Realization
from .unionfind import UnionFind


class RealizationMode(enum.Enum):
    RANDOM_SPANNING_TREE = "random-tree"
    SNAKE_PATH = "snake"
    LADDER_ALTERNATING = "ladder-alternating"
    FP_HALF_PAIRS = "fp-half-pairs"
    FULL = "full"


class LadderMode(enum.Enum):
    TWO_SIDED_LB = "two-sided-lb"
    FP_LB = "fp-lb"


@dataclass(frozen=True)
class Instance:
    family: str
    graph: MoldGraph
    realization: Realization
    embedding: PlanarEmbedding | None = None


def random_spanning_tree(g: MoldGraph, rng: random.Random) -> frozenset[int]:
    """Kruskal over a shuffled edge order. Not uniform over trees, but every tree can occur."""
    order = g.edge_ids
    rng.shuffle(order)
    uf = UnionFind(g.vertices)
    chosen = []
    for e in order:
        if uf.union(*g.endpoints(e)):
            chosen.append(e)
            if uf.components == 1:
                break
    return frozenset(chosen)


def grid_graph(rows: int, cols: int) -> tuple[MoldGraph, PlanarEmbedding, dict]:
    """Grid plus its canonical embedding; the dict maps (u, v) with u < v to the edge id."""
    if rows < 1 or cols < 1:
        raise ValueError("grid needs at least one row and one column")
    edges = []
    ids = {}
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                ids[(v, v + 1)] = len(edges)
                edges.append((len(edges), v, v + 1))
            if r + 1 < rows:
                ids[(v, v + cols)] = len(edges)
                edges.append((len(edges), v, v + cols))
    rotation = {}
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            ring = []
            if r > 0:
                ring.append((ids[(v - cols, v)], 1))
            if c + 1 < cols:
                ring.append((ids[(v, v + 1)], 0))
            if r + 1 < rows:
                ring.append((ids[(v, v + cols)], 0))
            if c > 0:
                ring.append((ids[(v - 1, v)], 1))
            rotation[v] = tuple(ring)
    return MoldGraph(range(rows * cols), edges), PlanarEmbedding(rotation), ids


def snake_path(rows: int, cols: int, ids: dict) -> frozenset[int]:
    """Boustrophedon Hamiltonian path: each full row, linked at alternating ends."""
    chosen = set()
    for r in range(rows):
        for c in range(cols - 1):
            v = r * cols + c
            chosen.add(ids[(v, v + 1)])
        if r + 1 < rows:
            c = cols - 1 if r % 2 == 0 else 0
            v = r * cols + c
            chosen.add(ids[(v, v + cols)])
    return frozenset(chosen)


def gen_grid(rows: int, cols: int, realization_mode=RealizationMode.RANDOM_SPANNING_TREE, seed: int = 0):
    mode = RealizationMode(realization_mode)
    g, emb, ids = grid_graph(rows, cols)
    if mode is RealizationMode.SNAKE_PATH:
        realized = snake_path(rows, cols, ids)
    elif mode is RealizationMode.RANDOM_SPANNING_TREE:
        realized = random_spanning_tree(g, random.Random(seed))
    elif mode is RealizationMode.FULL:
        realized = frozenset(g.edge_ids)
    else:
        raise ValueError(f"realization mode {mode.value} does not apply to grids")
    return g, emb, Realization(g, realized)


def gen_ladder(n: int, mode=LadderMode.TWO_SIDED_LB, seed: int = 0):
    """Path of n+1 vertices where consecutive vertices share two parallel edges.

    Pair i joins vertices i and i+1 through edges 2i and 2i+1.
    ``TWO_SIDED_LB``: one edge per pair is realized, picked by the seed.
    ``FP_LB``: a seeded n // 2 of the pairs keep one realized edge, the rest keep both.
    """
    if n < 1:
        raise ValueError("ladder needs at least one pair")
    mode = LadderMode(mode)
    rng = random.Random(seed)
    edges = []
    for i in range(n):
        edges.append((2 * i, i, i + 1))
        edges.append((2 * i + 1, i, i + 1))
    g = MoldGraph(range(n + 1), edges)
    if mode is LadderMode.TWO_SIDED_LB:
        single = range(n)
    else:
        single = rng.sample(range(n), n // 2)
    single = set(single)
    realized = set()
    for i in range(n):
        if i in single:
            realized.add(2 * i + rng.randrange(2))
        else:
            realized.update((2 * i, 2 * i + 1))
    return g, Realization(g, realized)


def complete_graph(n: int) -> MoldGraph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.append((len(edges), u, v))
    return MoldGraph(range(n), edges)


def gen_complete(n: int, seed: int = 0):
    g = complete_graph(n)
    return g, Realization(g, random_spanning_tree(g, random.Random(seed)))


def gen_star(n: int, seed: int = 0):
    """K_{1,n-1} centred on vertex 0, every edge realized. ``seed`` is accepted for uniformity."""
    if n < 1:
        raise ValueError("star needs at least one vertex")
    g = MoldGraph(range(n), [(i - 1, 0, i) for i in range(1, n)])
    return g, Realization(g, g.edge_ids)


@dataclass(frozen=True)
class InstanceSpec:
    family: str  # grid | ladder | complete | star
    rows: int = 0
    cols: int = 0
    n: int = 0
    ladder_mode: LadderMode = LadderMode.TWO_SIDED_LB
    realization_mode: RealizationMode = RealizationMode.RANDOM_SPANNING_TREE
    seed: int = 0


def generate(spec: InstanceSpec) -> Instance:
    if spec.family == "grid":
        g, emb, real = gen_grid(spec.rows, spec.cols, spec.realization_mode, spec.seed)
        return Instance("grid", g, real, emb)
    if spec.family == "ladder":
        g, real = gen_ladder(spec.n, spec.ladder_mode, spec.seed)
        return Instance("ladder", g, real)
    if spec.family == "complete":
        g, real = gen_complete(spec.n, spec.seed)
        return Instance("complete", g, real)
    if spec.family == "star":
        g, real = gen_star(spec.n, spec.seed)
        return Instance("star", g, real)
    raise ValueError(f"unknown family {spec.family!r}")
