"""Spanning-tree discovery and tree verification under noisy edge queries.

Each algorithm exists as a query generator (``_*_gen``), a
:class:`~noisyspan.machines.StepMachine` factory (``*_machine``) and a one-shot
function that runs it against an oracle.

Logarithm conventions, where the analysis writes a bare ``log``:

* naive two-sided: ``k = ceil(ln(m^2) / (1 - 2p))`` queries per edge
* naive false-positive: ``k = ceil(log2(m^2))`` queries per edge
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import (
    DualGraph,
    MoldGraph,
    PlanarEmbedding,
    build_dual,
    is_spanning_tree,
    spanning_tree_of,
)
from .machines import QueryGen, StepMachine, drive, interleave
from .oracle import InvertedView, NoiseModel, RelabeledView
from .unionfind import UnionFind

# float noise in closed-form log ratios (log_3 9 = 2.0000000000000004) must not bump a ceiling
_SNAP = 1e-9


def _ceil(x: float) -> int:
    return math.ceil(x - _SNAP)


class ModelMismatch(ValueError):
    pass


def _require(o, kind: NoiseModel) -> None:
    actual = getattr(o, "kind", None)
    if actual is not None and actual is not kind:
        raise ModelMismatch(f"algorithm needs a {kind.value} oracle, got {actual.value}")


@dataclass(frozen=True)
class SpanningTree:
    edges: frozenset[int]
    queries_used: int
    valid: bool = True
    winner: str | None = None
    machine_queries: tuple[int, int] | None = None


@dataclass(frozen=True)
class VerifyVerdict:
    connected: bool
    queries_used: int


AlgoResult = SpanningTree | VerifyVerdict


# -- tree verification ----------------------------------------------------------------


@dataclass(frozen=True)
class VerifyParams:
    epsilon: float
    delta: float
    p: float

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise ValueError(f"delta must lie in (0, 1), got {self.delta}")
        if not 0 < self.p < 0.5:
            raise ValueError(f"p must lie in (0, 1/2), got {self.p}")


def threshold_and_budget(params: VerifyParams, n: int) -> tuple[int, int]:
    """Counter threshold c and total query budget B for a tree with n edges."""
    if n < 1:
        raise ValueError("tree must have at least one edge")
    p = params.p
    c = _ceil(math.log(1 / params.delta) / math.log((1 - p) / p))
    if c <= 0:
        raise ValueError("delta too large: threshold would be 0")
    per_unit = _ceil((1 / params.epsilon) * (1 / (1 - 2 * p)))
    return c, per_unit * c * n


def _verify_gen(edges: Sequence[int], threshold: int, budget: int) -> QueryGen:
    for e in edges:
        counter = 0
        while counter < threshold and budget > 0:
            budget -= 1
            if (yield e):
                counter += 1
            else:
                counter -= 1
        if budget == 0:
            return False
    return True


def _tree_edges(tree: MoldGraph) -> list[int]:
    if not is_spanning_tree(tree, tree.edge_ids):
        raise ValueError("verify_tree needs a tree (connected and acyclic)")
    if tree.m == 0:
        raise ValueError("tree must have at least one edge")
    return tree.edge_ids


def verify_machine(tree: MoldGraph, params: VerifyParams) -> StepMachine:
    edges = _tree_edges(tree)
    c, budget = threshold_and_budget(params, len(edges))
    return StepMachine(_verify_gen(edges, c, budget), edges, name="verify")


def verify_tree(tree: MoldGraph, o, params: VerifyParams) -> VerifyVerdict:
    _require(o, NoiseModel.TWO_SIDED)
    edges = _tree_edges(tree)
    c, budget = threshold_and_budget(params, len(edges))
    verdict, used = drive(_verify_gen(edges, c, budget), o)
    return VerifyVerdict(verdict, used)


def hitting_probability(p: float, c: int, x: int) -> float:
    """Chance that a walk stepping +1 w.p. p and -1 w.p. 1-p ever climbs from x to c."""
    if not 0 < p < 0.5:
        raise ValueError(f"p must lie in (0, 1/2), got {p}")
    if not 0 <= x <= c:
        raise ValueError(f"start {x} outside [0, {c}]")
    return ((1 - p) / p) ** (x - c)


def expected_hitting_time_bound(p: float, c: int) -> float:
    """Upper bound on the mean steps for a walk stepping +1 w.p. 1-p to climb from 0 to c."""
    if not 0 <= p < 0.5:
        raise ValueError(f"p must lie in [0, 1/2), got {p}")
    if c < 0:
        raise ValueError("threshold must be non-negative")
    return c / (1 - 2 * p)


# -- two-sided -------------------------------------------------------------------------


def naive_two_sided_repeats(m: int, p: float) -> int:
    if m <= 1:
        return 0
    return _ceil(math.log(m * m) / (1 - 2 * p))


def _majority_gen(g: MoldGraph, k: int) -> QueryGen:
    accepted = []
    for e in g.edge_ids:
        yes = 0
        for _ in range(k):
            if (yield e):
                yes += 1
        if 2 * yes > k:
            accepted.append(e)
    return spanning_tree_of(g, accepted)


def naive_two_sided_machine(g: MoldGraph, p: float) -> StepMachine:
    return StepMachine(_majority_gen(g, naive_two_sided_repeats(g.m, p)), g.edge_ids, name="naive-two-sided")


def naive_two_sided(g: MoldGraph, o, p: float | None = None) -> SpanningTree:
    """Query every edge k times, keep majority-Yes edges, return a spanning tree of them.

    Falls back to completing the tree with arbitrary moldgraph edges when the
    majority subgraph is disconnected. ``p`` defaults to the oracle's own.
    """
    _require(o, NoiseModel.TWO_SIDED)
    if p is None:
        p = o.model.p
    tree, used = drive(_majority_gen(g, naive_two_sided_repeats(g.m, p)), o)
    return SpanningTree(tree, used)


# -- false negatives ---------------------------------------------------------------------


def _discover_gen(sets: Sequence[Sequence[int]]) -> QueryGen:
    rings = [list(s) for s in sets if len(s)]
    if not rings:
        raise ValueError("discover needs at least one non-empty edge set")
    cursor = [0] * len(rings)
    while True:
        for i, ring in enumerate(rings):
            e = ring[cursor[i]]
            cursor[i] = (cursor[i] + 1) % len(ring)
            if (yield e):
                return e


def discover_machine(sets: Sequence[Sequence[int]]) -> StepMachine:
    return StepMachine(_discover_gen(sets), [e for s in sets for e in s], name="discover")


def discover(sets: Sequence[Sequence[int]], o, max_queries: int | None = None) -> tuple[int, int]:
    """Round-robin over the sets, one query per set per round; returns (edge, queries)."""
    return drive(_discover_gen(sets), o, max_queries)


def _sparse_fn_gen(g: MoldGraph) -> QueryGen:
    work = g.copy()
    found = []
    while work.n > 1:
        u = work.min_degree_vertex()
        cut = [s.edges for s in work.neighborhood(u)]
        e = yield from _discover_gen(cut)
        work.contract_inplace(work.super_edge_of(e).id)
        found.append(e)
    return frozenset(found)


def sparse_fn_machine(g: MoldGraph) -> StepMachine:
    return StepMachine(_sparse_fn_gen(g), g.edge_ids, name="sparse-fn")


def solve_sparse_fn(g: MoldGraph, o, max_queries: int | None = None) -> SpanningTree:
    """Repeatedly DISCOVER a certified edge around a minimum-degree vertex and contract it."""
    _require(o, NoiseModel.FALSE_NEGATIVE)
    tree, used = drive(_sparse_fn_gen(g), o, max_queries)
    return SpanningTree(tree, used)


def _naive_fn_gen(g: MoldGraph) -> QueryGen:
    uf = UnionFind(g.vertices)
    chosen = []
    if uf.components <= 1:
        return frozenset()
    edges = g.edge_ids
    while True:
        for e in edges:
            if (yield e) and uf.union(*g.endpoints(e)):
                chosen.append(e)
                if uf.components == 1:
                    return frozenset(chosen)


def naive_fn_machine(g: MoldGraph) -> StepMachine:
    return StepMachine(_naive_fn_gen(g), g.edge_ids, name="naive-fn")


def naive_fn(g: MoldGraph, o, max_queries: int | None = None) -> SpanningTree:
    """Query all edges round-robin until the certified edges span the graph."""
    _require(o, NoiseModel.FALSE_NEGATIVE)
    tree, used = drive(_naive_fn_gen(g), o, max_queries)
    return SpanningTree(tree, used)


def _combine(a: StepMachine, b: StepMachine, o, max_queries=None) -> SpanningTree:
    out = interleave(a, b, (o.stream(0), o.stream(1)), max_queries)
    winner = (a, b)[out.winner]
    edges, valid = out.result, True
    if isinstance(edges, SpanningTree):
        edges, valid = edges.edges, edges.valid
    return SpanningTree(edges, out.total, valid, winner=winner.name, machine_queries=out.queries)


def combined_fn(g: MoldGraph, o, max_queries: int | None = None) -> SpanningTree:
    """Alternate the sparse solver (first, on ``o.stream(0)``) with the naive one (``o.stream(1)``)."""
    _require(o, NoiseModel.FALSE_NEGATIVE)
    return _combine(sparse_fn_machine(g), naive_fn_machine(g), o, max_queries)


# -- false positives -----------------------------------------------------------------------


def naive_fp_repeats(m: int) -> int:
    if m <= 1:
        return 0
    return _ceil(math.log2(m * m))


def _naive_fp_gen(g: MoldGraph, k: int) -> QueryGen:
    kept = []
    for e in g.edge_ids:
        clean = True
        for _ in range(k):
            if not (yield e):
                clean = False
        if clean:
            kept.append(e)
    return spanning_tree_of(g, kept)


def naive_fp_machine(g: MoldGraph) -> StepMachine:
    return StepMachine(_naive_fp_gen(g, naive_fp_repeats(g.m)), g.edge_ids, name="naive-fp")


def naive_fp(g: MoldGraph, o) -> SpanningTree:
    """Query every edge ceil(log2 m^2) times; any No rules an edge out."""
    _require(o, NoiseModel.FALSE_POSITIVE)
    tree, used = drive(_naive_fp_gen(g, naive_fp_repeats(g.m)), o)
    return SpanningTree(tree, used)


def _relay(inner: QueryGen, mapping, negate: bool) -> QueryGen:
    """Forward ``inner``'s queries through an id mapping, optionally negating answers."""
    try:
        d = next(inner)
    except StopIteration as stop:
        return stop.value
    while True:
        ans = yield mapping[d]
        try:
            d = inner.send((not ans) if negate else ans)
        except StopIteration as stop:
            return stop.value


def _complement(g: MoldGraph, dual: DualGraph, dual_tree: Iterable[int]) -> frozenset[int]:
    removed = {dual.primal_of(d) for d in dual_tree}
    return frozenset(e for e in g.edge_ids if e not in removed)


def _planar_fp_gen(g: MoldGraph, dual: DualGraph) -> QueryGen:
    dual_tree = yield from _relay(_sparse_fn_gen(dual.graph), dual.inverse, negate=True)
    edges = _complement(g, dual, dual_tree)
    return SpanningTree(edges, 0, is_spanning_tree(g, edges))


def planar_fp_machine(g: MoldGraph, emb: PlanarEmbedding) -> StepMachine:
    return StepMachine(_planar_fp_gen(g, build_dual(g, emb)), g.edge_ids, name="planar-fp")


def solve_planar_fp(g: MoldGraph, emb: PlanarEmbedding, o, max_queries: int | None = None) -> SpanningTree:
    """Find the non-realized edges as a spanning tree of the dual and return the rest.

    Only meaningful when the realized subgraph is a tree. With a cyclic
    realization the dual search cannot finish; pass ``max_queries`` to bound it.
    A result that is not a spanning tree comes back with ``valid=False``.
    """
    _require(o, NoiseModel.FALSE_POSITIVE)
    dual = build_dual(g, emb)
    view = RelabeledView(InvertedView(o), dual.inverse)
    dual_tree, used = drive(_sparse_fn_gen(dual.graph), view, max_queries)
    edges = _complement(g, dual, dual_tree)
    return SpanningTree(edges, used, is_spanning_tree(g, edges))


def combined_fp(g: MoldGraph, emb: PlanarEmbedding | None, o, max_queries: int | None = None) -> SpanningTree:
    """Alternate the planar dual solver (``o.stream(0)``) with the naive one (``o.stream(1)``).

    Without an embedding only the naive machine runs, on ``o.stream(1)``.
    """
    _require(o, NoiseModel.FALSE_POSITIVE)
    if emb is None:
        tree, used = drive(_naive_fp_gen(g, naive_fp_repeats(g.m)), o.stream(1))
        return SpanningTree(tree, used, winner="naive-fp", machine_queries=(0, used))
    return _combine(planar_fp_machine(g, emb), naive_fp_machine(g), o, max_queries)
