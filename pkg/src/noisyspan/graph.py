"""Multigraphs with super-edges, contraction, rotation-system embeddings and duals.

A :class:`MoldGraph` keeps every simple edge under a stable integer id. Parallel
edges between the same unordered vertex pair form a *super-edge*, identified by
the smallest simple-edge id it contains. Contraction merges the two endpoints
into the smaller vertex id, drops the contracted super-edge and unions any
super-edges that become parallel.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .unionfind import UnionFind


class GraphError(ValueError):
    pass


class UnknownElementError(GraphError):
    pass


class ContractionError(GraphError):
    pass


class EmbeddingError(GraphError):
    pass


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SuperEdge:
    id: int
    u: int
    v: int
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


class MoldGraph:
    """Undirected loopless multigraph with super-edge bookkeeping.

    Public operations never mutate: :meth:`contract` returns a new graph. The
    algorithms copy once and then call :meth:`contract_inplace` on their
    private working copy.
    """

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int, int]] = ()):
        self._vertices: set[int] = set(vertices)
        self._ends: dict[int, tuple[int, int]] = {}
        self._original: dict[int, tuple[int, int]] = {}
        self._supers: dict[tuple[int, int], list[int]] = {}
        self._adj: dict[int, set[int]] = {v: set() for v in self._vertices}
        self._removed: set[int] = set()
        for eid, u, v in edges:
            if eid in self._ends:
                raise GraphError(f"duplicate edge id {eid}")
            if u == v:
                raise GraphError(f"edge {eid} is a self-loop at {u}")
            if u not in self._vertices or v not in self._vertices:
                raise UnknownElementError(f"edge {eid} has an endpoint outside the vertex set")
            self._ends[eid] = (u, v)
            self._original[eid] = (u, v)
            key = _pair(u, v)
            self._supers.setdefault(key, []).append(eid)
            self._adj[u].add(v)
            self._adj[v].add(u)
        for members in self._supers.values():
            members.sort()
        self._heap = [(len(nb), v) for v, nb in self._adj.items()]
        heapq.heapify(self._heap)

    # -- construction helpers -------------------------------------------------

    def copy(self) -> MoldGraph:
        g = MoldGraph.__new__(MoldGraph)
        g._vertices = set(self._vertices)
        g._ends = dict(self._ends)
        g._original = self._original  # never mutated after __init__
        g._supers = {k: list(v) for k, v in self._supers.items()}
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        g._removed = set(self._removed)
        g._heap = list(self._heap)
        return g

    # -- queries ---------------------------------------------------------------

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self._vertices)

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self._ends)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._ends)

    @property
    def num_super_edges(self) -> int:
        return len(self._supers)

    def has_edge(self, eid: int) -> bool:
        return eid in self._ends

    def endpoints(self, eid: int) -> tuple[int, int]:
        """Current endpoints of a live edge (they move as contractions merge vertices)."""
        try:
            return self._ends[eid]
        except KeyError:
            raise UnknownElementError(f"unknown edge {eid}") from None

    def original_endpoints(self, eid: int) -> tuple[int, int]:
        try:
            return self._original[eid]
        except KeyError:
            raise UnknownElementError(f"unknown edge {eid}") from None

    def degree(self, v: int) -> int:
        if v not in self._vertices:
            raise UnknownElementError(f"unknown vertex {v}")
        return len(self._adj[v])

    def _make_super(self, key: tuple[int, int]) -> SuperEdge:
        members = self._supers[key]
        return SuperEdge(members[0], key[0], key[1], tuple(members))

    def super_edges(self) -> list[SuperEdge]:
        return sorted((self._make_super(k) for k in self._supers), key=lambda s: s.id)

    def super_edge_of(self, eid: int) -> SuperEdge:
        return self._make_super(_pair(*self.endpoints(eid)))

    def super_edge(self, sid: int) -> SuperEdge:
        if sid in self._removed:
            raise ContractionError(f"super-edge {sid} was already contracted away")
        if sid not in self._ends:
            raise UnknownElementError(f"unknown super-edge {sid}")
        s = self.super_edge_of(sid)
        if s.id != sid:
            raise UnknownElementError(f"{sid} is a simple edge of super-edge {s.id}, not a super-edge id")
        return s

    def neighborhood(self, v: int) -> list[SuperEdge]:
        if v not in self._vertices:
            raise UnknownElementError(f"unknown vertex {v}")
        return sorted((self._make_super(_pair(v, w)) for w in self._adj[v]), key=lambda s: s.id)

    def min_degree_vertex(self) -> int:
        if not self._vertices:
            raise GraphError("empty graph has no vertices")
        heap = self._heap
        while heap:
            d, v = heap[0]
            if v in self._vertices and len(self._adj[v]) == d:
                return v
            heapq.heappop(heap)
        raise AssertionError("degree heap lost a live vertex")  # pragma: no cover

    # -- contraction -------------------------------------------------------------

    def contract(self, sid: int) -> MoldGraph:
        g = self.copy()
        g.contract_inplace(sid)
        return g

    def contract_inplace(self, sid: int) -> int:
        """Contract super-edge ``sid`` in place and return the id of the merged vertex."""
        s = self.super_edge(sid)
        keep, gone = s.u, s.v  # u < v
        for eid in self._supers.pop((keep, gone)):
            del self._ends[eid]
            self._removed.add(eid)
        adj = self._adj
        adj[keep].discard(gone)
        adj[gone].discard(keep)
        touched = [keep]
        for w in adj.pop(gone):
            moved = self._supers.pop(_pair(gone, w))
            for eid in moved:
                a, b = self._ends[eid]
                self._ends[eid] = (keep, b) if a == gone else (a, keep)
            adj[w].discard(gone)
            key = _pair(keep, w)
            if key in self._supers:
                merged = self._supers[key] + moved
                merged.sort()
                self._supers[key] = merged
                touched.append(w)
            else:
                self._supers[key] = moved
                adj[w].add(keep)
                adj[keep].add(w)
        self._vertices.discard(gone)
        for v in touched:
            heapq.heappush(self._heap, (len(adj[v]), v))
        return keep

    def check_invariants(self) -> None:
        """Raise AssertionError if the internal partition drifted."""
        seen = set()
        for key, members in self._supers.items():
            assert key[0] < key[1], key
            assert members, key
            for eid in members:
                assert _pair(*self._ends[eid]) == key
                seen.add(eid)
        assert seen == set(self._ends)
        for v in self._vertices:
            assert v not in self._adj[v]
            for w in self._adj[v]:
                assert _pair(v, w) in self._supers

    def __repr__(self) -> str:
        return f"MoldGraph(n={self.n}, m={self.m}, super_edges={self.num_super_edges})"


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system: clockwise edge-ends around each vertex.

    An edge-end is ``(edge_id, end)`` where end 0 sits at the edge's first
    endpoint and end 1 at its second.
    """

    rotation: Mapping[int, tuple[tuple[int, int], ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class Realization:
    """Realized edges of a moldgraph; must form a connected spanning subgraph."""

    graph: MoldGraph
    realized: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "realized", frozenset(self.realized))
        unknown = [e for e in self.realized if not self.graph.has_edge(e)]
        if unknown:
            raise UnknownElementError(f"realized edges not in graph: {sorted(unknown)[:5]}")
        uf = UnionFind(self.graph.vertices)
        for e in self.realized:
            uf.union(*self.graph.endpoints(e))
        if uf.components > 1:
            raise GraphError("realized subgraph is not connected and spanning")

    def __contains__(self, eid: int) -> bool:
        return eid in self.realized


@dataclass(frozen=True)
class DualGraph:
    graph: MoldGraph
    bijection: dict[int, int]  # primal edge id -> dual edge id
    faces: list[list[tuple[int, int]]]
    face_of: dict[tuple[int, int], int]
    inverse: dict[int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "inverse", {d: p for p, d in self.bijection.items()})

    def primal_of(self, dual_edge: int) -> int:
        return self.inverse[dual_edge]


# -- module-level operations ------------------------------------------------------


def contract(g: MoldGraph, s: int) -> MoldGraph:
    return g.contract(s)


def min_degree_vertex(g: MoldGraph) -> int:
    return g.min_degree_vertex()


def neighborhood(g: MoldGraph, v: int) -> list[SuperEdge]:
    return g.neighborhood(v)


def validate_embedding(g: MoldGraph, emb: PlanarEmbedding) -> None:
    """Check that every edge-end occurs exactly once, at the right vertex."""
    if set(emb.rotation) - set(g.vertices):
        raise EmbeddingError("rotation lists vertices not in the graph")
    seen: set[tuple[int, int]] = set()
    for v, ring in emb.rotation.items():
        for e, end in ring:
            if end not in (0, 1):
                raise EmbeddingError(f"edge-end marker must be 0 or 1, got {end}")
            if not g.has_edge(e):
                raise EmbeddingError(f"rotation at {v} mentions unknown edge {e}")
            if g.endpoints(e)[end] != v:
                raise EmbeddingError(f"end {end} of edge {e} is not incident to {v}")
            if (e, end) in seen:
                raise EmbeddingError(f"edge-end {e}.{end} appears twice")
            seen.add((e, end))
    if len(seen) != 2 * g.m:
        raise EmbeddingError("rotation system misses some edge-ends")


def _is_connected(g: MoldGraph) -> bool:
    uf = UnionFind(g.vertices)
    for e in g.edge_ids:
        uf.union(*g.endpoints(e))
    return uf.components <= 1


def trace_faces(g: MoldGraph, emb: PlanarEmbedding) -> list[list[tuple[int, int]]]:
    """Faces of an embedded connected graph, each a cyclic list of darts.

    Dart ``(e, end)`` leaves the vertex holding that end. After traversing it we
    arrive at ``(e, 1 - end)`` and continue with the next edge-end clockwise.
    """
    validate_embedding(g, emb)
    if not _is_connected(g):
        raise EmbeddingError("face tracing needs a connected graph")
    if g.m == 0:
        return [[]]
    succ: dict[tuple[int, int], tuple[int, int]] = {}
    for ring in emb.rotation.values():
        k = len(ring)
        for i, dart in enumerate(ring):
            succ[dart] = ring[(i + 1) % k]
    faces = []
    visited: set[tuple[int, int]] = set()
    for start in sorted(succ):
        if start in visited:
            continue
        face = []
        dart = start
        while dart not in visited:
            visited.add(dart)
            face.append(dart)
            e, end = dart
            dart = succ[(e, 1 - end)]
        if dart != start:
            raise EmbeddingError("inconsistent rotation system")
        faces.append(face)
    if g.n - g.m + len(faces) != 2:
        raise EmbeddingError(
            f"Euler check failed: V={g.n} E={g.m} F={len(faces)}; embedding is not planar"
        )
    return faces


def build_dual(g: MoldGraph, emb: PlanarEmbedding) -> DualGraph:
    """Dual multigraph: one vertex per face, one edge per primal edge.

    Dual edges reuse the primal edge ids. A bridge borders the same face on both
    sides and would be a self-loop, so it has no dual edge.
    """
    faces = trace_faces(g, emb)
    face_of = {dart: i for i, face in enumerate(faces) for dart in face}
    dual_edges = []
    bijection = {}
    for e in g.edge_ids:
        f0, f1 = face_of[(e, 0)], face_of[(e, 1)]
        if f0 != f1:
            dual_edges.append((e, f0, f1))
            bijection[e] = e
    dual = MoldGraph(range(len(faces)), dual_edges)
    return DualGraph(dual, bijection, faces, face_of)


def is_spanning_tree(g: MoldGraph, edges: Iterable[int]) -> bool:
    edges = list(edges)
    if len(set(edges)) != len(edges) or len(edges) != g.n - 1:
        return False
    uf = UnionFind(g.vertices)
    for e in edges:
        if not g.has_edge(e):
            return False
        if not uf.union(*g.endpoints(e)):
            return False
    return uf.components == 1


def spanning_tree_of(g: MoldGraph, preferred: Sequence[int] = (), rest: Iterable[int] | None = None) -> frozenset[int]:
    """Kruskal-style forest: take ``preferred`` edges first, then ``rest`` (all edges by default)."""
    uf = UnionFind(g.vertices)
    chosen = []
    for e in list(preferred) + list(g.edge_ids if rest is None else rest):
        if uf.components == 1:
            break
        if uf.union(*g.endpoints(e)):
            chosen.append(e)
    return frozenset(chosen)


def sparsity(g: MoldGraph) -> tuple[Fraction, Fraction]:
    """(simple edges per vertex, super-edges per vertex)."""
    if g.n == 0:
        raise GraphError("sparsity of an empty graph is undefined")
    return Fraction(g.m, g.n), Fraction(g.num_super_edges, g.n)
