"""Plain-text graph files.

Layout::

    n m
    edge_id u v          (m lines)
    EMBEDDING            (optional)
    v: e1.end e2.end ... (one line per vertex, clockwise)
    REALIZED             (optional)
    e1 e2 ...            (one line)

Vertices are ``0 .. n-1``.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .graph import MoldGraph, PlanarEmbedding


class FormatError(ValueError):
    pass


@dataclass
class GraphFile:
    graph: MoldGraph
    embedding: PlanarEmbedding | None = None
    realized: frozenset[int] | None = None


def dumps(g: MoldGraph, embedding: PlanarEmbedding | None = None, realized=None) -> str:
    out = io.StringIO()
    write(out, g, embedding, realized)
    return out.getvalue()


def write(fh: TextIO, g: MoldGraph, embedding: PlanarEmbedding | None = None, realized=None) -> None:
    fh.write(f"{g.n} {g.m}\n")
    for e in g.edge_ids:
        u, v = g.endpoints(e)
        fh.write(f"{e} {u} {v}\n")
    if embedding is not None:
        fh.write("EMBEDDING\n")
        for v in sorted(g.vertices):
            ring = embedding.rotation.get(v, ())
            body = " ".join(f"{e}.{end}" for e, end in ring)
            fh.write(f"{v}: {body}\n" if body else f"{v}:\n")
    if realized is not None:
        fh.write("REALIZED\n")
        fh.write(" ".join(str(e) for e in sorted(realized)) + "\n")


def save(path, g: MoldGraph, embedding: PlanarEmbedding | None = None, realized=None) -> None:
    with open(path, "w") as fh:
        write(fh, g, embedding, realized)


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def loads(text: str) -> GraphFile:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty graph file")
    header = _ints(lines[0].split(), 1)
    if len(header) != 2:
        raise FormatError("line 1: expected 'n m'")
    n, m = header
    if len(lines) < 1 + m:
        raise FormatError(f"expected {m} edge lines, file has {len(lines) - 1}")
    edges = []
    for i in range(1, 1 + m):
        rec = _ints(lines[i].split(), i + 1)
        if len(rec) != 3:
            raise FormatError(f"line {i + 1}: expected 'edge_id u v'")
        edges.append(tuple(rec))
    try:
        g = MoldGraph(range(n), edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc

    embedding = None
    realized = None
    i = 1 + m
    while i < len(lines):
        tag = lines[i].strip()
        if not tag:
            i += 1
            continue
        if tag == "EMBEDDING":
            rotation = {}
            i += 1
            while i < len(lines) and ":" in lines[i]:
                head, _, body = lines[i].partition(":")
                v = _ints([head.strip()], i + 1)[0]
                ring = []
                for tok in body.split():
                    e, dot, end = tok.partition(".")
                    if not dot:
                        raise FormatError(f"line {i + 1}: edge-end {tok!r} must look like 'id.end'")
                    ring.append(tuple(_ints([e, end], i + 1)))
                rotation[v] = tuple(ring)
                i += 1
            embedding = PlanarEmbedding(rotation)
        elif tag == "REALIZED":
            body = lines[i + 1] if i + 1 < len(lines) else ""
            realized = frozenset(_ints(body.split(), i + 2))
            i += 2
        else:
            raise FormatError(f"line {i + 1}: unexpected section {tag!r}")
    return GraphFile(g, embedding, realized)


def load(path) -> GraphFile:
    return loads(Path(path).read_text())
