"""Noisy edge-existence oracles.

Every query draws exactly one uniform variate ``u`` from the oracle's own
stream and flips the truth when ``u < p``, clamped per model:

* two-sided: answer = realized XOR flip
* false negative: answer = realized AND NOT flip
* false positive: answer = realized OR flip

so the three models consume randomness identically for a given seed.
"""

from __future__ import annotations

import enum
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .graph import Realization, UnknownElementError


class NoiseModel(enum.Enum):
    TWO_SIDED = "two-sided"
    FALSE_NEGATIVE = "fn"
    FALSE_POSITIVE = "fp"


_TWO_SIDED = NoiseModel.TWO_SIDED
_FN = NoiseModel.FALSE_NEGATIVE


@dataclass(frozen=True)
class ErrorModel:
    kind: NoiseModel
    p: float

    def __post_init__(self):
        if not isinstance(self.kind, NoiseModel):
            object.__setattr__(self, "kind", NoiseModel(self.kind))
        if not 0 <= self.p < 0.5:
            raise ValueError(f"error probability must lie in [0, 1/2), got {self.p}")


@dataclass
class QueryLog:
    total: int = 0
    per_edge: defaultdict = field(default_factory=lambda: defaultdict(int))

    def record(self, e: int) -> None:
        self.total += 1
        self.per_edge[e] += 1


def derive_seed(seed: int, *key: int) -> int:
    """Child seed for stream ``key`` of ``seed``; stable across platforms."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    return int(ss.generate_state(2, dtype=np.uint64)[0])


class NoisyOracle:
    def __init__(self, model: ErrorModel, realization: Realization, seed: int = 0, *, log: QueryLog | None = None):
        self._setup(model, realization.graph.edge_ids, realization.realized, seed, log)

    def _setup(self, model, edges, realized, seed, log):
        self.model = model
        self.seed = seed
        self._p = model.p
        self._kind = model.kind
        self._edges = frozenset(edges)
        self._realized = frozenset(realized)
        self._random = random.Random(seed).random
        self.log = log if log is not None else QueryLog()

    @classmethod
    def from_sets(cls, model: ErrorModel, edges: Iterable[int], realized: Iterable[int], seed: int = 0,
                  *, log: QueryLog | None = None) -> NoisyOracle:
        """Oracle over a bare edge universe, skipping the connectivity check.

        Used where the realized edges need not span anything, e.g. checking a
        candidate tree that is missing edges.
        """
        self = cls.__new__(cls)
        self._setup(model, edges, realized, seed, log)
        if not self._realized <= self._edges:
            raise UnknownElementError("realized edges must be a subset of the edge universe")
        return self

    @property
    def kind(self) -> NoiseModel:
        return self._kind

    @property
    def query_count(self) -> int:
        return self.log.total

    def is_realized(self, e: int) -> bool:
        return e in self._realized

    def query(self, e: int) -> bool:
        if e not in self._edges:
            raise UnknownElementError(f"unknown edge {e}")
        log = self.log
        log.total += 1
        log.per_edge[e] += 1
        flip = self._random() < self._p
        truth = e in self._realized
        kind = self._kind
        if kind is _TWO_SIDED:
            return truth != flip
        if kind is _FN:
            return truth and not flip
        return truth or flip

    def stream(self, k: int) -> NoisyOracle:
        """Independent oracle on the same realization, seeded from (seed, k), sharing the query log."""
        child = NoisyOracle.__new__(NoisyOracle)
        child._setup(self.model, self._edges, self._realized, derive_seed(self.seed, k), self.log)
        return child

    def query_stats(self) -> tuple[int, dict[int, int]]:
        return query_stats(self)


class InvertedView:
    """Answers the negation of the wrapped oracle. Queries still count."""

    def __init__(self, base):
        self.base = base

    @property
    def log(self) -> QueryLog:
        return self.base.log

    @property
    def query_count(self) -> int:
        return self.base.log.total

    def query(self, e: int) -> bool:
        return not self.base.query(e)

    def stream(self, k: int) -> InvertedView:
        return InvertedView(self.base.stream(k))


class RelabeledView:
    """Translates edge ids through ``mapping`` before asking the wrapped oracle."""

    def __init__(self, base, mapping: Mapping[int, int]):
        self.base = base
        self.mapping = dict(mapping)

    @property
    def log(self) -> QueryLog:
        return self.base.log

    @property
    def query_count(self) -> int:
        return self.base.log.total

    def query(self, e: int) -> bool:
        try:
            target = self.mapping[e]
        except KeyError:
            raise UnknownElementError(f"edge {e} has no image under the relabeling") from None
        return self.base.query(target)

    def stream(self, k: int) -> RelabeledView:
        return RelabeledView(self.base.stream(k), self.mapping)


def query(o, e: int) -> bool:
    return o.query(e)


def invert(o) -> InvertedView:
    return InvertedView(o)


def query_stats(o) -> tuple[int, dict[int, int]]:
    log = o.log
    return log.total, dict(log.per_edge)
