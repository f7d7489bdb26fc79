"""Resumable query machines.

An algorithm is written as a generator that ``yield``s edge ids and receives
the oracle's boolean answers through ``send``; its ``return`` value is the
result. :class:`StepMachine` wraps such a generator behind a strict protocol so
two algorithms can be run in lock-step against separate oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Generator, Iterable

QueryGen = Generator[int, bool, Any]


class MachineError(RuntimeError):
    pass


class QueryLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class NeedQuery:
    edge: int


@dataclass(frozen=True)
class Done:
    result: Any


class StepMachine:
    def __init__(self, gen: QueryGen, edges: Iterable[int] | None = None, name: str = ""):
        self._gen = gen
        self._edges = None if edges is None else frozenset(edges)
        self.name = name
        self.queries = 0
        self._started = False
        self._done = False

    @property
    def done(self) -> bool:
        return self._done

    def step(self, answer: bool | None = None) -> NeedQuery | Done:
        if self._done:
            raise MachineError(f"machine {self.name or ''} already finished")
        try:
            if not self._started:
                if answer is not None:
                    raise MachineError("the first step takes no answer")
                self._started = True
                e = next(self._gen)
            else:
                if answer is None:
                    raise MachineError("expected an answer to the pending query")
                self.queries += 1
                e = self._gen.send(bool(answer))
        except StopIteration as stop:
            self._done = True
            return Done(stop.value)
        if self._edges is not None and e not in self._edges:
            raise MachineError(f"machine asked about edge {e}, which is not in its graph")
        return NeedQuery(e)


def drive(gen: QueryGen, oracle, max_queries: int | None = None):
    """Run a query generator to completion against ``oracle``.

    Returns ``(result, queries)``. This is the hot path for one-shot calls, so
    it talks to the generator directly instead of going through StepMachine.
    """
    ask = oracle.query
    send = gen.send
    count = 0
    try:
        e = next(gen)
        while True:
            if max_queries is not None and count >= max_queries:
                gen.close()
                raise QueryLimitExceeded(f"stopped after {count} queries")
            count += 1
            e = send(ask(e))
    except StopIteration as stop:
        return stop.value, count


def run_machine(machine: StepMachine, oracle, max_queries: int | None = None):
    state = machine.step()
    while isinstance(state, NeedQuery):
        if max_queries is not None and machine.queries >= max_queries:
            raise QueryLimitExceeded(f"stopped after {max_queries} queries")
        state = machine.step(oracle.query(state.edge))
    return state.result


@dataclass(frozen=True)
class InterleaveOutcome:
    winner: int  # 0 or 1
    result: Any
    queries: tuple[int, int]

    @property
    def total(self) -> int:
        return self.queries[0] + self.queries[1]


def interleave(a: StepMachine, b: StepMachine, oracles, max_queries: int | None = None) -> InterleaveOutcome:
    """Alternate single queries a, b, a, b, ... and stop at the first Done.

    ``oracles`` is a pair of views, one per machine. If ``a`` finishes on its
    t-th query the run used 2t - 1 queries; if ``b`` does, 2t.
    """
    machines = (a, b)
    states = []
    for i, mach in enumerate(machines):
        st = mach.step()
        if isinstance(st, Done):
            return InterleaveOutcome(i, st.result, (a.queries, b.queries))
        states.append(st)
    while True:
        for i, mach in enumerate(machines):
            if max_queries is not None and a.queries + b.queries >= max_queries:
                raise QueryLimitExceeded(f"stopped after {max_queries} queries")
            st = mach.step(oracles[i].query(states[i].edge))
            if isinstance(st, Done):
                return InterleaveOutcome(i, st.result, (a.queries, b.queries))
            states[i] = st
