"""Single runs and seeded sweeps, written as CSV.

Trial rows use the columns in :data:`COLUMNS`. A sweep appends a summary block
whose lines all start with ``# `` so that ``pandas.read_csv(..., comment="#")``
reads only the trial rows; :func:`read_bench` parses both parts.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import algorithms as alg
from .graph import MoldGraph, PlanarEmbedding, Realization, is_spanning_tree, spanning_tree_of
from .instances import InstanceSpec, LadderMode, RealizationMode, generate
from .oracle import ErrorModel, NoiseModel, NoisyOracle, derive_seed

COLUMNS = ["family", "n", "m", "algo", "model", "p", "seed", "queries", "success", "ms"]
SUMMARY_COLUMNS = [
    "family", "n", "m", "algo", "model", "p", "trials",
    "mean_queries", "std_queries", "success_rate", "q_per_m", "q_per_m_ln_n", "q_per_n_ln_n",
]

ALGO_MODELS = {
    "verify": NoiseModel.TWO_SIDED,
    "naive-two-sided": NoiseModel.TWO_SIDED,
    "naive-fn": NoiseModel.FALSE_NEGATIVE,
    "sparse-fn": NoiseModel.FALSE_NEGATIVE,
    "combined-fn": NoiseModel.FALSE_NEGATIVE,
    "naive-fp": NoiseModel.FALSE_POSITIVE,
    "planar-fp": NoiseModel.FALSE_POSITIVE,
    "combined-fp": NoiseModel.FALSE_POSITIVE,
}
NEEDS_EMBEDDING = {"planar-fp"}

DEFAULT_VERIFY = dict(epsilon=0.1, delta=0.1)


@dataclass
class RunRecord:
    family: str
    n: int
    m: int
    algo: str
    model: str
    p: float
    seed: int
    queries: int
    success: bool
    ms: float | None = None

    def row(self) -> list[str]:
        ms = "" if self.ms is None else f"{self.ms:.3f}"
        return [self.family, str(self.n), str(self.m), self.algo, self.model, format(self.p, "g"),
                str(self.seed), str(self.queries), "true" if self.success else "false", ms]


class UsageError(ValueError):
    pass


def resolve_model(algo: str, model: str | None) -> NoiseModel:
    if algo not in ALGO_MODELS:
        raise UsageError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGO_MODELS)}")
    need = ALGO_MODELS[algo]
    if model is not None and NoiseModel(model) is not need:
        raise UsageError(f"{algo} runs against a {need.value} oracle, not {model}")
    return need


def run_algorithm(algo: str, g: MoldGraph, realized: Iterable[int], emb: PlanarEmbedding | None,
                  p: float, seed: int, *, model: str | None = None, epsilon: float | None = None,
                  delta: float | None = None, assumed_p: float | None = None,
                  max_queries: int | None = None):
    """Run one algorithm once. Returns ``(result, success, oracle)``.

    Success is recomputed from the realization and never read off the result.
    ``verify`` treats ``g`` itself as the tree under test and succeeds when its
    verdict matches whether every tree edge is realized. Its threshold and
    budget use ``assumed_p``, defaulting to the oracle's p (or 0.25 when p = 0).
    """
    kind = resolve_model(algo, model)
    realized = frozenset(realized)
    em = ErrorModel(kind, p)
    if algo == "verify":
        params = alg.VerifyParams(epsilon or DEFAULT_VERIFY["epsilon"], delta or DEFAULT_VERIFY["delta"],
                                  assumed_p or (p if p > 0 else 0.25))
        oracle = NoisyOracle.from_sets(em, g.edge_ids, realized, seed)
        res = alg.verify_tree(g, oracle, params)
        truth = realized >= set(g.edge_ids)
        return res, res.connected == truth, oracle
    oracle = NoisyOracle(em, Realization(g, realized), seed)
    if algo in NEEDS_EMBEDDING and emb is None:
        raise UsageError(f"{algo} needs a graph file with an EMBEDDING section")
    if algo == "naive-two-sided":
        res = alg.naive_two_sided(g, oracle)
    elif algo == "naive-fn":
        res = alg.naive_fn(g, oracle, max_queries)
    elif algo == "sparse-fn":
        res = alg.solve_sparse_fn(g, oracle, max_queries)
    elif algo == "combined-fn":
        res = alg.combined_fn(g, oracle, max_queries)
    elif algo == "naive-fp":
        res = alg.naive_fp(g, oracle)
    elif algo == "planar-fp":
        res = alg.solve_planar_fp(g, emb, oracle, max_queries)
    else:
        res = alg.combined_fp(g, emb, oracle, max_queries)
    ok = is_spanning_tree(g, res.edges) and res.edges <= realized
    return res, ok, oracle


def _verify_target(g: MoldGraph, realization: Realization) -> MoldGraph:
    """For sweeps: the tree to verify is a realized spanning tree of the instance."""
    tree = spanning_tree_of(g, sorted(realization.realized), rest=())
    return MoldGraph(g.vertices, [(e, *g.endpoints(e)) for e in sorted(tree)])


def instance_spec(family: str, size: int, seed: int, ladder_mode: str = "two-sided-lb",
                  realize: str = "random-tree") -> InstanceSpec:
    if family == "grid":
        side = math.isqrt(size)
        if side * side != size:
            raise UsageError(f"grid sizes are vertex counts and must be perfect squares, got {size}")
        return InstanceSpec("grid", rows=side, cols=side, realization_mode=RealizationMode(realize), seed=seed)
    if family == "ladder":
        return InstanceSpec("ladder", n=size, ladder_mode=LadderMode(ladder_mode), seed=seed)
    if family in ("complete", "star"):
        return InstanceSpec(family, n=size, seed=seed)
    raise UsageError(f"unknown family {family!r}")


def _trial(task) -> RunRecord:
    family, size, algo, p, seed, ladder_mode, realize, timing = task
    inst = generate(instance_spec(family, size, seed, ladder_mode, realize))
    g, realized = inst.graph, inst.realization.realized
    if algo == "verify":
        g = _verify_target(g, inst.realization)
        realized = frozenset(g.edge_ids)
    start = time.perf_counter()
    res, ok, oracle = run_algorithm(algo, g, realized, inst.embedding, p, derive_seed(seed, 1))
    ms = (time.perf_counter() - start) * 1000 if timing else None
    assert oracle.query_count == res.queries_used
    return RunRecord(inst.family, inst.graph.n, inst.graph.m, algo, ALGO_MODELS[algo].value, p, seed,
                     res.queries_used, ok, ms)


def sweep(family: str, sizes: Sequence[int], trials: int, algos: Sequence[str], p: float,
          base_seed: int = 0, *, model: str | None = None, ladder_mode: str = "two-sided-lb",
          realize: str = "random-tree", timing: bool = False, jobs: int = 1) -> list[RunRecord]:
    """One record per (size, algo, trial); trial t uses seed ``base_seed + t``."""
    for a in algos:
        resolve_model(a, model)
    tasks = [(family, size, a, p, base_seed + t, ladder_mode, realize, timing)
             for size in sizes for a in algos for t in range(trials)]
    for size in sizes:
        instance_spec(family, size, 0, ladder_mode, realize)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_trial, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_trial(t) for t in tasks]


def summarize(records: Sequence[RunRecord]) -> list[dict]:
    cells: OrderedDict = OrderedDict()
    for r in records:
        cells.setdefault((r.family, r.n, r.m, r.algo, r.model, r.p), []).append(r)
    out = []
    for (family, n, m, algo, model, p), rs in cells.items():
        qs = [r.queries for r in rs]
        mean = statistics.fmean(qs)
        std = statistics.stdev(qs) if len(qs) > 1 else 0.0
        ln_n = math.log(n) if n > 1 else float("nan")
        out.append(dict(
            family=family, n=n, m=m, algo=algo, model=model, p=p, trials=len(rs),
            mean_queries=mean, std_queries=std,
            success_rate=sum(r.success for r in rs) / len(rs),
            q_per_m=mean / m if m else float("nan"),
            q_per_m_ln_n=mean / (m * ln_n) if m else float("nan"),
            q_per_n_ln_n=mean / (n * ln_n),
        ))
    return out


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".6g")
    return str(v)


def write_csv(fh, records: Sequence[RunRecord], summary: bool = True) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.row())
    if summary:
        fh.write("# summary\n")
        fh.write("# " + ",".join(SUMMARY_COLUMNS) + "\n")
        for cell in summarize(records):
            fh.write("# " + ",".join(_fmt(cell[c]) for c in SUMMARY_COLUMNS) + "\n")


def read_bench(text: str) -> tuple[list[dict], list[dict]]:
    rows, summary_lines = [], []
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            summary_lines.append(line[2:])
        elif line.strip():
            body.append(line)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    summary = []
    if len(summary_lines) >= 2:
        summary = list(csv.DictReader(io.StringIO("\n".join(summary_lines[1:]))))
    return rows, summary
