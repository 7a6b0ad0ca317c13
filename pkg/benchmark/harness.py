"""
Benchmark protocol: per-graph color counts and ratios against a baseline,
geometric-mean aggregates, and the weight grid search.

Each graph is an independent joblib task that computes its metric vectors once
and sweeps every strategy; results come back in corpus order, so reports do
not depend on the worker count.
"""

from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterator, Literal, Sequence

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel

from graphcolor.coloring import greedy_color
from graphcolor.config import Settings, get_settings
from graphcolor.exact import chromatic_exact, solve_cached
from graphcolor.graph_core import Graph
from graphcolor.ordering import MetricTable
from graphcolor.schemas import (
    METRIC_STRATEGIES,
    OrderingSpec,
    PageRankParams,
    Strategy,
    WeightVector,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
Baseline = Literal["degree", "optimal"]


@dataclass(frozen=True)
class CorpusGraph:
    name: str
    graph: Graph
    path: Path | None = None
    chi: int | None = None  # proven chromatic number, when known


class BenchConfig(BaseModel):
    """Everything that influences the numbers in a report (echoed into it)."""

    pagerank_alpha: float
    pagerank_iterations: int
    closeness_mode: str
    closeness_samples: int
    closeness_seed: int
    random_seeds: list[int]
    random_averaging: str
    exact_budget: int
    record_timings: bool = False

    @classmethod
    def from_settings(cls, settings: Settings | None = None, **overrides) -> "BenchConfig":
        s = settings or get_settings()
        values = dict(
            pagerank_alpha=s.PAGERANK_ALPHA,
            pagerank_iterations=s.PAGERANK_ITERATIONS,
            closeness_mode=s.CLOSENESS_MODE,
            closeness_samples=s.CLOSENESS_SAMPLES,
            closeness_seed=s.CLOSENESS_SEED,
            random_seeds=list(s.RANDOM_SEEDS),
            random_averaging=s.RANDOM_AVERAGING,
            exact_budget=s.EXACT_NODE_BUDGET,
            record_timings=s.RECORD_TIMINGS,
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @classmethod
    def for_protocol(cls, baseline: Baseline, settings: Settings | None = None, **overrides) -> "BenchConfig":
        """
        Config for one evaluation protocol. The degree-baseline protocol
        (10^4-10^5 vertex graphs) samples closeness unless closeness_mode is given.
        """
        if baseline == "degree" and overrides.get("closeness_mode") is None:
            overrides["closeness_mode"] = "sampled"
        return cls.from_settings(settings, **overrides)


class StrategyResult(BaseModel):
    strategy: str
    colors: float  # mean over seeds for random
    ratio: float
    runtime_ms: float | None = None


class GraphResult(BaseModel):
    graph: str
    n: int
    m: int
    baseline_colors: int
    results: list[StrategyResult]

    def result_of(self, strategy: str) -> StrategyResult:
        for r in self.results:
            if r.strategy == strategy:
                return r
        raise KeyError(strategy)

    def ratio_of(self, strategy: str) -> float:
        return self.result_of(strategy).ratio

    def colors_of(self, strategy: str) -> float:
        return self.result_of(strategy).colors


class BenchReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    baseline: Baseline
    strategies: list[str]
    config: BenchConfig
    per_graph: list[GraphResult]
    aggregates: dict[str, float]
    excluded: list[str] = []

    def recompute_geomean(self, strategy: str) -> float:
        return geometric_mean([g.ratio_of(strategy) for g in self.per_graph])


class GridPoint(BaseModel):
    weights: tuple[float, ...]
    geomean: float


class GridSearchResult(BaseModel):
    best_weights: WeightVector
    best_geomean: float
    grid_step: float
    evaluations: int
    baseline: Baseline
    graphs: int
    trace: list[GridPoint] | None = None


def geometric_mean(xs: Sequence[float]) -> float:
    """exp(mean(ln x)); raises ValueError on empty or nonpositive input."""
    values = np.asarray(list(xs), dtype=np.float64)
    if len(values) == 0:
        raise ValueError("geometric mean of an empty sequence")
    if not np.all(values > 0):
        raise ValueError(f"geometric mean needs positive inputs, got min {values.min()!r}")
    mean = float(np.exp(np.mean(np.log(values))))
    # rounding in log space may step just outside the data range
    return min(max(mean, float(values.min())), float(values.max()))


def _metric_table(g: Graph, config: BenchConfig) -> MetricTable:
    return MetricTable(
        g,
        pagerank_params=PageRankParams(alpha=config.pagerank_alpha, iterations=config.pagerank_iterations),
        closeness_mode=config.closeness_mode,
        closeness_samples=config.closeness_samples,
        closeness_seed=config.closeness_seed,
    )


def _expand(spec: OrderingSpec, config: BenchConfig) -> list[OrderingSpec]:
    if spec.strategy == Strategy.RANDOM and spec.seed is None:
        return [spec.model_copy(update={"seed": seed}) for seed in config.random_seeds]
    return [spec]


def _baseline_colors(cg: CorpusGraph, table: MetricTable, baseline: Baseline) -> int | None:
    if baseline == "optimal":
        return cg.chi
    order = table.permutation(OrderingSpec(strategy=Strategy.DEGREE))
    return greedy_color(cg.graph, order, 1).num_colors


def _sweep_graph(
    cg: CorpusGraph, strategies: Sequence[OrderingSpec], baseline: Baseline, config: BenchConfig
) -> GraphResult | None:
    g = cg.graph
    table = _metric_table(g, config)
    base = _baseline_colors(cg, table, baseline)
    if not base:
        return None
    results = []
    for spec in strategies:
        counts = []
        start = time.perf_counter()
        for variant in _expand(spec, config):
            counts.append(greedy_color(g, table.permutation(variant), 1).num_colors)
        elapsed = (time.perf_counter() - start) * 1000.0
        colors = float(np.mean(counts))
        if config.random_averaging == "ratios":
            ratio = float(np.mean([c / base for c in counts]))
        else:
            ratio = colors / base
        results.append(
            StrategyResult(
                strategy=spec.label,
                colors=colors,
                ratio=ratio,
                runtime_ms=round(elapsed, 3) if config.record_timings else None,
            )
        )
    return GraphResult(graph=cg.name, n=g.n, m=g.m, baseline_colors=base, results=results)


def _check_labels(strategies: Sequence[OrderingSpec]) -> list[str]:
    labels = [s.label for s in strategies]
    dupes = sorted({x for x in labels if labels.count(x) > 1})
    if dupes:
        raise ValueError(f"strategies share report labels: {dupes}")
    return labels


def run_benchmark(
    graphs: Sequence[CorpusGraph],
    strategies: Sequence[OrderingSpec],
    baseline: Baseline = "degree",
    config: BenchConfig | None = None,
    n_jobs: int | None = None,
) -> BenchReport:
    """
    Color every graph under every strategy and compare against the baseline.

    With ``baseline="optimal"`` graphs lacking a proven chi are left out of
    ``per_graph`` and the aggregates, and listed in ``excluded``.
    """
    if not graphs:
        raise ValueError("benchmark corpus is empty")
    if baseline not in ("degree", "optimal"):
        raise ValueError(f"baseline must be 'degree' or 'optimal', got {baseline!r}")
    config = config or BenchConfig.from_settings()
    labels = _check_labels(strategies)
    n_jobs = get_settings().effective_threads if n_jobs is None else n_jobs
    logger.info(
        "BENCH START | graphs=%d strategies=%s baseline=%s n_jobs=%d",
        len(graphs), ",".join(labels), baseline, n_jobs,
    )

    swept = Parallel(n_jobs=n_jobs)(
        delayed(_sweep_graph)(cg, strategies, baseline, config) for cg in graphs
    )

    per_graph, excluded = [], []
    for cg, result in zip(graphs, swept):
        if result is None:
            logger.warning("BENCH EXCLUDED | graph=%s reason=no %s baseline", cg.name, baseline)
            excluded.append(cg.name)
            continue
        logger.info("BENCH GRAPH | name=%s n=%d m=%d base=%d", cg.name, result.n, result.m, result.baseline_colors)
        per_graph.append(result)

    aggregates = {}
    if per_graph:
        for label in labels:
            aggregates[label] = geometric_mean([r.ratio_of(label) for r in per_graph])
    report = BenchReport(
        baseline=baseline,
        strategies=labels,
        config=config,
        per_graph=per_graph,
        aggregates=aggregates,
        excluded=excluded,
    )
    logger.info(
        "BENCH COMPLETE | graphs=%d excluded=%d %s",
        len(per_graph), len(excluded), " ".join(f"{k}={v:.4f}" for k, v in aggregates.items()),
    )
    return report


def _solve_one(cg: CorpusGraph, budget: int, time_limit: float | None) -> CorpusGraph:
    if cg.chi is not None:
        return cg
    if cg.path is not None:
        result = solve_cached(cg.path, cg.graph, budget=budget, time_limit=time_limit)
    else:
        result = chromatic_exact(cg.graph, budget=budget, time_limit=time_limit)
    return cg if result.timed_out else replace(cg, chi=result.chi)


def with_exact_baselines(
    graphs: Sequence[CorpusGraph],
    budget: int | None = None,
    time_limit: float | None = None,
    n_jobs: int | None = None,
) -> list[CorpusGraph]:
    """Fill ``chi`` for graphs that lack it; budget exhaustion leaves it None."""
    s = get_settings()
    budget = s.EXACT_NODE_BUDGET if budget is None else budget
    time_limit = s.EXACT_TIME_LIMIT_S if time_limit is None else time_limit
    n_jobs = s.effective_threads if n_jobs is None else n_jobs
    solved = Parallel(n_jobs=n_jobs)(delayed(_solve_one)(cg, budget, time_limit) for cg in graphs)
    for cg in solved:
        if cg.chi is None:
            logger.warning("EXACT UNSOLVED | graph=%s budget=%d", cg.name, budget)
    return list(solved)


def _compositions(units: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (units,)
        return
    for first in range(units + 1):
        for rest in _compositions(units - first, parts - 1):
            yield (first,) + rest


def grid_points(step: float) -> np.ndarray:
    """All six-component weight vectors on the step grid summing to 1, in ascending lexicographic order."""
    if step <= 0 or step > 1:
        raise ValueError(f"grid step must lie in (0, 1], got {step}")
    units = round(1.0 / step)
    if abs(units * step - 1.0) > 1e-9:
        raise ValueError(f"1/step must be an integer, got step={step}")
    return np.array(list(_compositions(units, len(METRIC_STRATEGIES))), dtype=np.float64) / units


def order_digest(order: np.ndarray) -> bytes:
    """Fixed-size key for a permutation, independent of n."""
    return hashlib.blake2b(np.ascontiguousarray(order, dtype=np.int64).tobytes(), digest_size=16).digest()


def _grid_ratios(
    cg: CorpusGraph, points: np.ndarray, baseline: Baseline, config: BenchConfig
) -> np.ndarray | None:
    g = cg.graph
    table = _metric_table(g, config)
    base = _baseline_colors(cg, table, baseline)
    if not base:
        return None
    # many grid points share a permutation; color each distinct one once
    seen: dict[bytes, int] = {}
    colors = np.empty(len(points))
    for i, w in enumerate(points):
        order = table.weighted_permutation(w)
        key = order_digest(order)
        if key not in seen:
            seen[key] = greedy_color(g, order, 1).num_colors
        colors[i] = seen[key]
    logger.debug("GRID GRAPH | name=%s points=%d distinct_orders=%d", cg.name, len(points), len(seen))
    return colors / base


def weight_grid_search(
    graphs: Sequence[CorpusGraph],
    step: float | None = None,
    baseline: Baseline = "optimal",
    config: BenchConfig | None = None,
    n_jobs: int | None = None,
    keep_trace: bool = False,
) -> GridSearchResult:
    """
    Geometric-mean ratio of the weighted ordering at every grid point; the
    minimum wins, ties going to the lexicographically smallest weights.
    """
    if not graphs:
        raise ValueError("benchmark corpus is empty")
    s = get_settings()
    step = s.GRID_STEP if step is None else step
    config = config or BenchConfig.from_settings()
    n_jobs = s.effective_threads if n_jobs is None else n_jobs
    points = grid_points(step)
    logger.info("GRID START | graphs=%d step=%s points=%d baseline=%s", len(graphs), step, len(points), baseline)

    per_graph = Parallel(n_jobs=n_jobs)(
        delayed(_grid_ratios)(cg, points, baseline, config) for cg in graphs
    )
    kept = []
    for cg, ratios in zip(graphs, per_graph):
        if ratios is None:
            logger.warning("BENCH EXCLUDED | graph=%s reason=no %s baseline", cg.name, baseline)
            continue
        kept.append(ratios)
    if not kept:
        raise ValueError(f"no graph in the corpus has a {baseline} baseline")

    log_means = np.log(np.vstack(kept)).mean(axis=0)
    # argmin returns the first minimum, i.e. the lexicographically smallest weights
    best = int(np.argmin(log_means))
    result = GridSearchResult(
        best_weights=WeightVector.from_sequence(points[best]),
        best_geomean=float(np.exp(log_means[best])),
        grid_step=step,
        evaluations=len(points),
        baseline=baseline,
        graphs=len(kept),
        trace=[GridPoint(weights=tuple(p), geomean=float(np.exp(v))) for p, v in zip(points.tolist(), log_means)]
        if keep_trace
        else None,
    )
    logger.info(
        "GRID COMPLETE | best=%s geomean=%.4f evaluations=%d",
        ",".join(f"{w:g}" for w in result.best_weights.as_tuple()), result.best_geomean, result.evaluations,
    )
    return result
