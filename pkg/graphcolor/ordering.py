"""
Metric vectors -> vertex permutations.

Single-metric orders sort by score descending (ties by ascending vertex id),
random orders shuffle with PCG64, and combined orders sort a weighted sum of
z-scored metrics.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from graphcolor import metrics
from graphcolor.config import Settings, get_settings
from graphcolor.graph_core import Graph
from graphcolor.metrics import MetricVector
from graphcolor.schemas import METRIC_STRATEGIES, OrderingSpec, PageRankParams, Strategy, WeightVector

logger = logging.getLogger(__name__)


def order_descending(scores: MetricVector | np.ndarray) -> np.ndarray:
    values = scores.values if isinstance(scores, MetricVector) else np.asarray(scores, dtype=np.float64)
    # stable sort on the negated scores keeps equal scores in ascending id order
    return np.argsort(-values, kind="stable")


def is_permutation(order, n: int) -> bool:
    order = np.asarray(order)
    if order.shape != (n,):
        return False
    if n == 0:
        return True
    if not np.issubdtype(order.dtype, np.integer) or order.min() < 0 or order.max() >= n:
        return False
    seen = np.zeros(n, dtype=bool)
    seen[order] = True
    return bool(seen.all())


def zscore(scores: MetricVector) -> MetricVector:
    """(x - mean) / population std; a constant vector maps to all zeros."""
    x = scores.values
    if len(x) == 0 or np.ptp(x) == 0.0:
        return MetricVector(scores.metric, np.zeros(len(x)))
    std = x.std()
    if std == 0.0:
        return MetricVector(scores.metric, np.zeros(len(x)))
    return MetricVector(scores.metric, (x - x.mean()) / std)


def combine(normalized: Sequence[MetricVector], weights: WeightVector) -> MetricVector:
    """Weighted sum of six normalized vectors, in degree, nbor2, nbor3, closeness, clustering, pagerank order."""
    if len(normalized) != 6:
        raise ValueError(f"expected 6 metric vectors, got {len(normalized)}")
    lengths = {len(v) for v in normalized}
    if len(lengths) != 1:
        raise ValueError(f"metric vectors differ in length: {sorted(lengths)}")
    stacked = np.column_stack([v.values for v in normalized]) if lengths != {0} else np.zeros((0, 6))
    return MetricVector("combined", stacked @ np.asarray(weights.as_tuple()))


def random_order(n: int, seed: int) -> np.ndarray:
    """Fisher-Yates shuffle of 0..n-1 driven by numpy's PCG64 bit generator."""
    return np.random.Generator(np.random.PCG64(seed)).permutation(n)


class MetricTable:
    """
    Lazily computed metric vectors of one graph, shared by every strategy.

    Each raw vector and its z-score is computed at most once.
    """

    def __init__(
        self,
        g: Graph,
        pagerank_params: PageRankParams | None = None,
        closeness_mode: str | None = None,
        closeness_samples: int | None = None,
        closeness_seed: int | None = None,
        n_jobs: int = 1,
        settings: Settings | None = None,
    ):
        s = settings or get_settings()
        self.graph = g
        self.pagerank_params = pagerank_params or PageRankParams(
            alpha=s.PAGERANK_ALPHA, iterations=s.PAGERANK_ITERATIONS
        )
        self.closeness_mode = closeness_mode or s.CLOSENESS_MODE
        self.closeness_samples = closeness_samples or s.CLOSENESS_SAMPLES
        self.closeness_seed = s.CLOSENESS_SEED if closeness_seed is None else closeness_seed
        self.n_jobs = n_jobs
        self._raw: dict[tuple, MetricVector] = {}
        self._z: dict[tuple, MetricVector] = {}
        self._z_matrix: np.ndarray | None = None

    def _key(self, strategy: Strategy, mode: str | None, samples: int | None) -> tuple:
        if strategy != Strategy.CLOSENESS:
            return (strategy,)
        mode = mode or self.closeness_mode
        if mode == "exact":
            return (strategy, "exact")
        return (strategy, "sampled", samples or self.closeness_samples, self.closeness_seed)

    def _compute(self, key: tuple) -> MetricVector:
        g = self.graph
        strategy = key[0]
        if strategy == Strategy.DEGREE:
            return metrics.degree(g)
        if strategy == Strategy.NBOR2:
            return metrics.k_neighborhood(g, 2, n_jobs=self.n_jobs)
        if strategy == Strategy.NBOR3:
            return metrics.k_neighborhood(g, 3, n_jobs=self.n_jobs)
        if strategy == Strategy.CLUSTERING:
            return metrics.clustering_coefficient(g)
        if strategy == Strategy.PAGERANK:
            return metrics.pagerank(g, self.pagerank_params)
        if key[1] == "exact":
            return metrics.closeness_exact(g, n_jobs=self.n_jobs)
        return metrics.closeness_sampled(g, samples=key[2], seed=key[3], n_jobs=self.n_jobs)

    def vector(self, strategy: Strategy, mode: str | None = None, samples: int | None = None) -> MetricVector:
        if strategy not in METRIC_STRATEGIES:
            raise ValueError(f"{strategy.value!r} is not a single-metric strategy")
        key = self._key(strategy, mode, samples)
        if key not in self._raw:
            self._raw[key] = self._compute(key)
            logger.debug("METRIC | strategy=%s key=%s n=%d", strategy.value, key[1:], self.graph.n)
        return self._raw[key]

    def normalized(self, strategy: Strategy) -> MetricVector:
        key = self._key(strategy, None, None)
        if key not in self._z:
            self._z[key] = zscore(self.vector(strategy))
        return self._z[key]

    def normalized_all(self) -> list[MetricVector]:
        return [self.normalized(s) for s in METRIC_STRATEGIES]

    def z_matrix(self) -> np.ndarray:
        """(n, 6) matrix of z-scores, columns in WeightVector order."""
        if self._z_matrix is None:
            cols = [v.values for v in self.normalized_all()]
            self._z_matrix = np.column_stack(cols) if self.graph.n else np.zeros((0, 6))
        return self._z_matrix

    def permutation(self, spec: OrderingSpec) -> np.ndarray:
        strategy = spec.strategy
        if strategy in METRIC_STRATEGIES:
            return order_descending(self.vector(strategy, spec.closeness_mode, spec.samples))
        if strategy == Strategy.RANDOM:
            if spec.seed is None:
                raise ValueError("random ordering needs a seed, e.g. random:seed=42")
            return random_order(self.graph.n, spec.seed)
        weights = WeightVector.uniform() if strategy == Strategy.UNIFORM else spec.weights
        return order_descending(combine(self.normalized_all(), weights))

    def weighted_permutation(self, weights: Sequence[float] | np.ndarray) -> np.ndarray:
        """Fast path for weight search: skips WeightVector validation."""
        return order_descending(self.z_matrix() @ np.asarray(weights, dtype=np.float64))


def metric_by_name(table: MetricTable, name: str) -> MetricVector:
    """Resolve ``degree``/``nbor2``/.../``pagerank`` to a raw vector (used by the metrics CLI)."""
    try:
        strategy = Strategy(name)
    except ValueError:
        raise ValueError(f"unknown metric {name!r}") from None
    return table.vector(strategy)

