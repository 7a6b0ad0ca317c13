"""
Per-vertex ordering scores.

All functions are pure over an immutable Graph. Batched BFS work is split into
row blocks whose size depends only on n, so results do not depend on n_jobs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
import scipy.sparse as sp
from joblib import Parallel, delayed

from graphcolor.config import get_settings
from graphcolor.graph_core import Graph, block_rows, distance_block
from graphcolor.schemas import PageRankParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricVector:
    metric: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if not np.all(np.isfinite(values)):
            raise ValueError(f"metric {self.metric!r} produced non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)


def _blocks(n_rows: int, n_cols: int, budget: int | None) -> list[tuple[int, int]]:
    size = block_rows(n_cols, budget or get_settings().BFS_BLOCK_ELEMENTS)
    return [(s, min(s + size, n_rows)) for s in range(0, n_rows, size)]


def _parallel(n_jobs: int):
    return Parallel(n_jobs=n_jobs, prefer="threads")


def degree(g: Graph) -> MetricVector:
    return MetricVector("degree", g.degrees().astype(np.float64))


def k_neighborhood(g: Graph, k: int, block_budget: int | None = None, n_jobs: int = 1) -> MetricVector:
    """
    |{u : d(v,u) = k}| for every v.

    Ball sizes come from the sparsity pattern of (A + I)^j, row block by row
    block; the distance-k shell is ball(k) - ball(k-1). k = 1 reproduces degree.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    name = "degree" if k == 1 else f"nbor{k}"
    if g.n == 0:
        return MetricVector(name, np.zeros(0))
    step = (g.csr + sp.identity(g.n, format="csr")).tocsr()
    step.data[:] = 1.0

    def _shell(start: int, stop: int) -> np.ndarray:
        reach = step[start:stop]
        inner = np.ones(stop - start, dtype=np.int64)
        for _ in range(1, k):
            inner = np.diff(reach.indptr)
            reach = reach @ step
            reach.data[:] = 1.0
        return np.diff(reach.indptr) - inner

    parts = _parallel(n_jobs)(delayed(_shell)(s, e) for s, e in _blocks(g.n, g.n, block_budget))
    return MetricVector(name, np.concatenate(parts).astype(np.float64))


def _distance_sums(g: Graph, start: int, stop: int) -> np.ndarray:
    dist = distance_block(g, np.arange(start, stop))
    dist[~np.isfinite(dist)] = 0.0
    return dist.sum(axis=1)


def closeness_exact(g: Graph, block_budget: int | None = None, n_jobs: int = 1) -> MetricVector:
    """1 / sum of distances to every reachable vertex; isolated vertices get 0."""
    if g.n == 0:
        return MetricVector("closeness", np.zeros(0))
    parts = _parallel(n_jobs)(
        delayed(_distance_sums)(g, s, e) for s, e in _blocks(g.n, g.n, block_budget)
    )
    sums = np.concatenate(parts)
    values = np.divide(1.0, sums, out=np.zeros_like(sums), where=sums > 0)
    return MetricVector("closeness", values)


def sample_sources(n: int, samples: int, seed: int) -> np.ndarray:
    """Sorted distinct sources drawn from PCG64(seed); all vertices when samples >= n."""
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if samples >= n:
        return np.arange(n)
    rng = np.random.Generator(np.random.PCG64(seed))
    return np.sort(rng.choice(n, size=samples, replace=False))


def closeness_sampled(
    g: Graph,
    samples: int,
    seed: int,
    block_budget: int | None = None,
    n_jobs: int = 1,
) -> MetricVector:
    """
    Sampling estimate of closeness.

    For each v the distance sum from the sampled sources u != v that reach it is
    scaled up by (component size - 1) / (number of such sources). A sampled v
    never counts itself. With every vertex sampled this is exactly
    closeness_exact.
    """
    sources = sample_sources(g.n, samples, seed)
    if g.n == 0:
        return MetricVector("closeness", np.zeros(0))

    def _partial(start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
        dist = distance_block(g, sources[start:stop])
        finite = np.isfinite(dist)
        dist[~finite] = 0.0
        return dist.sum(axis=0), finite.sum(axis=0)

    parts = _parallel(n_jobs)(delayed(_partial)(s, e) for s, e in _blocks(len(sources), g.n, block_budget))
    totals = np.zeros(g.n)
    reached = np.zeros(g.n)
    # fixed block order keeps the reduction bit-identical for any n_jobs
    for part_sum, part_reached in parts:
        totals += part_sum
        reached += part_reached

    reached[sources] -= 1.0
    scale = np.divide(g.component_sizes() - 1.0, reached, out=np.zeros(g.n), where=reached > 0)
    estimate = scale * totals
    values = np.divide(1.0, estimate, out=np.zeros(g.n), where=estimate > 0)
    logger.debug("CLOSENESS SAMPLED | n=%d samples=%d seed=%d", g.n, len(sources), seed)
    return MetricVector("closeness", values)


def clustering_coefficient(g: Graph, block_budget: int | None = None) -> MetricVector:
    """
    Edges among v's neighbors over d_v (d_v - 1), i.e. the unordered edge
    count over ordered pairs, so values lie in [0, 0.5]. d_v <= 1 -> 0.
    """
    if g.n == 0:
        return MetricVector("clustering", np.zeros(0))
    adj = g.csr
    triangles = np.zeros(g.n)
    for start, stop in _blocks(g.n, g.n, block_budget):
        rows = adj[start:stop]
        # (A^2 ∘ A)[v, u] = common neighbors of adjacent v, u; each neighbor edge counted twice per row
        triangles[start:stop] = np.asarray((rows @ adj).multiply(rows).sum(axis=1)).ravel() / 2.0
    deg = g.degrees().astype(np.float64)
    denom = deg * (deg - 1.0)
    values = np.divide(triangles, denom, out=np.zeros(g.n), where=deg > 1)
    return MetricVector("clustering", values)


def pagerank_iterates(g: Graph, params: PageRankParams) -> Iterator[np.ndarray]:
    """Yield pr_1 .. pr_iterations of the synchronous power iteration started at 1/|V|."""
    n = g.n
    if n == 0:
        return
    deg = g.degrees().astype(np.float64)
    # isolated vertices have no outflow
    inv_deg = np.divide(1.0, deg, out=np.zeros(n), where=deg > 0)
    teleport = (1.0 - params.alpha) / n
    pr = np.full(n, 1.0 / n)
    for _ in range(params.iterations):
        pr = teleport + params.alpha * (g.csr @ (pr * inv_deg))
        yield pr


def pagerank(g: Graph, params: PageRankParams | None = None) -> MetricVector:
    if params is None:
        s = get_settings()
        params = PageRankParams(alpha=s.PAGERANK_ALPHA, iterations=s.PAGERANK_ITERATIONS)
    pr = np.zeros(g.n)
    for pr in pagerank_iterates(g, params):
        pass
    return MetricVector("pagerank", pr)
