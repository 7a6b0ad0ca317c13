"""
Seeded synthetic graphs for tests and offline desk-scale runs.

Every generator is deterministic in its arguments. ``write_synthetic_corpus``
materializes a mixed corpus of Matrix Market files, so the benchmark can be
exercised without downloading SuiteSparse.
"""

import logging
from pathlib import Path

import numpy as np
from scipy.spatial import cKDTree

from graphcolor.graph_core import Graph, format_matrix_market, from_edge_list

logger = logging.getLogger(__name__)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    iu, ju = np.triu_indices(n, k=1)
    keep = _rng(seed).random(len(iu)) < p
    return from_edge_list(n, np.column_stack((iu[keep], ju[keep])))


def random_geometric(n: int, radius: float, seed: int) -> Graph:
    """Points uniform in the unit square, joined when at most ``radius`` apart."""
    points = _rng(seed).random((n, 2))
    pairs = cKDTree(points).query_pairs(radius, output_type="ndarray")
    return from_edge_list(n, pairs)


def path(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs n >= 3, got {n}")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    return from_edge_list(n, np.column_stack((iu, ju)))


def star(leaves: int) -> Graph:
    """Center 0 joined to vertices 1..leaves."""
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def crown(n: int) -> Graph:
    """K_{n,n} minus a perfect matching: u_i = i, w_i = n + i, u_i ~ w_j for i != j."""
    return from_edge_list(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def crown_interleaved_order(n: int) -> np.ndarray:
    """u_0, w_0, u_1, w_1, ...; first-fit over it spends n colors on crown(n)."""
    return np.column_stack((np.arange(n), n + np.arange(n))).ravel()


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def write_synthetic_corpus(
    out_dir: str | Path,
    count: int = 30,
    n_min: int = 100,
    n_max: int = 500,
    seed: int = 42,
) -> list[Path]:
    """
    Write ``count`` graphs alternating between sparse G(n,p) and random
    geometric graphs with average degree about 8.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = _rng(seed)
    written = []
    for i in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        sub_seed = int(rng.integers(0, 2**31 - 1))
        if i % 2 == 0:
            g, kind = gnp(n, min(1.0, 8.0 / max(n - 1, 1)), sub_seed), "gnp"
        else:
            g, kind = random_geometric(n, float(np.sqrt(8.0 / (np.pi * n))), sub_seed), "geo"
        target = out_dir / f"{kind}_{i:03d}.mtx"
        target.write_text(format_matrix_market(g, comment=f"{kind} n={n} seed={sub_seed}"))
        written.append(target)
    logger.info("SYNTHETIC CORPUS | dir=%s graphs=%d", out_dir, len(written))
    return written
