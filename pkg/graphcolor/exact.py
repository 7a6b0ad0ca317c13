"""
Exact chromatic number by DSATUR branch-and-bound, plus a brute-force oracle.

Upper bound: greedy over the degree order. Lower bound: a greedily grown
clique, whose vertices are pre-colored 0..q-1. The search branches on the
uncolored vertex of highest saturation (ties: most uncolored neighbors, then
smallest id), tries existing colors, then at most one new color.
"""

from __future__ import annotations

import json
import logging
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from graphcolor.coloring import Coloring, greedy_color
from graphcolor.config import get_settings
from graphcolor.graph_core import Graph
from graphcolor.metrics import degree
from graphcolor.ordering import order_descending
from graphcolor.schemas import ChiCache

logger = logging.getLogger(__name__)

BRUTE_FORCE_MAX_N = 12
_CLOCK_CHECK_EVERY = 1024


@dataclass(frozen=True)
class ExactResult:
    chi: int
    witness: Coloring
    nodes_explored: int
    timed_out: bool
    lower_bound: int = 0


def greedy_clique(g: Graph) -> list[int]:
    """Largest clique found by growing from every vertex, always adding the highest-degree candidate."""
    adjacency = [set(nb) for nb in g.adjacency_lists]
    deg = g.degrees().tolist()
    rank = {v: i for i, v in enumerate(order_descending(degree(g)).tolist())}
    best: list[int] = []
    for seed in rank:
        if deg[seed] + 1 <= len(best):
            continue
        clique = [seed]
        candidates = set(adjacency[seed])
        while candidates:
            u = min(candidates, key=rank.__getitem__)
            clique.append(u)
            candidates &= adjacency[u]
        if len(clique) > len(best):
            best = clique
    return best


class _DsaturSearch:
    def __init__(self, g: Graph, upper: Coloring, clique: list[int], budget: int, time_limit: float | None):
        self.n = g.n
        self.adjacency = g.adjacency_lists
        self.budget = budget
        self.deadline = time.perf_counter() + time_limit if time_limit else None
        self.lower = len(clique)
        self.best = upper.num_colors
        self.best_colors = upper.colors.tolist()
        self.colors = [-1] * self.n
        # conflicts[v][c] = neighbors of v currently holding color c
        self.conflicts = [[0] * (self.best + 1) for _ in range(self.n)]
        self.saturation = [0] * self.n
        self.free_degree = [len(nb) for nb in self.adjacency]
        self.nodes = 0
        self.timed_out = False
        self.finished = False
        for c, v in enumerate(clique):
            self._assign(v, c)

    def _assign(self, v: int, c: int) -> None:
        self.colors[v] = c
        conflicts, saturation, free_degree = self.conflicts, self.saturation, self.free_degree
        for u in self.adjacency[v]:
            row = conflicts[u]
            if row[c] == 0:
                saturation[u] += 1
            row[c] += 1
            free_degree[u] -= 1

    def _unassign(self, v: int, c: int) -> None:
        self.colors[v] = -1
        conflicts, saturation, free_degree = self.conflicts, self.saturation, self.free_degree
        for u in self.adjacency[v]:
            row = conflicts[u]
            row[c] -= 1
            if row[c] == 0:
                saturation[u] -= 1
            free_degree[u] += 1

    def _select(self) -> int:
        best_v, best_key = -1, (-1, -1)
        colors, saturation, free_degree = self.colors, self.saturation, self.free_degree
        for v in range(self.n):
            if colors[v] == -1:
                key = (saturation[v], free_degree[v])
                if key > best_key:
                    best_v, best_key = v, key
        return best_v

    def _out_of_budget(self) -> bool:
        if self.nodes > self.budget:
            return True
        if self.deadline is not None and self.nodes % _CLOCK_CHECK_EVERY == 0:
            return time.perf_counter() > self.deadline
        return False

    def run(self) -> None:
        colored = sum(1 for c in self.colors if c != -1)
        if self.best > self.lower:
            self._search(self.lower, colored)

    def _search(self, used: int, colored: int) -> None:
        if used >= self.best:
            return
        self.nodes += 1
        if self._out_of_budget():
            self.timed_out = True
            return
        if colored == self.n:
            self.best = used
            self.best_colors = list(self.colors)
            logger.debug("EXACT IMPROVED | colors=%d nodes=%d", used, self.nodes)
            if used <= self.lower:
                self.finished = True
            return
        v = self._select()
        row = self.conflicts[v]
        for c in range(used):
            if row[c] == 0:
                self._assign(v, c)
                self._search(used, colored + 1)
                self._unassign(v, c)
                if self.timed_out or self.finished:
                    return
        if used + 1 < self.best:
            self._assign(v, used)
            self._search(used + 1, colored + 1)
            self._unassign(v, used)


def chromatic_exact(g: Graph, budget: int | None = None, time_limit: float | None = None) -> ExactResult:
    """Exact chi, or the best upper bound with ``timed_out=True`` when the node/time budget runs out."""
    s = get_settings()
    budget = s.EXACT_NODE_BUDGET if budget is None else budget
    time_limit = s.EXACT_TIME_LIMIT_S if time_limit is None else time_limit
    if g.n == 0:
        return ExactResult(chi=0, witness=Coloring.from_colors([]), nodes_explored=0, timed_out=False)

    upper = greedy_color(g, order_descending(degree(g)), 1)
    clique = greedy_clique(g)
    search = _DsaturSearch(g, upper, clique, budget, time_limit)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * g.n + 1000))
    try:
        search.run()
    finally:
        sys.setrecursionlimit(old_limit)

    result = ExactResult(
        chi=search.best,
        witness=Coloring.from_colors(search.best_colors),
        nodes_explored=search.nodes,
        timed_out=search.timed_out,
        lower_bound=len(clique),
    )
    logger.info(
        "EXACT DONE | n=%d m=%d chi=%d lower=%d upper=%d nodes=%d timed_out=%s",
        g.n, g.m, result.chi, len(clique), upper.num_colors, result.nodes_explored, result.timed_out,
    )
    return result


def brute_force_chromatic(g: Graph) -> int:
    """Smallest k admitting a proper k-coloring, by exhaustive assignment search. Refuses n > 12."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force refused for n={g.n} > {BRUTE_FORCE_MAX_N}")
    if g.n == 0:
        return 0
    earlier = [[u for u in nb if u < v] for v, nb in enumerate(g.adjacency_lists)]
    colors = [-1] * g.n

    def extend(v: int, k: int) -> bool:
        if v == g.n:
            return True
        for c in range(k):
            if all(colors[u] != c for u in earlier[v]):
                colors[v] = c
                if extend(v + 1, k):
                    return True
        colors[v] = -1
        return False

    for k in range(1 if g.m == 0 else 2, g.n + 1):
        if extend(0, k):
            return k
    return g.n


def chi_cache_path(graph_path: str | Path) -> Path:
    graph_path = Path(graph_path)
    return graph_path.with_name(f"{graph_path.stem}.chi.json")


def load_chi_cache(graph_path: str | Path, g: Graph) -> ExactResult | None:
    """Cached result for this graph file, or None when missing or stale (n/m mismatch)."""
    path = chi_cache_path(graph_path)
    if not path.is_file():
        return None
    try:
        cached = ChiCache.model_validate_json(path.read_text())
    except ValueError as e:
        logger.warning("Ignoring unreadable chi cache %s: %s", path, e)
        return None
    if cached.n != g.n or cached.m != g.m:
        logger.warning("Ignoring stale chi cache %s (n=%d m=%d, graph n=%d m=%d)", path, cached.n, cached.m, g.n, g.m)
        return None
    return ExactResult(
        chi=cached.chi,
        witness=Coloring.from_colors(cached.colors),
        nodes_explored=cached.nodes_explored,
        timed_out=cached.timed_out,
        lower_bound=cached.lower_bound,
    )


def save_chi_cache(graph_path: str | Path, g: Graph, result: ExactResult, budget: int) -> Path:
    path = chi_cache_path(graph_path)
    record = ChiCache(
        graph=Path(graph_path).stem,
        n=g.n,
        m=g.m,
        chi=result.chi,
        colors=result.witness.colors.tolist(),
        nodes_explored=result.nodes_explored,
        timed_out=result.timed_out,
        budget=budget,
        lower_bound=result.lower_bound,
    )
    path.write_text(json.dumps(record.model_dump(), indent=2) + "\n")
    return path


def solve_cached(graph_path: str | Path, g: Graph, budget: int | None = None, time_limit: float | None = None) -> ExactResult:
    """Reuse ``<name>.chi.json`` when it holds a proven optimum, otherwise solve and rewrite it."""
    budget = get_settings().EXACT_NODE_BUDGET if budget is None else budget
    cached = load_chi_cache(graph_path, g)
    if cached is not None and not cached.timed_out:
        logger.info("EXACT CACHE HIT | graph=%s chi=%d", Path(graph_path).name, cached.chi)
        return cached
    result = chromatic_exact(g, budget=budget, time_limit=time_limit)
    save_chi_cache(graph_path, g, result, budget)
    return result

