"""
Greedy first-fit coloring over a fixed visit order, generic in the distance ell.

ell = 1 uses direct adjacency; ell > 1 collects the ell-ball with a
depth-capped BFS so the power graph is never materialized.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from graphcolor.graph_core import BfsScratch, Graph
from graphcolor.ordering import is_permutation

logger = logging.getLogger(__name__)

UNCOLORED = -1


@dataclass(frozen=True)
class Coloring:
    colors: np.ndarray = field(repr=False)
    num_colors: int

    @classmethod
    def from_colors(cls, colors) -> "Coloring":
        colors = np.asarray(colors, dtype=np.int64)
        return cls(colors=colors, num_colors=int(colors.max()) + 1 if len(colors) else 0)

    @property
    def complete(self) -> bool:
        return not np.any(self.colors == UNCOLORED)


def greedy_color(g: Graph, order, ell: int = 1) -> Coloring:
    """Visit vertices in ``order``; give each the smallest color absent from its colored ell-ball."""
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    order = np.asarray(order)
    if not is_permutation(order, g.n):
        raise ValueError(f"order is not a permutation of the {g.n} vertices")

    adjacency = g.adjacency_lists
    scratch = BfsScratch(g.n) if ell > 1 else None
    colors = [UNCOLORED] * g.n
    # forbidden-color marks indexed by color, reset through the touched list
    forbidden = [False] * (g.n + 1)
    for v in order.tolist():
        ball = adjacency[v] if scratch is None else scratch.ball(adjacency, v, ell)
        touched = []
        for u in ball:
            c = colors[u]
            if c != UNCOLORED and not forbidden[c]:
                forbidden[c] = True
                touched.append(c)
        col = 0
        while forbidden[col]:
            col += 1
        colors[v] = col
        for c in touched:
            forbidden[c] = False
    return Coloring.from_colors(colors)


def verify(g: Graph, coloring: Coloring, ell: int = 1) -> bool:
    """True iff no two distinct vertices within distance <= ell share a color."""
    colors = np.asarray(coloring.colors)
    if len(colors) != g.n or np.any(colors == UNCOLORED):
        return False
    if ell == 1:
        src = np.repeat(np.arange(g.n), g.degrees())
        return not np.any(colors[src] == colors[g.neighbors])
    adjacency = g.adjacency_lists
    scratch = BfsScratch(g.n)
    for v in range(g.n):
        cv = colors[v]
        if any(colors[u] == cv for u in scratch.ball(adjacency, v, ell)):
            return False
    return True


def count_colors(coloring: Coloring | np.ndarray) -> int:
    colors = coloring.colors if isinstance(coloring, Coloring) else np.asarray(coloring)
    return int(len(np.unique(colors)))


def color_class_order(coloring: Coloring) -> np.ndarray:
    """Vertices of class 0 first, then class 1, ...; ascending id inside a class."""
    return np.argsort(coloring.colors, kind="stable")


def is_first_fit(g: Graph, order, coloring: Coloring, ell: int = 1) -> bool:
    """Post-hoc check that each vertex got the minimum excludant of its earlier-colored ell-ball."""
    order = np.asarray(order)
    position = np.empty(g.n, dtype=np.int64)
    position[order] = np.arange(g.n)
    colors = coloring.colors.tolist()
    adjacency = g.adjacency_lists
    scratch = BfsScratch(g.n)
    for v in order.tolist():
        earlier = {colors[u] for u in scratch.ball(adjacency, v, ell) if position[u] < position[v]}
        mex = 0
        while mex in earlier:
            mex += 1
        if colors[v] != mex:
            return False
    return True
