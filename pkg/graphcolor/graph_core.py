"""
Graph representation, Matrix Market / edge-list ingestion, and BFS primitives.

Graphs are simple and undirected, stored in compressed-row form: ``offsets``
(length n+1) and ``neighbors`` (length 2m, each row sorted ascending). Vertex
ids are 0-based; Matrix Market's 1-based ids are converted at the boundary.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import BinaryIO, Iterator, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

logger = logging.getLogger(__name__)

UNREACHABLE = -1
_INITIAL_ENTRIES = 1 << 16

_MM_FIELDS = {"pattern": 0, "integer": 1, "real": 1, "complex": 2}
# skew-symmetric / hermitian files store one triangle like symmetric ones; only the pattern matters here
_MM_SYMMETRIES = {"general", "symmetric", "skew-symmetric", "hermitian"}


class GraphFormatError(ValueError):
    """Malformed graph file. ``line`` is 1-based (0 when the error is not tied to a line)."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class MatrixMarketError(GraphFormatError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable compressed-adjacency undirected simple graph."""

    offsets: np.ndarray
    neighbors: np.ndarray

    def __post_init__(self):
        self.offsets.setflags(write=False)
        self.neighbors.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    def nbor(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def edges(self) -> np.ndarray:
        """(m, 2) array of edges {u, v} with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        mask = src < self.neighbors
        return np.column_stack((src[mask], self.neighbors[mask]))

    @cached_property
    def csr(self) -> sp.csr_matrix:
        """Symmetric 0/1 adjacency matrix for scipy kernels."""
        data = np.ones(len(self.neighbors), dtype=np.float64)
        return sp.csr_matrix((data, self.neighbors, self.offsets), shape=(self.n, self.n))

    @cached_property
    def adjacency_lists(self) -> list[list[int]]:
        """Plain-Python neighbor lists for the sequential per-vertex loops."""
        nbrs = self.neighbors.tolist()
        offs = self.offsets.tolist()
        return [nbrs[offs[v]:offs[v + 1]] for v in range(self.n)]

    @cached_property
    def components(self) -> np.ndarray:
        """Connected-component label per vertex."""
        if self.n == 0:
            return np.zeros(0, dtype=np.int64)
        _, labels = connected_components(self.csr, directed=False)
        return labels

    def component_sizes(self) -> np.ndarray:
        """Size of each vertex's connected component."""
        labels = self.components
        return np.bincount(labels)[labels] if self.n else np.zeros(0, dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self.offsets, other.offsets) and np.array_equal(self.neighbors, other.neighbors)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class ParseStats:
    rows: int
    cols: int
    field: str
    symmetry: str
    declared_entries: int
    diagonal_dropped: int = 0
    duplicates_merged: int = 0


@dataclass(frozen=True)
class DistanceField:
    source: int
    dist: np.ndarray = field(repr=False)

    def reachable(self) -> np.ndarray:
        return self.dist != UNREACHABLE


def _build(n: int, us: np.ndarray, vs: np.ndarray) -> tuple[Graph, int, int]:
    """Clean an arbitrary pair list into a Graph. Returns (graph, loops dropped, duplicates merged)."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    loops = us == vs
    lo = np.minimum(us[~loops], vs[~loops])
    hi = np.maximum(us[~loops], vs[~loops])
    keys = np.unique(lo * max(n, 1) + hi)
    lo, hi = keys // max(n, 1), keys % max(n, 1)
    src = np.concatenate((lo, hi))
    dst = np.concatenate((hi, lo))
    order = np.lexsort((dst, src))
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=offsets[1:])
    graph = Graph(offsets=offsets, neighbors=dst[order])
    return graph, int(loops.sum()), int(len(us) - loops.sum() - len(keys))


def from_edge_list(n: int, edges: Sequence[tuple[int, int]] | np.ndarray) -> Graph:
    """Build a graph from vertex pairs: loops dropped, duplicates merged, symmetrized."""
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    pairs = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if len(pairs) and (pairs.min() < 0 or pairs.max() >= n):
        bad = pairs[(pairs < 0).any(axis=1) | (pairs >= n).any(axis=1)][0]
        raise ValueError(f"edge ({bad[0]}, {bad[1]}) has an endpoint outside [0, {n})")
    graph, _, _ = _build(n, pairs[:, 0], pairs[:, 1])
    return graph


def _as_text_stream(data: bytes | str | BinaryIO | io.TextIOBase) -> Iterator[str]:
    if isinstance(data, bytes):
        return io.StringIO(data.decode("utf-8", errors="replace"))
    if isinstance(data, str):
        return io.StringIO(data)
    if isinstance(data, io.TextIOBase):
        return data
    return io.TextIOWrapper(data, encoding="utf-8", errors="replace")


def read_matrix_market_header(data: bytes | str | BinaryIO) -> ParseStats:
    """Parse only the banner and size line (used to filter corpora without reading entries)."""
    stream = _as_text_stream(data)
    lineno, rows, cols, nnz, fld, symmetry = _read_header(stream)
    return ParseStats(rows=rows, cols=cols, field=fld, symmetry=symmetry, declared_entries=nnz)


def _read_header(stream) -> tuple[int, int, int, int, str, str]:
    banner = stream.readline()
    if not banner.lower().startswith("%%matrixmarket"):
        raise MatrixMarketError(1, "missing %%MatrixMarket banner")
    tokens = banner.lower().split()
    if len(tokens) != 5 or tokens[1] != "matrix":
        raise MatrixMarketError(1, f"malformed header: {banner.strip()!r}")
    fmt, fld, symmetry = tokens[2], tokens[3], tokens[4]
    if fmt != "coordinate":
        raise MatrixMarketError(1, f"unsupported format {fmt!r}; only 'coordinate' is read")
    if fld not in _MM_FIELDS:
        raise MatrixMarketError(1, f"unsupported field {fld!r}")
    if symmetry not in _MM_SYMMETRIES:
        raise MatrixMarketError(1, f"unsupported symmetry {symmetry!r}")

    lineno = 1
    for line in stream:
        lineno += 1
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        if len(parts) != 3:
            raise MatrixMarketError(lineno, f"size line must be 'rows cols entries', got {s!r}")
        try:
            rows, cols, nnz = (int(p) for p in parts)
        except ValueError:
            raise MatrixMarketError(lineno, f"non-integer size line {s!r}") from None
        if rows < 0 or cols < 0 or nnz < 0:
            raise MatrixMarketError(lineno, "negative dimension in size line")
        return lineno, rows, cols, nnz, fld, symmetry
    raise MatrixMarketError(lineno, "missing size line")


def _grown(a: np.ndarray, size: int) -> np.ndarray:
    out = np.empty(size, dtype=a.dtype)
    out[: len(a)] = a
    return out


def parse_matrix_market_with_stats(data: bytes | str | BinaryIO) -> tuple[Graph, ParseStats]:
    """Read a coordinate Matrix Market file into a simple undirected graph plus cleaning counts."""
    stream = _as_text_stream(data)
    lineno, rows, cols, nnz, fld, symmetry = _read_header(stream)
    need = 2 + _MM_FIELDS[fld]
    # the size line is untrusted: start small and double up to the declared count
    capacity = min(nnz, _INITIAL_ENTRIES)
    us = np.empty(capacity, dtype=np.int64)
    vs = np.empty(capacity, dtype=np.int64)
    count = 0
    for line in stream:
        lineno += 1
        s = line.strip()
        if not s or s.startswith("%"):
            continue
        parts = s.split()
        if len(parts) < need:
            raise MatrixMarketError(lineno, f"expected {need} fields for a {fld} entry, got {len(parts)}")
        if count >= nnz:
            raise MatrixMarketError(lineno, f"more entries than the declared {nnz}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise MatrixMarketError(lineno, f"non-integer index in {s!r}") from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise MatrixMarketError(lineno, f"index ({i}, {j}) outside declared {rows}x{cols}")
        if count == capacity:
            capacity = min(nnz, 2 * capacity)
            us, vs = _grown(us, capacity), _grown(vs, capacity)
        us[count] = i - 1
        vs[count] = j - 1
        count += 1
    if count != nnz:
        raise MatrixMarketError(lineno, f"declared {nnz} entries, found {count}")

    n = max(rows, cols)
    graph, dropped, merged = _build(n, us[:count], vs[:count])
    stats = ParseStats(
        rows=rows,
        cols=cols,
        field=fld,
        symmetry=symmetry,
        declared_entries=nnz,
        diagonal_dropped=dropped,
        duplicates_merged=merged,
    )
    if dropped or merged:
        logger.debug("MM CLEANED | diagonal_dropped=%d duplicates_merged=%d", dropped, merged)
    return graph, stats


def parse_matrix_market(data: bytes | str | BinaryIO) -> Graph:
    graph, _ = parse_matrix_market_with_stats(data)
    return graph


def parse_edge_list(data: bytes | str | BinaryIO) -> Graph:
    """Plain edge list: first line ``n m``, then ``u v`` pairs (0-based). ``#``/``%`` lines are comments."""
    stream = _as_text_stream(data)
    header = None
    pairs: list[tuple[int, int]] = []
    lineno = 0
    for line in stream:
        lineno += 1
        s = line.strip()
        if not s or s[0] in "#%":
            continue
        parts = s.split()
        try:
            a, b = int(parts[0]), int(parts[1])
        except (ValueError, IndexError):
            raise GraphFormatError(lineno, f"expected two integers, got {s!r}") from None
        if header is None:
            header = (a, b)
            continue
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise GraphFormatError(lineno, f"edge ({a}, {b}) outside [0, {header[0]})")
        pairs.append((a, b))
    if header is None:
        raise GraphFormatError(0, "empty edge list: missing 'n m' line")
    if len(pairs) != header[1]:
        raise GraphFormatError(lineno, f"declared {header[1]} edges, found {len(pairs)}")
    return from_edge_list(header[0], pairs)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges().tolist())
    return "\n".join(lines) + "\n"


def format_matrix_market(g: Graph, comment: str | None = None) -> str:
    """Symmetric pattern file holding the lower triangle (row > col)."""
    lines = ["%%MatrixMarket matrix coordinate pattern symmetric"]
    if comment:
        lines.extend(f"% {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.n} {g.m}")
    lines.extend(f"{v + 1} {u + 1}" for u, v in g.edges().tolist())
    return "\n".join(lines) + "\n"


def read_graph_file(path: str | Path) -> Graph:
    """Load ``.mtx`` (Matrix Market) or ``.el``/``.txt`` (edge list) files."""
    path = Path(path)
    with open(path, "rb") as f:
        if path.suffix.lower() == ".mtx":
            return parse_matrix_market(f)
        if path.suffix.lower() in (".el", ".txt"):
            return parse_edge_list(f)
    raise ValueError(f"unknown graph file type: {path.name}")


def bfs_distances(g: Graph, source: int, cap: int | None = None) -> DistanceField:
    """Unweighted shortest-path distances from ``source``; beyond ``cap`` or unreachable -> UNREACHABLE."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} outside [0, {g.n})")
    row = distance_block(g, np.array([source]), cap=cap)[0]
    dist = np.full(g.n, UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(row)
    dist[finite] = row[finite].astype(np.int64)
    return DistanceField(source=source, dist=dist)


def distance_block(g: Graph, sources: np.ndarray, cap: int | None = None) -> np.ndarray:
    """Dense float distance rows (inf = unreachable / beyond cap) for a batch of sources."""
    if g.n == 0 or len(sources) == 0:
        return np.zeros((len(sources), g.n))
    limit = np.inf if cap is None else float(cap)
    return np.atleast_2d(
        dijkstra(g.csr, directed=True, indices=np.asarray(sources), unweighted=True, limit=limit)
    )


def block_rows(n: int, budget: int) -> int:
    """Rows per distance block so that rows * n stays within ``budget`` (depends on n only)."""
    return max(1, budget // max(n, 1))


class BfsScratch:
    """
    Reusable epoch-stamped visit marks for local depth-capped BFS.

    One instance per caller; never shared between threads.
    """

    def __init__(self, n: int):
        self._stamp = [0] * n
        self._epoch = 0

    def ball(self, adjacency: list[list[int]], v: int, ell: int) -> list[int]:
        """Vertices at distance 1..ell from v (v excluded), in BFS order."""
        if ell == 1:
            return adjacency[v]
        self._epoch += 1
        epoch, stamp = self._epoch, self._stamp
        stamp[v] = epoch
        frontier = [v]
        found: list[int] = []
        for _ in range(ell):
            nxt = []
            for x in frontier:
                for y in adjacency[x]:
                    if stamp[y] != epoch:
                        stamp[y] = epoch
                        nxt.append(y)
            if not nxt:
                break
            found.extend(nxt)
            frontier = nxt
        return found
