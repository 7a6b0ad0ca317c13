"""
Corpus I/O: load a directory of graph files, and fetch pinned SuiteSparse
matrices into one.

The benchmark itself only reads local files; downloading is a separate step.
"""

import io
import logging
import tarfile
from dataclasses import dataclass
from pathlib import Path

import httpx

from benchmark.harness import CorpusGraph
from graphcolor.config import get_settings
from graphcolor.exact import load_chi_cache
from graphcolor.graph_core import GraphFormatError, ParseStats, read_graph_file, read_matrix_market_header

logger = logging.getLogger(__name__)

GRAPH_SUFFIXES = (".mtx", ".el", ".txt")
CORPORA_DIR = Path(__file__).resolve().parent / "corpora"


def load_corpus(directory: str | Path, with_chi: bool = True) -> list[CorpusGraph]:
    """
    Every graph file in ``directory`` in name order. Unreadable files are
    skipped with a warning. Proven optima from ``<name>.chi.json`` are attached.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise ValueError(f"corpus directory not found: {directory}")
    graphs = []
    for path in sorted(p for p in directory.iterdir() if p.suffix.lower() in GRAPH_SUFFIXES):
        try:
            g = read_graph_file(path)
        except (GraphFormatError, OSError, ValueError) as e:
            logger.warning("CORPUS SKIP | file=%s error=%s", path.name, e)
            continue
        chi = None
        if with_chi:
            cached = load_chi_cache(path, g)
            if cached is not None and not cached.timed_out:
                chi = cached.chi
        graphs.append(CorpusGraph(name=path.stem, graph=g, path=path, chi=chi))
    logger.info("CORPUS LOADED | dir=%s graphs=%d with_chi=%d", directory, len(graphs), sum(g.chi is not None for g in graphs))
    return graphs


def read_pinned_list(path: str | Path) -> list[tuple[str, str]]:
    """``group/name`` per line; blank lines and ``#`` comments ignored."""
    entries = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        group, sep, name = line.partition("/")
        if not sep or not group or not name:
            raise ValueError(f"{path}: expected 'group/name', got {line!r}")
        # files are stored as <name>.mtx, so names must be unique
        if any(name == seen for _, seen in entries):
            raise ValueError(f"{path}: matrix name {name!r} listed twice")
        entries.append((group, name))
    return entries


def pinned_list(name: str) -> Path:
    """Path of a bundled list, e.g. ``small_exact`` or ``large_desk``."""
    path = CORPORA_DIR / f"{name}.txt"
    if not path.is_file():
        raise ValueError(f"no pinned corpus named {name!r} in {CORPORA_DIR}")
    return path


@dataclass(frozen=True)
class FetchOutcome:
    group: str
    name: str
    path: Path | None
    reason: str = ""

    @property
    def kept(self) -> bool:
        return self.path is not None


def admissible(stats: ParseStats, min_n: int | None, max_n: int | None) -> str:
    """Empty string when the matrix is square, symmetric and within size bounds; else the reason."""
    if stats.rows != stats.cols:
        return f"rectangular {stats.rows}x{stats.cols}"
    if stats.symmetry == "general":
        return "structurally unsymmetric (general)"
    if min_n is not None and stats.rows < min_n:
        return f"n={stats.rows} below {min_n}"
    if max_n is not None and stats.rows > max_n:
        return f"n={stats.rows} above {max_n}"
    return ""


def _download(client: httpx.Client, url: str) -> bytes:
    last_err = None
    for attempt in range(3):
        try:
            resp = client.get(url)
            resp.raise_for_status()
            return resp.content
        except (httpx.ReadError, httpx.ConnectError, httpx.ConnectTimeout, httpx.ReadTimeout) as e:
            last_err = e
            logger.warning("FETCH RETRY | url=%s attempt=%d error=%s", url, attempt + 1, e)
    raise last_err


def extract_matrix(archive: bytes, name: str) -> bytes:
    """The ``<name>/<name>.mtx`` member of a SuiteSparse ``.tar.gz``."""
    with tarfile.open(fileobj=io.BytesIO(archive), mode="r:gz") as tar:
        for member in tar.getmembers():
            if member.isfile() and Path(member.name).name == f"{name}.mtx":
                return tar.extractfile(member).read()
    raise ValueError(f"archive has no {name}.mtx member")


def fetch_corpus(
    entries: list[tuple[str, str]],
    out_dir: str | Path,
    min_n: int | None = None,
    max_n: int | None = None,
    base_url: str | None = None,
    client: httpx.Client | None = None,
) -> list[FetchOutcome]:
    """
    Download each ``group/name`` matrix into ``out_dir/<name>.mtx``, keeping
    only square symmetric matrices within [min_n, max_n]. Existing files are
    re-checked but not re-downloaded.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    base_url = (base_url or get_settings().SUITESPARSE_BASE_URL).rstrip("/")
    own_client = client is None
    client = client or httpx.Client(timeout=120.0, follow_redirects=True)
    outcomes = []
    try:
        for group, name in entries:
            target = out_dir / f"{name}.mtx"
            try:
                if target.is_file():
                    data = target.read_bytes()
                else:
                    data = extract_matrix(_download(client, f"{base_url}/MM/{group}/{name}.tar.gz"), name)
                reason = admissible(read_matrix_market_header(data), min_n, max_n)
            except (httpx.HTTPError, tarfile.TarError, GraphFormatError, ValueError) as e:
                logger.warning("FETCH FAILED | matrix=%s/%s error=%s", group, name, e)
                outcomes.append(FetchOutcome(group, name, None, f"error: {e}"))
                continue
            if reason:
                logger.warning("FETCH EXCLUDED | matrix=%s/%s reason=%s", group, name, reason)
                target.unlink(missing_ok=True)
                outcomes.append(FetchOutcome(group, name, None, reason))
                continue
            if not target.is_file():
                target.write_bytes(data)
            logger.info("FETCH OK | matrix=%s/%s path=%s", group, name, target)
            outcomes.append(FetchOutcome(group, name, target))
    finally:
        if own_client:
            client.close()
    logger.info("FETCH COMPLETE | kept=%d excluded=%d", sum(o.kept for o in outcomes), sum(not o.kept for o in outcomes))
    return outcomes
