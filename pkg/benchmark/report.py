"""
Report emission: long CSV, wide CSV, JSON and tab-separated scatter series
(per strategy against the baseline, and per strategy pair).

Floats are written with ``repr`` (shortest round-trip form), so equal reports
serialize to identical bytes.
"""

import logging
import re
from pathlib import Path
from typing import Sequence

import pandas as pd

from benchmark.harness import BenchReport

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "scatter", "wide")
CSV_COLUMNS = ["graph", "n", "m", "strategy", "colors", "ratio", "runtime_ms"]
Pairs = Sequence[tuple[str, str]]
# pairs written by default when both strategies are in the report
DEFAULT_PAIRS = (("closeness", "degree"), ("weighted", "closeness"))


def _float(x) -> str:
    return repr(float(x))


def _to_csv(frame: pd.DataFrame) -> bytes:
    return frame.to_csv(index=False, float_format=_float, na_rep="", lineterminator="\n").encode("utf-8")


def long_frame(report: BenchReport) -> pd.DataFrame:
    rows = [
        {
            "graph": g.graph,
            "n": g.n,
            "m": g.m,
            "strategy": r.strategy,
            "colors": r.colors,
            "ratio": r.ratio,
            "runtime_ms": r.runtime_ms,
        }
        for g in report.per_graph
        for r in g.results
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def wide_frame(report: BenchReport) -> pd.DataFrame:
    """One row per graph; a ``<strategy>_colors`` and ``<strategy>_ratio`` column per strategy."""
    columns = ["graph", "n", "m", "baseline_colors"]
    for s in report.strategies:
        columns += [f"{s}_colors", f"{s}_ratio"]
    rows = []
    for g in report.per_graph:
        row = {"graph": g.graph, "n": g.n, "m": g.m, "baseline_colors": g.baseline_colors}
        for r in g.results:
            row[f"{r.strategy}_colors"] = r.colors
            row[f"{r.strategy}_ratio"] = r.ratio
        rows.append(row)
    return pd.DataFrame(rows, columns=columns)


def scatter_series(report: BenchReport, strategy: str) -> str:
    """``rank<TAB>ratio`` rows, ratios ascending (ties by graph name), ranks from 0."""
    points = sorted((g.ratio_of(strategy), g.graph) for g in report.per_graph)
    lines = ["rank\tratio"]
    lines.extend(f"{i}\t{_float(ratio)}" for i, (ratio, _) in enumerate(points))
    return "\n".join(lines) + "\n"


def parse_pair(text: str) -> tuple[str, str]:
    """``a/b`` -> (a, b)."""
    a, sep, b = text.partition("/")
    if not sep or not a.strip() or not b.strip() or "/" in b:
        raise ValueError(f"expected a strategy pair like closeness/degree, got {text!r}")
    return a.strip(), b.strip()


def report_pairs(report: BenchReport, pairs: Pairs | None = None) -> list[tuple[str, str]]:
    """Requested pairs, checked against the report; DEFAULT_PAIRS present in it when none are given."""
    if pairs is None:
        return [p for p in DEFAULT_PAIRS if p[0] in report.strategies and p[1] in report.strategies]
    for a, b in pairs:
        missing = [s for s in (a, b) if s not in report.strategies]
        if missing:
            raise ValueError(f"strategy {missing[0]!r} is not in the report; have {report.strategies}")
    return list(pairs)


def pair_series(report: BenchReport, a: str, b: str) -> str:
    """``rank<TAB>ratio`` rows of colors(a) / colors(b) per graph, ascending (ties by graph name)."""
    points = sorted((g.colors_of(a) / g.colors_of(b), g.graph) for g in report.per_graph if g.colors_of(b) > 0)
    lines = ["rank\tratio"]
    lines.extend(f"{i}\t{_float(ratio)}" for i, (ratio, _) in enumerate(points))
    return "\n".join(lines) + "\n"


def emit_report(report: BenchReport, fmt: str = "csv", pairs: Pairs | None = None) -> bytes:
    if fmt == "csv":
        return _to_csv(long_frame(report))
    if fmt == "wide":
        return _to_csv(wide_frame(report))
    if fmt == "json":
        return (report.model_dump_json(indent=2) + "\n").encode("utf-8")
    if fmt == "scatter":
        blocks = [f"# strategy={s}\n{scatter_series(report, s)}" for s in report.strategies]
        blocks += [f"# pair={a}/{b}\n{pair_series(report, a, b)}" for a, b in report_pairs(report, pairs)]
        return "\n".join(blocks).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


def parse_report(data: bytes | str) -> BenchReport:
    """Inverse of ``emit_report(report, "json")``."""
    return BenchReport.model_validate_json(data)


def _safe(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label)


def emit_scatter_files(report: BenchReport, prefix: str | Path, pairs: Pairs | None = None) -> list[Path]:
    """Write ``<prefix>.<strategy>.tsv`` for every strategy and ``<prefix>.<a>_vs_<b>.tsv`` per pair."""
    prefix = Path(prefix)
    written = []
    for s in report.strategies:
        path = prefix.with_name(f"{prefix.name}.{_safe(s)}.tsv")
        path.write_text(scatter_series(report, s))
        written.append(path)
    for a, b in report_pairs(report, pairs):
        path = prefix.with_name(f"{prefix.name}.{_safe(a)}_vs_{_safe(b)}.tsv")
        path.write_text(pair_series(report, a, b))
        written.append(path)
    logger.info("SCATTER WRITTEN | files=%d prefix=%s", len(written), prefix)
    return written


def format_aggregates(reports: dict[str, BenchReport]) -> str:
    """Plain-text geometric-mean table, one column per report (e.g. per baseline)."""
    strategies: list[str] = []
    for rep in reports.values():
        strategies += [s for s in rep.strategies if s not in strategies]
    width = max([len(s) for s in strategies] + [8])
    header = "strategy".ljust(width) + "".join(f"  {name:>12}" for name in reports)
    lines = [header, "-" * len(header)]
    for s in strategies:
        cells = []
        for rep in reports.values():
            value = rep.aggregates.get(s)
            cells.append(f"  {value:>12.4f}" if value is not None else f"  {'-':>12}")
        lines.append(s.ljust(width) + "".join(cells))
    counts = "".join(f"  {len(rep.per_graph):>12d}" for rep in reports.values())
    lines.append("graphs".ljust(width) + counts)
    return "\n".join(lines) + "\n"
