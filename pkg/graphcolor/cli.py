"""
Command-line entry point.

    python -m graphcolor color graph.mtx --order closeness
    python -m graphcolor verify graph.mtx graph.mtx.color.csv --ell 1
    python -m graphcolor metrics graph.mtx --metric pagerank --alpha 0.9
    python -m graphcolor exact small.mtx --budget 1000000
    python -m graphcolor bench --corpus corpus/ --baseline degree --strategies all --format scatter --pair closeness/degree
    python -m graphcolor weights-search --corpus small/ --grid-step 0.05
    python -m graphcolor fetch --list small_exact --out corpus/small --min-n 100 --max-n 500

Exit codes: 0 success, 1 usage error, 2 data error.
"""

import argparse
import logging
import re
import sys
import time
from pathlib import Path

import httpx
import pandas as pd

from benchmark.corpus import fetch_corpus, load_corpus, pinned_list, read_pinned_list
from benchmark.harness import BenchConfig, run_benchmark, weight_grid_search, with_exact_baselines
from benchmark.report import emit_report, parse_pair
from graphcolor.coloring import greedy_color, verify
from graphcolor.config import Settings, get_settings
from graphcolor.exact import chromatic_exact, save_chi_cache, solve_cached
from graphcolor.graph_core import read_graph_file
from graphcolor.ordering import MetricTable, metric_by_name
from graphcolor.schemas import (
    METRIC_STRATEGIES,
    REFERENCE_WEIGHTS,
    ColoringSummary,
    OrderingSpec,
    Strategy,
)
from graphcolor.utils import read_coloring_csv, summary_json, write_coloring_csv, write_metrics_csv

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
_EXTENSIONS = {"csv": "csv", "wide": "csv", "json": "json", "scatter": "tsv"}
_CLOSENESS_RE = re.compile(r"^(exact|sampled)(?:[:=](\d+))?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def all_strategies() -> list[OrderingSpec]:
    """The seven single strategies plus uniform and the bundled weighted vector."""
    specs = [OrderingSpec(strategy=s) for s in METRIC_STRATEGIES]
    specs.append(OrderingSpec(strategy=Strategy.RANDOM))
    specs.append(OrderingSpec(strategy=Strategy.UNIFORM))
    specs.append(OrderingSpec(strategy=Strategy.WEIGHTED, weights=REFERENCE_WEIGHTS))
    return specs


def parse_strategies(values: list[str | OrderingSpec]) -> list[OrderingSpec]:
    specs = []
    for v in values:
        if isinstance(v, OrderingSpec):
            specs.append(v)
        elif v == "all":
            specs.extend(all_strategies())
        else:
            specs.append(OrderingSpec.parse(v))
    return specs


def default_output(source: str | Path, subcommand: str, fmt: str = "csv") -> Path:
    return Path(f"{str(source).rstrip('/')}.{subcommand}.{_EXTENSIONS.get(fmt, fmt)}")


def _seed_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated integers, got {text!r}") from None


def _ordering(text: str) -> OrderingSpec:
    try:
        return OrderingSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _strategy(text: str) -> str | OrderingSpec:
    return "all" if text.strip() == "all" else _ordering(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _pair(text: str) -> tuple[str, str]:
    """Two report labels, e.g. closeness/degree or weighted/closeness."""
    try:
        return parse_pair(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _closeness(text: str) -> tuple[str, int | None]:
    m = _CLOSENESS_RE.match(text.strip())
    if not m or (m.group(1) == "exact" and m.group(2)):
        raise argparse.ArgumentTypeError(f"expected exact or sampled:<k>, got {text!r}")
    return m.group(1), int(m.group(2)) if m.group(2) else None


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, default=None, help="PageRank damping, 0 < alpha < 1")
    common.add_argument("--pr-iters", type=int, default=None, help="PageRank iteration count")
    common.add_argument("--closeness", type=_closeness, default=None, help="exact or sampled:<k>")
    common.add_argument("--seeds", type=_seed_list, default=None, help="random-strategy seeds, e.g. 1,2,3,4,5")
    common.add_argument("--threads", type=int, default=None, help="worker cap (default: all cores)")
    common.add_argument("--timings", action="store_true", help="record runtime_ms")
    common.add_argument("--out", type=Path, default=None, help="output path (default <input>.<subcommand>.<ext>)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = _Parser(prog="graphcolor", description="Greedy graph coloring under vertex-ordering heuristics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("color", parents=[common], help="greedy-color one graph")
    p.add_argument("graph", type=Path)
    p.add_argument("--order", type=_ordering, default="degree", help="ordering spec, e.g. closeness, random:seed=3, weighted:reference")
    p.add_argument("--ell", type=_positive_int, default=1, help="distance-ell coloring")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="check a vertex,color CSV against a graph")
    p.add_argument("graph", type=Path)
    p.add_argument("coloring", type=Path)
    p.add_argument("--ell", type=_positive_int, default=1, help="distance-ell coloring")

    p = sub.add_parser("metrics", parents=[common], help="write metric vectors of one graph")
    p.add_argument("graph", type=Path)
    p.add_argument("--metric", action="append", choices=[s.value for s in METRIC_STRATEGIES], default=None)

    p = sub.add_parser("exact", parents=[common], help="exact chromatic number with a .chi.json cache")
    p.add_argument("graph", type=Path)
    p.add_argument("--budget", type=int, default=None, help="branch-and-bound node budget")
    p.add_argument("--time-limit", type=float, default=None, help="wall-clock limit in seconds")
    p.add_argument("--force", action="store_true", help="ignore an existing cache")

    for name, baseline, help_text in (
        ("bench", "degree", "color a corpus under many strategies"),
        ("weights-search", "optimal", "grid search over weighted orderings"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--corpus", type=Path, required=True)
        p.add_argument("--baseline", choices=("degree", "optimal"), default=baseline)
        p.add_argument("--budget", type=int, default=None, help="node budget when solving missing optima")
        p.add_argument("--solve-missing", action="store_true", help="run the exact solver where no .chi.json exists")
        if name == "bench":
            p.add_argument("--strategies", type=_strategy, nargs="+", default=["all"], help="'all' or ordering specs")
            p.add_argument("--format", choices=tuple(_EXTENSIONS), default="csv")
            p.add_argument(
                "--pair", type=_pair, action="append", default=None,
                help="scatter series of colors(a)/colors(b), e.g. closeness/degree (repeatable)",
            )
        else:
            p.add_argument("--grid-step", type=float, default=None)
            p.add_argument("--trace", action="store_true", help="write every grid point, not just the best")

    p = sub.add_parser("fetch", help="download pinned SuiteSparse matrices")
    p.add_argument("--list", required=True, help="bundled list name (small_exact, large_desk) or a file path")
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--min-n", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--base-url", default=None)
    return parser


def effective_settings(args: argparse.Namespace, base: Settings | None = None) -> Settings:
    """Settings with every CLI override applied (validated like the env values)."""
    base = base or get_settings()
    update = {}
    if getattr(args, "alpha", None) is not None:
        update["PAGERANK_ALPHA"] = args.alpha
    if getattr(args, "pr_iters", None) is not None:
        update["PAGERANK_ITERATIONS"] = args.pr_iters
    if getattr(args, "closeness", None) is not None:
        mode, samples = args.closeness
        update["CLOSENESS_MODE"] = mode
        if samples is not None:
            update["CLOSENESS_SAMPLES"] = samples
    if getattr(args, "seeds", None):
        update["RANDOM_SEEDS"] = args.seeds
    if getattr(args, "threads", None) is not None:
        update["THREADS"] = args.threads
    if getattr(args, "budget", None) is not None:
        update["EXACT_NODE_BUDGET"] = args.budget
    if getattr(args, "time_limit", None) is not None:
        update["EXACT_TIME_LIMIT_S"] = args.time_limit
    if getattr(args, "grid_step", None) is not None:
        update["GRID_STEP"] = args.grid_step
    if getattr(args, "timings", False):
        update["RECORD_TIMINGS"] = True
    merged = base.model_dump()
    merged.update(update)
    return Settings.model_validate(merged)


def _log_config(command: str, s: Settings) -> None:
    logger.info(
        "CONFIG | command=%s alpha=%s pr_iters=%d closeness=%s samples=%d closeness_seed=%d "
        "seeds=%s averaging=%s budget=%d time_limit=%s grid_step=%s threads=%s timings=%s",
        command, s.PAGERANK_ALPHA, s.PAGERANK_ITERATIONS, s.CLOSENESS_MODE, s.CLOSENESS_SAMPLES,
        s.CLOSENESS_SEED, ",".join(map(str, s.RANDOM_SEEDS)), s.RANDOM_AVERAGING, s.EXACT_NODE_BUDGET,
        s.EXACT_TIME_LIMIT_S, s.GRID_STEP, s.THREADS or "all", s.RECORD_TIMINGS,
    )


def cmd_color(args, s: Settings) -> int:
    g = read_graph_file(args.graph)
    spec = args.order
    if spec.strategy == Strategy.RANDOM and spec.seed is None:
        spec = spec.model_copy(update={"seed": s.RANDOM_SEEDS[0]})
        logger.info("random order without a seed; using seed=%d", spec.seed)
    start = time.perf_counter()
    table = MetricTable(g, n_jobs=s.effective_threads, settings=s)
    coloring = greedy_color(g, table.permutation(spec), args.ell)
    elapsed = (time.perf_counter() - start) * 1000.0
    if not verify(g, coloring, args.ell):
        raise ValueError(f"coloring under {spec.to_cli()} failed verification")

    out = args.out or default_output(args.graph, "color", args.format)
    if args.format == "json":
        summary = ColoringSummary(
            strategy=spec.to_cli(),
            ell=args.ell,
            num_colors=coloring.num_colors,
            runtime_ms=round(elapsed, 3) if s.RECORD_TIMINGS else None,
        )
        out.write_text(summary_json(summary))
    else:
        write_coloring_csv(out, coloring)
    logger.info("COLOR DONE | graph=%s order=%s ell=%d colors=%d out=%s", args.graph.name, spec.to_cli(), args.ell, coloring.num_colors, out)
    print(coloring.num_colors)
    return EXIT_OK


def cmd_verify(args, s: Settings) -> int:
    g = read_graph_file(args.graph)
    coloring = read_coloring_csv(args.coloring)
    if len(coloring.colors) != g.n:
        raise ValueError(f"{args.coloring} colors {len(coloring.colors)} vertices, graph has {g.n}")
    if not verify(g, coloring, args.ell):
        raise ValueError(f"{args.coloring} is not a proper distance-{args.ell} coloring of {args.graph.name}")
    logger.info("VERIFY OK | graph=%s coloring=%s ell=%d colors=%d", args.graph.name, args.coloring, args.ell, coloring.num_colors)
    print(coloring.num_colors)
    return EXIT_OK


def cmd_metrics(args, s: Settings) -> int:
    g = read_graph_file(args.graph)
    table = MetricTable(g, n_jobs=s.effective_threads, settings=s)
    names = args.metric or [m.value for m in METRIC_STRATEGIES]
    vectors = [metric_by_name(table, name) for name in names]
    out = write_metrics_csv(args.out or default_output(args.graph, "metrics"), vectors)
    logger.info("METRICS DONE | graph=%s metrics=%s out=%s", args.graph.name, ",".join(names), out)
    return EXIT_OK


def cmd_exact(args, s: Settings) -> int:
    g = read_graph_file(args.graph)
    if args.force:
        result = chromatic_exact(g, budget=s.EXACT_NODE_BUDGET, time_limit=s.EXACT_TIME_LIMIT_S)
        save_chi_cache(args.graph, g, result, s.EXACT_NODE_BUDGET)
    else:
        result = solve_cached(args.graph, g, budget=s.EXACT_NODE_BUDGET, time_limit=s.EXACT_TIME_LIMIT_S)
    if not verify(g, result.witness, 1):
        raise ValueError("exact solver witness failed verification")
    if result.timed_out:
        print(f"chi <= {result.chi} (budget exhausted after {result.nodes_explored} nodes)")
    else:
        print(result.chi)
    return EXIT_OK


def _load_bench_corpus(args, s: Settings):
    graphs = load_corpus(args.corpus)
    if not graphs:
        raise ValueError(f"no readable graphs in {args.corpus}")
    if args.baseline == "optimal" and args.solve_missing:
        graphs = with_exact_baselines(
            graphs, budget=s.EXACT_NODE_BUDGET, time_limit=s.EXACT_TIME_LIMIT_S, n_jobs=s.effective_threads
        )
    return graphs


def cmd_bench(args, s: Settings) -> int:
    strategies = parse_strategies(args.strategies)
    labels = {spec.label for spec in strategies}
    for a, b in args.pair or []:
        if a not in labels or b not in labels:
            raise UsageError(f"--pair {a}/{b}: both strategies must be in --strategies")
    graphs = _load_bench_corpus(args, s)
    report = run_benchmark(
        graphs, strategies, baseline=args.baseline, config=BenchConfig.from_settings(s), n_jobs=s.effective_threads
    )
    out = args.out or default_output(args.corpus, "bench", args.format)
    out.write_bytes(emit_report(report, args.format, pairs=args.pair))
    for label, value in report.aggregates.items():
        print(f"{label}\t{value:.4f}")
    logger.info("BENCH WRITTEN | out=%s format=%s", out, args.format)
    return EXIT_OK


def cmd_weights_search(args, s: Settings) -> int:
    graphs = _load_bench_corpus(args, s)
    result = weight_grid_search(
        graphs,
        step=s.GRID_STEP,
        baseline=args.baseline,
        config=BenchConfig.from_settings(s),
        n_jobs=s.effective_threads,
        keep_trace=args.trace,
    )
    columns = [f"w_{m.value}" for m in METRIC_STRATEGIES] + ["geomean"]
    if result.trace is not None:
        rows = [list(p.weights) + [p.geomean] for p in result.trace]
    else:
        rows = [list(result.best_weights.as_tuple()) + [result.best_geomean]]
    out = args.out or default_output(args.corpus, "weights-search")
    pd.DataFrame(rows, columns=columns).to_csv(out, index=False, float_format="%.17g", lineterminator="\n")
    print("weighted:" + ",".join(f"{w:g}" for w in result.best_weights.as_tuple()) + f"\t{result.best_geomean:.4f}")
    logger.info("GRID WRITTEN | out=%s evaluations=%d", out, result.evaluations)
    return EXIT_OK


def cmd_fetch(args, s: Settings) -> int:
    list_path = Path(args.list)
    entries = read_pinned_list(list_path if list_path.is_file() else pinned_list(args.list))
    outcomes = fetch_corpus(entries, args.out, min_n=args.min_n, max_n=args.max_n, base_url=args.base_url)
    print(f"kept {sum(o.kept for o in outcomes)} of {len(outcomes)}")
    return EXIT_OK


COMMANDS = {
    "color": cmd_color,
    "verify": cmd_verify,
    "metrics": cmd_metrics,
    "exact": cmd_exact,
    "bench": cmd_bench,
    "weights-search": cmd_weights_search,
    "fetch": cmd_fetch,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        s = effective_settings(args)
    except ValueError as e:
        parser.print_usage(sys.stderr)
        print(f"graphcolor: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=s.LOG_LEVEL,
        format="%(asctime)s | %(levelname)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    _log_config(args.command, s)
    try:
        return COMMANDS[args.command](args, s)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"graphcolor: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, MemoryError, httpx.HTTPError) as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"graphcolor {args.command}: {e}", file=sys.stderr)
        return EXIT_DATA
