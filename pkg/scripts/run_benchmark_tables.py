#!/usr/bin/env python3
"""
Run both evaluation protocols and print a geometric-mean table.

  degree baseline   seven single strategies over the large corpus
  optimal baseline  seven single strategies, uniform and the bundled weighted
                    vector over the small corpus (exact optima solved or read
                    from .chi.json caches)

Run from the repository root:
  python scripts/run_benchmark_tables.py --large corpus/large --small corpus/small
  python scripts/run_benchmark_tables.py --synthetic 40            # offline, generated graphs
  python scripts/run_benchmark_tables.py --small corpus/small --grid-step 0.05
"""

import argparse
import logging
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from benchmark.corpus import load_corpus
from benchmark.harness import BenchConfig, run_benchmark, weight_grid_search, with_exact_baselines
from benchmark.report import emit_report, emit_scatter_files, format_aggregates
from benchmark.synthetic_graphs import write_synthetic_corpus
from graphcolor.config import get_settings
from graphcolor.schemas import METRIC_STRATEGIES, REFERENCE_WEIGHTS, OrderingSpec, Strategy

logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s | %(levelname)s | %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)
logger = logging.getLogger(__name__)

SINGLE = [OrderingSpec(strategy=s) for s in METRIC_STRATEGIES] + [OrderingSpec(strategy=Strategy.RANDOM)]
COMBINED = SINGLE + [
    OrderingSpec(strategy=Strategy.UNIFORM),
    OrderingSpec(strategy=Strategy.WEIGHTED, weights=REFERENCE_WEIGHTS),
]


def _write(report, out_dir: Path | None, stem: str):
    if out_dir is None:
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{stem}.csv").write_bytes(emit_report(report, "csv"))
    (out_dir / f"{stem}.json").write_bytes(emit_report(report, "json"))
    emit_scatter_files(report, out_dir / stem)


def main():
    parser = argparse.ArgumentParser(description="Degree- and optimal-baseline benchmark tables.")
    parser.add_argument("--large", type=Path, default=None, help="corpus for the degree-baseline table")
    parser.add_argument("--small", type=Path, default=None, help="corpus for the optimal-baseline table")
    parser.add_argument("--synthetic", type=int, default=0, help="generate this many 100-500 vertex graphs and use them for both tables")
    parser.add_argument("--grid-step", type=float, default=None, help="also run the weight search on the small corpus")
    parser.add_argument(
        "--large-closeness", choices=["exact", "sampled"], default=None,
        help="closeness mode for the degree-baseline table (default: sampled)",
    )
    parser.add_argument("--budget", type=int, default=None, help="exact solver node budget")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--out-dir", type=Path, default=None, help="write csv/json/scatter reports here")
    args = parser.parse_args()

    if args.synthetic:
        tmp = Path(tempfile.mkdtemp(prefix="graphcolor_synth_"))
        write_synthetic_corpus(tmp, count=args.synthetic)
        args.large = args.large or tmp
        args.small = args.small or tmp
    if args.large is None and args.small is None:
        parser.error("give --large, --small or --synthetic")

    s = get_settings()
    n_jobs = args.threads or s.effective_threads
    reports = {}

    if args.large is not None:
        config = BenchConfig.for_protocol("degree", s, closeness_mode=args.large_closeness)
        logger.info("DEGREE PROTOCOL | closeness=%s samples=%d", config.closeness_mode, config.closeness_samples)
        graphs = load_corpus(args.large, with_chi=False)
        reports["degree"] = run_benchmark(graphs, SINGLE, baseline="degree", config=config, n_jobs=n_jobs)
        _write(reports["degree"], args.out_dir, "degree_baseline")

    if args.small is not None:
        config = BenchConfig.for_protocol("optimal", s, exact_budget=args.budget)
        graphs = with_exact_baselines(load_corpus(args.small), budget=config.exact_budget, n_jobs=n_jobs)
        reports["optimal"] = run_benchmark(graphs, COMBINED, baseline="optimal", config=config, n_jobs=n_jobs)
        _write(reports["optimal"], args.out_dir, "optimal_baseline")
        if args.grid_step is not None and reports["optimal"].per_graph:
            result = weight_grid_search(graphs, step=args.grid_step, config=config, n_jobs=n_jobs)
            print(
                "best weights: "
                + ", ".join(f"{m.value}={w:g}" for m, w in zip(METRIC_STRATEGIES, result.best_weights.as_tuple()))
                + f"  geomean={result.best_geomean:.4f}  ({result.evaluations} grid points)"
            )

    print(format_aggregates(reports))
    excluded = reports["optimal"].excluded if "optimal" in reports else []
    if excluded:
        print(f"Excluded from the optimal baseline (no proven chi): {', '.join(excluded)}")


if __name__ == "__main__":
    main()
