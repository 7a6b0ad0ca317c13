"""
Unit tests for graphcolor.cli: subcommands, default output paths, setting
overrides, argument validation and exit codes.
"""
import argparse
import json
from unittest.mock import patch

import networkx as nx
import pandas as pd
import pytest

from benchmark import synthetic_graphs as sg
from graphcolor.cli import (
    EXIT_DATA,
    EXIT_OK,
    EXIT_USAGE,
    all_strategies,
    default_output,
    effective_settings,
    main,
    parse_strategies,
)
from graphcolor.coloring import greedy_color, verify
from graphcolor.config import Settings
from graphcolor.graph_core import format_matrix_market, from_edge_list
from graphcolor.ordering import random_order
from graphcolor.schemas import OrderingSpec, Strategy
from graphcolor.utils import read_coloring_csv


@pytest.fixture
def petersen_file(tmp_path):
    path = tmp_path / "petersen.mtx"
    path.write_text(format_matrix_market(sg.petersen()))
    return path


class TestColor:
    def test_prints_count_and_writes_csv(self, petersen_file, capsys):
        assert main(["color", str(petersen_file), "--order", "degree", "--threads", "1"]) == EXIT_OK
        g = sg.petersen()
        # constant degree: the degree order is the identity
        expected = greedy_color(g, range(g.n)).num_colors
        assert capsys.readouterr().out.strip() == str(expected)
        coloring = read_coloring_csv(default_output(petersen_file, "color"))
        assert verify(g, coloring)
        assert coloring.num_colors == expected

    def test_json_summary(self, petersen_file, tmp_path):
        out = tmp_path / "summary.json"
        args = ["color", str(petersen_file), "--order", "weighted:reference", "--format", "json", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        data = json.loads(out.read_text())
        assert data["strategy"] == "weighted:0.1,0.05,0.1,0.7,0.05,0.0"
        assert data["ell"] == 1
        assert data["runtime_ms"] is None
        assert data["num_colors"] >= 3

    def test_random_without_seed_uses_first_configured_seed(self, petersen_file, capsys):
        assert main(["color", str(petersen_file), "--order", "random", "--seeds", "7,8", "--threads", "1"]) == EXIT_OK
        g = sg.petersen()
        assert capsys.readouterr().out.strip() == str(greedy_color(g, random_order(g.n, 7)).num_colors)

    def test_distance_two(self, petersen_file, capsys):
        assert main(["color", str(petersen_file), "--ell", "2", "--threads", "1"]) == EXIT_OK
        # Petersen has diameter 2, so every vertex needs its own color
        assert capsys.readouterr().out.strip() == "10"

    @pytest.mark.parametrize("ell", ["0", "-2", "two"])
    def test_bad_ell_is_usage_error(self, petersen_file, ell, capsys):
        assert main(["color", str(petersen_file), "--ell", ell]) == EXIT_USAGE
        assert "--ell" in capsys.readouterr().err
        assert not default_output(petersen_file, "color").exists()

    @pytest.mark.parametrize("order", ["bogus", "random:seed=x", "weighted:0.5,0.5", "closeness:sampled=0"])
    def test_bad_order_is_usage_error(self, petersen_file, order, capsys):
        assert main(["color", str(petersen_file), "--order", order]) == EXIT_USAGE
        assert "--order" in capsys.readouterr().err
        assert not default_output(petersen_file, "color").exists()


class TestVerify:
    def test_accepts_written_coloring(self, petersen_file, capsys):
        assert main(["color", str(petersen_file), "--threads", "1"]) == EXIT_OK
        colors = capsys.readouterr().out.strip()
        assert main(["verify", str(petersen_file), str(default_output(petersen_file, "color"))]) == EXIT_OK
        assert capsys.readouterr().out.strip() == colors

    def test_distance_one_coloring_fails_at_distance_two(self, petersen_file):
        assert main(["color", str(petersen_file), "--threads", "1"]) == EXIT_OK
        coloring = str(default_output(petersen_file, "color"))
        assert main(["verify", str(petersen_file), coloring, "--ell", "2"]) == EXIT_DATA

    def test_conflict_is_data_error(self, petersen_file, tmp_path):
        path = tmp_path / "flat.csv"
        pd.DataFrame({"vertex": range(10), "color": [0] * 10}).to_csv(path, index=False)
        assert main(["verify", str(petersen_file), str(path)]) == EXIT_DATA

    def test_wrong_vertex_count(self, petersen_file, tmp_path):
        path = tmp_path / "short.csv"
        pd.DataFrame({"vertex": range(3), "color": [0, 1, 2]}).to_csv(path, index=False)
        assert main(["verify", str(petersen_file), str(path)]) == EXIT_DATA

    def test_bad_columns(self, petersen_file, tmp_path):
        path = tmp_path / "cols.csv"
        path.write_text("v,c\n0,0\n")
        assert main(["verify", str(petersen_file), str(path)]) == EXIT_DATA


class TestExitCodes:
    def test_unknown_flag(self, petersen_file):
        assert main(["color", str(petersen_file), "--frobnicate"]) == EXIT_USAGE

    def test_missing_subcommand(self):
        assert main([]) == EXIT_USAGE

    def test_help(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "weights-search" in capsys.readouterr().out

    def test_missing_file(self, tmp_path):
        assert main(["color", str(tmp_path / "absent.mtx")]) == EXIT_DATA

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.mtx"
        path.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 2\n")
        assert main(["color", str(path)]) == EXIT_DATA

    def test_invalid_alpha(self, petersen_file, capsys):
        assert main(["metrics", str(petersen_file), "--alpha", "1.5"]) == EXIT_USAGE
        assert "PAGERANK_ALPHA" in capsys.readouterr().err

    def test_bad_closeness_flag(self, petersen_file):
        assert main(["metrics", str(petersen_file), "--closeness", "fast"]) == EXIT_USAGE

    def test_huge_declared_entry_count(self, tmp_path):
        path = tmp_path / "huge.mtx"
        path.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1000000000000000\n2 1\n")
        assert main(["color", str(path)]) == EXIT_DATA

    def test_memory_error_is_data_error(self, petersen_file, capsys):
        with patch("graphcolor.cli.read_graph_file", side_effect=MemoryError("Unable to allocate")):
            assert main(["color", str(petersen_file)]) == EXIT_DATA
        assert "Unable to allocate" in capsys.readouterr().err


class TestMetrics:
    def test_selected_metrics(self, petersen_file, tmp_path):
        out = tmp_path / "m.csv"
        args = ["metrics", str(petersen_file), "--metric", "degree", "--metric", "pagerank", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["vertex", "degree", "pagerank"]
        assert frame["degree"].tolist() == [3] * 10
        assert frame["pagerank"].sum() == pytest.approx(1.0)

    def test_all_metrics_by_default(self, petersen_file):
        assert main(["metrics", str(petersen_file), "--threads", "1"]) == EXIT_OK
        frame = pd.read_csv(default_output(petersen_file, "metrics"))
        assert list(frame.columns) == ["vertex", "degree", "nbor2", "nbor3", "closeness", "clustering", "pagerank"]


class TestExact:
    def test_prints_chi_and_caches(self, petersen_file, capsys):
        assert main(["exact", str(petersen_file)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "3"
        cache = json.loads(petersen_file.with_name("petersen.chi.json").read_text())
        assert cache["chi"] == 3 and cache["timed_out"] is False

    def test_budget_exhausted(self, tmp_path, capsys):
        nxg = nx.mycielski_graph(5)
        path = tmp_path / "m5.mtx"
        path.write_text(format_matrix_market(from_edge_list(nxg.number_of_nodes(), list(nxg.edges()))))
        assert main(["exact", str(path), "--budget", "1", "--force"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("chi <= ")


class TestBench:
    def test_degree_baseline_all_strategies(self, small_corpus, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        args = ["bench", "--corpus", str(small_corpus), "--baseline", "degree", "--strategies", "all", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        frame = pd.read_csv(out)
        assert len(frame) == 6 * 9
        assert (frame[frame.strategy == "degree"]["ratio"] == 1.0).all()
        assert frame["runtime_ms"].isna().all()
        printed = dict(line.split("\t") for line in capsys.readouterr().out.strip().split("\n"))
        assert printed["degree"] == "1.0000"
        assert len(printed) == 9

    def test_optimal_baseline_solves_missing(self, small_corpus, tmp_path):
        out = tmp_path / "bench.json"
        args = [
            "bench", "--corpus", str(small_corpus), "--baseline", "optimal", "--solve-missing",
            "--strategies", "degree", "closeness", "--format", "json", "--out", str(out), "--threads", "1",
        ]
        assert main(args) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["excluded"] == []
        assert all(r["ratio"] >= 1.0 for g in report["per_graph"] for r in g["results"])

    def test_optimal_baseline_without_cache_excludes_all(self, small_corpus, tmp_path):
        out = tmp_path / "bench.json"
        args = ["bench", "--corpus", str(small_corpus), "--baseline", "optimal", "--strategies", "degree", "--format", "json", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["per_graph"] == [] and len(report["excluded"]) == 6

    def test_timings_flag(self, small_corpus, tmp_path):
        out = tmp_path / "bench.csv"
        args = ["bench", "--corpus", str(small_corpus), "--strategies", "degree", "--timings", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        assert pd.read_csv(out)["runtime_ms"].notna().all()

    def test_missing_corpus(self, tmp_path):
        assert main(["bench", "--corpus", str(tmp_path / "none")]) == EXIT_DATA

    def test_bad_strategy_is_usage_error(self, small_corpus, tmp_path, capsys):
        out = tmp_path / "bench.csv"
        args = ["bench", "--corpus", str(small_corpus), "--strategies", "degree", "bogus", "--out", str(out)]
        assert main(args) == EXIT_USAGE
        assert "--strategies" in capsys.readouterr().err
        assert not out.exists()

    def test_pair_block(self, small_corpus, tmp_path):
        out = tmp_path / "bench.tsv"
        args = [
            "bench", "--corpus", str(small_corpus), "--strategies", "degree", "pagerank", "--format", "scatter",
            "--pair", "pagerank/degree", "--out", str(out), "--threads", "1",
        ]
        assert main(args) == EXIT_OK
        text = out.read_text()
        assert text.count("# strategy=") == 2
        assert text.count("# pair=") == 1
        block = text.split("# pair=pagerank/degree\n")[1].strip().split("\n")
        assert block[0] == "rank\tratio"
        assert len(block) == 7

    def test_pair_outside_strategies_is_usage_error(self, small_corpus, tmp_path):
        out = tmp_path / "bench.tsv"
        args = ["bench", "--corpus", str(small_corpus), "--strategies", "degree", "--pair", "closeness/degree", "--out", str(out)]
        assert main(args) == EXIT_USAGE
        assert not out.exists()

    def test_malformed_pair_is_usage_error(self, small_corpus):
        assert main(["bench", "--corpus", str(small_corpus), "--pair", "closeness"]) == EXIT_USAGE


class TestWeightsSearch:
    def test_step_one_writes_best(self, small_corpus, tmp_path, capsys):
        out = tmp_path / "grid.csv"
        args = ["weights-search", "--corpus", str(small_corpus), "--solve-missing", "--grid-step", "1.0", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["w_degree", "w_nbor2", "w_nbor3", "w_closeness", "w_clustering", "w_pagerank", "geomean"]
        assert len(frame) == 1
        assert frame.iloc[0, :6].sum() == 1.0
        assert capsys.readouterr().out.startswith("weighted:")

    def test_trace(self, small_corpus, tmp_path):
        out = tmp_path / "grid.csv"
        args = ["weights-search", "--corpus", str(small_corpus), "--baseline", "degree", "--grid-step", "0.5", "--trace", "--out", str(out), "--threads", "1"]
        assert main(args) == EXIT_OK
        assert len(pd.read_csv(out)) == 21

    def test_bad_grid_step(self, small_corpus):
        assert main(["weights-search", "--corpus", str(small_corpus), "--grid-step", "0.3", "--baseline", "degree"]) == EXIT_DATA


class TestHelpers:
    def test_default_output(self):
        assert str(default_output("graphs/can_24.mtx", "color")) == "graphs/can_24.mtx.color.csv"
        assert str(default_output("corpus/small/", "bench", "json")) == "corpus/small.bench.json"
        assert str(default_output("corpus", "bench", "scatter")) == "corpus.bench.tsv"

    def test_all_strategies(self):
        specs = all_strategies()
        assert [s.label for s in specs] == [
            "degree", "nbor2", "nbor3", "closeness", "clustering", "pagerank", "random", "uniform", "weighted",
        ]
        assert parse_strategies(["all", "closeness:sampled=10"])[-1].label == "closeness:sampled=10"
        assert parse_strategies(["random:seed=4"])[0].strategy == Strategy.RANDOM
        spec = OrderingSpec.parse("pagerank")
        assert parse_strategies([spec, "all"])[0] is spec

    def test_effective_settings_overrides(self):
        args = argparse.Namespace(alpha=0.9, pr_iters=30, closeness=("sampled", 50), seeds=[4, 5], threads=2, timings=True)
        s = effective_settings(args, base=Settings())
        assert s.PAGERANK_ALPHA == 0.9
        assert s.PAGERANK_ITERATIONS == 30
        assert s.CLOSENESS_MODE == "sampled" and s.CLOSENESS_SAMPLES == 50
        assert s.RANDOM_SEEDS == [4, 5]
        assert s.effective_threads == 2
        assert s.RECORD_TIMINGS is True

    def test_effective_settings_keeps_base(self):
        base = Settings()
        assert effective_settings(argparse.Namespace(), base=base) == base
