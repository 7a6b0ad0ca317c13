"""
Unit tests for graphcolor.utils: metric and coloring CSV files, summary JSON.
"""
import json

import numpy as np
import pytest

from graphcolor.coloring import Coloring
from graphcolor.metrics import MetricVector
from graphcolor.schemas import ColoringSummary
from graphcolor.utils import metric_frame, read_coloring_csv, summary_json, write_coloring_csv, write_metrics_csv


class TestMetricsCsv:
    def test_columns_and_exact_floats(self, tmp_path):
        vectors = [MetricVector("degree", np.array([1.0, 2.0])), MetricVector("closeness", np.array([1 / 3, 0.1]))]
        path = write_metrics_csv(tmp_path / "m.csv", vectors)
        lines = path.read_text().splitlines()
        assert lines[0] == "vertex,degree,closeness"
        assert float(lines[1].split(",")[2]) == 1 / 3

    def test_empty(self):
        assert len(metric_frame([])) == 0


class TestColoringCsv:
    def test_write_then_read(self, tmp_path):
        coloring = Coloring.from_colors([0, 1, 0, 2])
        path = write_coloring_csv(tmp_path / "c.csv", coloring)
        assert path.read_text().splitlines()[0] == "vertex,color"
        assert read_coloring_csv(path).colors.tolist() == [0, 1, 0, 2]

    def test_rejects_wrong_columns(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("node,color\n0,0\n")
        with pytest.raises(ValueError, match="columns"):
            read_coloring_csv(path)

    def test_rejects_gaps(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("vertex,color\n0,0\n2,1\n")
        with pytest.raises(ValueError, match="0..n-1"):
            read_coloring_csv(path)


def test_summary_json_sorted_keys():
    text = summary_json(ColoringSummary(strategy="degree", ell=1, num_colors=4))
    assert json.loads(text) == {"ell": 1, "num_colors": 4, "runtime_ms": None, "strategy": "degree"}
    assert text.index('"ell"') < text.index('"strategy"')
