import json
from pathlib import Path

import numpy as np
import pandas as pd

from graphcolor.coloring import Coloring
from graphcolor.metrics import MetricVector
from graphcolor.schemas import ColoringSummary

# 17 significant digits round-trip any float64 exactly
FLOAT_FORMAT = "%.17g"


def metric_frame(vectors: list[MetricVector]) -> pd.DataFrame:
    """One row per vertex, one column per metric."""
    frame = pd.DataFrame({"vertex": np.arange(len(vectors[0]) if vectors else 0)})
    for vec in vectors:
        frame[vec.metric] = vec.values
    return frame


def write_metrics_csv(path: str | Path, vectors: list[MetricVector]) -> Path:
    path = Path(path)
    metric_frame(vectors).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_coloring_csv(path: str | Path, coloring: Coloring) -> Path:
    path = Path(path)
    frame = pd.DataFrame({"vertex": np.arange(len(coloring.colors)), "color": coloring.colors})
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_coloring_csv(path: str | Path) -> Coloring:
    frame = pd.read_csv(path)
    if list(frame.columns) != ["vertex", "color"]:
        raise ValueError(f"{path}: expected columns vertex,color, got {list(frame.columns)}")
    frame = frame.sort_values("vertex")
    if not np.array_equal(frame["vertex"].to_numpy(), np.arange(len(frame))):
        raise ValueError(f"{path}: vertex column must list 0..n-1")
    return Coloring.from_colors(frame["color"].to_numpy())


def summary_json(summary: ColoringSummary) -> str:
    return json.dumps(summary.model_dump(), indent=2, sort_keys=True) + "\n"
