"""Typed records shared by the ordering, exact and benchmark layers."""

from __future__ import annotations

import math
import re
from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator


class Strategy(str, Enum):
    DEGREE = "degree"
    NBOR2 = "nbor2"
    NBOR3 = "nbor3"
    CLOSENESS = "closeness"
    CLUSTERING = "clustering"
    PAGERANK = "pagerank"
    RANDOM = "random"
    UNIFORM = "uniform"
    WEIGHTED = "weighted"


# Single-metric strategies, in WeightVector component order
METRIC_STRATEGIES: tuple[Strategy, ...] = (
    Strategy.DEGREE,
    Strategy.NBOR2,
    Strategy.NBOR3,
    Strategy.CLOSENESS,
    Strategy.CLUSTERING,
    Strategy.PAGERANK,
)
ALL_STRATEGIES: tuple[Strategy, ...] = METRIC_STRATEGIES + (Strategy.RANDOM, Strategy.UNIFORM, Strategy.WEIGHTED)


class PageRankParams(BaseModel):
    alpha: float = 0.85
    iterations: int = 20

    @field_validator("alpha")
    @classmethod
    def _alpha_open_interval(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {v}")
        return v

    @field_validator("iterations")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError(f"iterations must be >= 1, got {v}")
        return v


class WeightVector(BaseModel):
    """Nonnegative metric weights summing to 1 (component order: degree, nbor2, nbor3, closeness, clustering, pagerank)."""

    model_config = {"frozen": True}

    w_degree: float = 0.0
    w_nbor2: float = 0.0
    w_nbor3: float = 0.0
    w_closeness: float = 0.0
    w_clustering: float = 0.0
    w_pagerank: float = 0.0

    @model_validator(mode="after")
    def _simplex(self) -> "WeightVector":
        ws = self.as_tuple()
        if any(w < 0 or not math.isfinite(w) for w in ws):
            raise ValueError(f"weights must be finite and >= 0, got {ws}")
        if abs(sum(ws) - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(ws)!r}")
        return self

    def as_tuple(self) -> tuple[float, ...]:
        return (self.w_degree, self.w_nbor2, self.w_nbor3, self.w_closeness, self.w_clustering, self.w_pagerank)

    @classmethod
    def from_sequence(cls, ws) -> "WeightVector":
        ws = [float(w) for w in ws]
        if len(ws) != 6:
            raise ValueError(f"expected 6 weights, got {len(ws)}")
        return cls(
            w_degree=ws[0], w_nbor2=ws[1], w_nbor3=ws[2],
            w_closeness=ws[3], w_clustering=ws[4], w_pagerank=ws[5],
        )

    @classmethod
    def uniform(cls) -> "WeightVector":
        return cls.from_sequence([1.0 / 6.0] * 6)

    @classmethod
    def one_hot(cls, strategy: Strategy) -> "WeightVector":
        ws = [0.0] * 6
        ws[METRIC_STRATEGIES.index(strategy)] = 1.0
        return cls.from_sequence(ws)


# Best weights reported for the small exact-baseline corpus
REFERENCE_WEIGHTS = WeightVector.from_sequence([0.10, 0.05, 0.10, 0.70, 0.05, 0.00])

_SAMPLED_RE = re.compile(r"^sampled(?:[:=](\d+))?$")


class OrderingSpec(BaseModel):
    """Strategy identifier plus the parameters needed to produce a vertex permutation."""

    model_config = {"frozen": True}

    strategy: Strategy
    weights: WeightVector | None = None
    seed: int | None = None  # random only; None -> the configured seed list
    closeness_mode: str | None = None  # "exact" | "sampled"; None -> Settings.CLOSENESS_MODE
    samples: int | None = None

    @model_validator(mode="after")
    def _required_parameters(self) -> "OrderingSpec":
        if self.strategy == Strategy.WEIGHTED and self.weights is None:
            raise ValueError("weighted ordering requires weights")
        if self.closeness_mode not in (None, "exact", "sampled"):
            raise ValueError(f"closeness_mode must be 'exact' or 'sampled', got {self.closeness_mode!r}")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be >= 1")
        return self

    @property
    def label(self) -> str:
        """Report column name; random specs share one label across seeds."""
        if self.strategy == Strategy.CLOSENESS and self.closeness_mode == "sampled":
            return self.to_cli()
        return self.strategy.value

    @classmethod
    def parse(cls, text: str) -> "OrderingSpec":
        """
        Parse CLI strings: ``closeness``, ``closeness:sampled=100``, ``random:seed=42``,
        ``weighted:0.1,0.05,0.1,0.7,0.05,0.0``, ``weighted:reference``, ``uniform``.
        """
        name, _, arg = text.strip().partition(":")
        try:
            strategy = Strategy(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown ordering strategy {name!r}") from None
        arg = arg.strip()
        if strategy == Strategy.WEIGHTED:
            if not arg:
                raise ValueError("weighted ordering needs weights, e.g. weighted:0.1,0.05,0.1,0.7,0.05,0.0")
            weights = REFERENCE_WEIGHTS if arg == "reference" else WeightVector.from_sequence(arg.split(","))
            return cls(strategy=strategy, weights=weights)
        if strategy == Strategy.RANDOM:
            if not arg:
                return cls(strategy=strategy)
            if not arg.startswith("seed="):
                raise ValueError(f"bad random parameter {arg!r}; use seed=<int>")
            return cls(strategy=strategy, seed=int(arg.removeprefix("seed=")))
        if strategy == Strategy.CLOSENESS and arg:
            if arg == "exact":
                return cls(strategy=strategy, closeness_mode="exact")
            m = _SAMPLED_RE.match(arg)
            if not m:
                raise ValueError(f"bad closeness mode {arg!r}; use exact or sampled=<k>")
            return cls(strategy=strategy, closeness_mode="sampled", samples=int(m.group(1)) if m.group(1) else None)
        if arg:
            raise ValueError(f"strategy {strategy.value!r} takes no parameters, got {arg!r}")
        return cls(strategy=strategy)

    def to_cli(self) -> str:
        if self.strategy == Strategy.WEIGHTED:
            return "weighted:" + ",".join(repr(w) for w in self.weights.as_tuple())
        if self.strategy == Strategy.RANDOM and self.seed is not None:
            return f"random:seed={self.seed}"
        if self.strategy == Strategy.CLOSENESS and self.closeness_mode:
            if self.closeness_mode == "sampled" and self.samples:
                return f"closeness:sampled={self.samples}"
            return f"closeness:{self.closeness_mode}"
        return self.strategy.value


class ColoringSummary(BaseModel):
    strategy: str
    ell: int
    num_colors: int
    runtime_ms: float | None = None


class ChiCache(BaseModel):
    """Sidecar ``<name>.chi.json`` contents."""

    graph: str
    n: int
    m: int
    chi: int
    colors: list[int]
    nodes_explored: int
    timed_out: bool
    budget: int
    lower_bound: int = 0  # greedy clique size
