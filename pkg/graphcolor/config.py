from functools import lru_cache
from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load .env from the repository root so the CLI works when CWD is elsewhere (e.g. a corpus dir).
_REPO_ROOT = Path(__file__).resolve().parent.parent
_DOTENV_PATH = _REPO_ROOT / ".env"
_ENV_FILE_TUPLE = (str(_DOTENV_PATH),) if _DOTENV_PATH.is_file() else (".env",)


class Settings(BaseSettings):
    """Defaults for metrics, orderings, the exact solver and the benchmark."""

    # PageRank (fixed iteration count, no convergence threshold)
    PAGERANK_ALPHA: float = 0.85
    PAGERANK_ITERATIONS: int = 20

    # Closeness: "exact" or "sampled"
    CLOSENESS_MODE: str = "exact"
    CLOSENESS_SAMPLES: int = 100
    CLOSENESS_SEED: int = 0

    # Random strategy: one permutation per seed, averaged
    RANDOM_SEEDS: list[int] = [1, 2, 3, 4, 5]
    RANDOM_AVERAGING: str = "counts"  # "counts" or "ratios"

    # Exact solver
    EXACT_NODE_BUDGET: int = 10_000_000
    EXACT_TIME_LIMIT_S: float | None = None

    # Weight search / parallelism
    GRID_STEP: float = 0.05
    THREADS: int | None = None
    # Dense distance block size for batched BFS (rows * n doubles)
    BFS_BLOCK_ELEMENTS: int = 4_000_000

    # Reports carry runtime_ms only when enabled; off keeps reports byte-identical
    RECORD_TIMINGS: bool = False

    SUITESPARSE_BASE_URL: str = "https://suitesparse-collection-website.herokuapp.com"
    LOG_LEVEL: str = "INFO"

    model_config = SettingsConfigDict(
        env_file=_ENV_FILE_TUPLE,
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=True,
    )

    @field_validator("PAGERANK_ALPHA")
    @classmethod
    def _alpha_in_open_unit_interval(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError(f"PAGERANK_ALPHA must lie in (0, 1), got {v}")
        return v

    @field_validator("PAGERANK_ITERATIONS", "CLOSENESS_SAMPLES", "EXACT_NODE_BUDGET")
    @classmethod
    def _positive(cls, v: int, info) -> int:
        if v < 1:
            raise ValueError(f"{info.field_name} must be >= 1, got {v}")
        return v

    @field_validator("GRID_STEP")
    @classmethod
    def _step_in_unit_interval(cls, v: float) -> float:
        if not 0.0 < v <= 1.0:
            raise ValueError(f"GRID_STEP must lie in (0, 1], got {v}")
        return v

    @field_validator("CLOSENESS_MODE")
    @classmethod
    def _known_closeness_mode(cls, v: str) -> str:
        if v not in ("exact", "sampled"):
            raise ValueError(f"CLOSENESS_MODE must be 'exact' or 'sampled', got {v!r}")
        return v

    @field_validator("RANDOM_AVERAGING")
    @classmethod
    def _known_averaging(cls, v: str) -> str:
        if v not in ("counts", "ratios"):
            raise ValueError(f"RANDOM_AVERAGING must be 'counts' or 'ratios', got {v!r}")
        return v

    @property
    def effective_threads(self) -> int:
        """joblib n_jobs value: THREADS when set, otherwise all cores (-1)."""
        return self.THREADS if self.THREADS else -1


settings = Settings()


@lru_cache()
def get_settings() -> Settings:
    return settings
