"""
Unit tests for graphcolor.config: Settings and get_settings.
"""
import pytest
from pydantic import ValidationError

from graphcolor.config import Settings, get_settings, settings


class TestSettings:
    """Tests for Settings class."""

    def test_get_settings_returns_module_settings(self):
        assert get_settings() is settings

    def test_defaults(self):
        s = Settings()
        assert s.PAGERANK_ALPHA == 0.85
        assert s.PAGERANK_ITERATIONS == 20
        assert s.CLOSENESS_MODE == "exact"
        assert s.RANDOM_SEEDS == [1, 2, 3, 4, 5]
        assert s.RANDOM_AVERAGING == "counts"
        assert s.GRID_STEP == 0.05
        assert s.RECORD_TIMINGS is False

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("PAGERANK_ALPHA", "0.9")
        monkeypatch.setenv("RANDOM_SEEDS", "[7, 8]")
        s = Settings()
        assert s.PAGERANK_ALPHA == 0.9
        assert s.RANDOM_SEEDS == [7, 8]

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -0.1, 1.5])
    def test_alpha_outside_open_interval_rejected(self, alpha):
        with pytest.raises(ValidationError):
            Settings(PAGERANK_ALPHA=alpha)

    def test_unknown_closeness_mode_rejected(self):
        with pytest.raises(ValidationError):
            Settings(CLOSENESS_MODE="approx")

    def test_unknown_averaging_rejected(self):
        with pytest.raises(ValidationError):
            Settings(RANDOM_AVERAGING="median")

    def test_nonpositive_iterations_rejected(self):
        with pytest.raises(ValidationError):
            Settings(PAGERANK_ITERATIONS=0)

    def test_grid_step_bounds(self):
        with pytest.raises(ValidationError):
            Settings(GRID_STEP=0.0)
        assert Settings(GRID_STEP=1.0).GRID_STEP == 1.0

    def test_effective_threads(self):
        assert Settings(THREADS=None).effective_threads == -1
        assert Settings(THREADS=4).effective_threads == 4
