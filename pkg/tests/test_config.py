"""
Tests for configuration management.
"""

import pytest

from smoothdist.core.config import Config
from smoothdist.core.errors import ConfigError


class TestConfig:
    """Test cases for Config class."""

    def test_default_config(self, tmp_path):
        """Test default configuration values."""
        config = Config(config_file=str(tmp_path / "missing.yaml"))

        assert config.get("app.name") == "smoothdist"
        assert config.get("app.debug") is False
        assert config.get("phi.h") == 0.1
        assert config.get("phi.k") == 2
        assert config.get("metric.eps") == 0.01
        assert config.get("metric.sigma") == 0.989
        assert config.get("solver.tol") == 1e-3
        assert config.get("solver.max_iter") == 5000
        assert config.get("bench.n_pairs") == 1000
        assert config.get("bench.calibrate") is True
        assert config.get("solver.anderson") == 5
        assert config.get("sweep.tol") == 1e-9
        assert config.get("metric.subset_method") == "enumerate"
        assert config.get("euclid.max_iter") == 10000

    def test_set_and_get(self, tmp_path):
        """Test setting and getting configuration values."""
        config = Config(config_file=str(tmp_path / "missing.yaml"))

        config.set("solver.tol", 1e-4)
        assert config.get("solver.tol") == 1e-4

        config.set("nested.deep.key", "value")
        assert config.get("nested.deep.key") == "value"

    def test_get_with_default(self, tmp_path):
        """Test getting configuration with default value."""
        config = Config(config_file=str(tmp_path / "missing.yaml"))

        assert config.get("non.existent.key", "default") == "default"
        assert config.get("non.existent.key") is None
        assert config.get("phi.h.deeper", 7) == 7

    def test_environment_variables(self, tmp_path, monkeypatch):
        """Test loading configuration from environment variables."""
        monkeypatch.setenv("SMOOTHDIST_DEBUG", "true")
        monkeypatch.setenv("SMOOTHDIST_PHI_H", "0.2")
        monkeypatch.setenv("SMOOTHDIST_MAX_ITER", "250")
        monkeypatch.setenv("SMOOTHDIST_ANDERSON", "0")
        monkeypatch.setenv("SMOOTHDIST_SWEEP_TOL", "1e-10")
        monkeypatch.setenv("SMOOTHDIST_COLORS", "off")

        config = Config(config_file=str(tmp_path / "missing.yaml"))

        assert config.get("app.debug") is True
        assert config.get("phi.h") == 0.2
        assert config.get("solver.max_iter") == 250
        assert config.get("solver.anderson") == 0
        assert config.get("sweep.tol") == 1e-10
        assert config.get("display.colors") is False

    def test_invalid_environment_variable(self, tmp_path, monkeypatch):
        """Test that an unparsable environment value is rejected."""
        monkeypatch.setenv("SMOOTHDIST_PHI_K", "two")

        with pytest.raises(ConfigError, match="SMOOTHDIST_PHI_K"):
            Config(config_file=str(tmp_path / "missing.yaml"))

    def test_config_file(self, tmp_path):
        """Test loading configuration from file."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text(
            """
app:
  debug: true
phi:
  h: 0.05
  k: 3
solver:
  tol: 0.0001
""",
            encoding="utf-8",
        )

        config = Config(config_file=str(config_file))

        assert config.get("app.debug") is True
        assert config.get("phi.h") == 0.05
        assert config.get("phi.k") == 3
        assert config.get("solver.tol") == 0.0001
        # untouched keys keep their defaults
        assert config.get("solver.max_iter") == 5000
        assert config.get("metric.sigma") == 0.989

    def test_config_file_not_a_mapping(self, tmp_path):
        """Test that a YAML list at the top level is rejected."""
        config_file = tmp_path / "config.yaml"
        config_file.write_text("- 1\n- 2\n", encoding="utf-8")

        with pytest.raises(ConfigError, match="mapping"):
            Config(config_file=str(config_file))

    def test_save_config(self, tmp_path):
        """Test saving configuration to file."""
        config = Config(config_file=str(tmp_path / "missing.yaml"))
        config.set("metric.eps", 0.02)

        target = tmp_path / "saved.yaml"
        config.save(str(target))

        loaded_config = Config(config_file=str(target))
        assert loaded_config.get("metric.eps") == 0.02

    def test_to_dict(self, tmp_path):
        """Test converting configuration to dictionary."""
        config = Config(config_file=str(tmp_path / "missing.yaml"))
        config.set("test.key", "test_value")

        config_dict = config.to_dict()

        assert isinstance(config_dict, dict)
        assert config_dict["test"]["key"] == "test_value"
        assert config_dict["phi"]["k"] == 2
