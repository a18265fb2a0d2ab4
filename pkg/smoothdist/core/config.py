"""
Configuration management for smoothdist.
"""

import os
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import yaml
from dotenv import load_dotenv

from .errors import ConfigError
from .logger import get_logger

logger = get_logger(__name__)


def _to_bool(value: str) -> bool:
    return value.lower() in ("true", "1", "yes", "on")


# env var -> (section, key, coercion)
ENV_MAPPINGS: Dict[str, Tuple[str, str, Callable[[str], Any]]] = {
    "SMOOTHDIST_DEBUG": ("app", "debug", _to_bool),
    "SMOOTHDIST_LOG_LEVEL": ("logging", "level", str),
    "SMOOTHDIST_COLORS": ("display", "colors", _to_bool),
    "SMOOTHDIST_PHI_H": ("phi", "h", float),
    "SMOOTHDIST_PHI_K": ("phi", "k", int),
    "SMOOTHDIST_EPS": ("metric", "eps", float),
    "SMOOTHDIST_SIGMA": ("metric", "sigma", float),
    "SMOOTHDIST_TOL": ("solver", "tol", float),
    "SMOOTHDIST_MAX_ITER": ("solver", "max_iter", int),
    "SMOOTHDIST_ANDERSON": ("solver", "anderson", int),
    "SMOOTHDIST_SWEEP_TOL": ("sweep", "tol", float),
    "SMOOTHDIST_SEED": ("bench", "seed", int),
}


class Config:
    """Configuration manager for the library and the CLI."""

    def __init__(self, config_file: Optional[str] = None) -> None:
        """
        Initialize configuration.

        Args:
            config_file: Optional path to a YAML configuration file
        """
        if config_file is None:
            config_file = "config.yaml"

        self.config_file = config_file
        self.config_data: Dict[str, Any] = {}

        load_dotenv()
        self._load_config()

    @staticmethod
    def defaults() -> Dict[str, Any]:
        """Return a fresh copy of the built-in defaults."""
        return {
            "app": {
                "name": "smoothdist",
                "version": "0.1.0",
                "debug": False,
            },
            "logging": {
                "level": "INFO",
                "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            },
            "display": {
                "colors": True,
            },
            "phi": {
                "h": 0.1,
                "k": 2,
            },
            "metric": {
                "eps": 0.01,
                "sigma": 0.989,
                "weight_margin": 0.2,
                "subset_method": "enumerate",
                "target_margin": 0.0,
                "calibration_samples": 10000,
            },
            "solver": {
                "tol": 1e-3,
                "max_iter": 5000,
                "certify": True,
                "anderson": 5,
            },
            "sweep": {
                "tol": 1e-9,
                "max_iter": 50000,
            },
            "euclid": {
                "tol": 1e-9,
                "max_iter": 10000,
            },
            "bench": {
                "n_pairs": 1000,
                "dim": 3,
                "n_ineq": 10,
                "min_dist": 0.05,
                "scale": 1.0,
                "seed": 0,
                "calibrate": True,
                "calibration_samples": 2000,
            },
        }

    def _load_config(self) -> None:
        """Load configuration from defaults, file and environment."""
        self.config_data = self.defaults()

        if self.config_file and Path(self.config_file).exists():
            self._load_from_file(self.config_file)

        self._load_from_env()

    def _load_from_file(self, config_file: str) -> None:
        """Load configuration from YAML file."""
        try:
            with open(config_file, "r", encoding="utf-8") as f:
                file_config = yaml.safe_load(f)
        except (OSError, yaml.YAMLError) as e:
            logger.warning("Could not load config file %s: %s", config_file, e)
            return

        if file_config:
            if not isinstance(file_config, dict):
                raise ConfigError(f"Config file {config_file} must contain a mapping")
            self._merge_config(self.config_data, file_config)

    def _load_from_env(self) -> None:
        """Load configuration from environment variables."""
        for env_var, (section, key, coerce) in ENV_MAPPINGS.items():
            raw = os.getenv(env_var)
            if raw is None:
                continue
            try:
                value = coerce(raw)
            except ValueError as e:
                raise ConfigError(f"{env_var}={raw!r} is not valid: {e}") from e
            self.config_data.setdefault(section, {})[key] = value

    def _merge_config(self, base: Dict[str, Any], override: Dict[str, Any]) -> None:
        """Recursively merge configuration dictionaries."""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                self._merge_config(base[key], value)
            else:
                base[key] = value

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value using dot notation.

        Args:
            key: Configuration key (e.g., 'solver.tol')
            default: Default value if key not found

        Returns:
            Configuration value
        """
        value: Any = self.config_data
        try:
            for k in key.split("."):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value using dot notation.

        Args:
            key: Configuration key (e.g., 'metric.eps')
            value: Value to set
        """
        keys = key.split(".")
        config = self.config_data

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def save(self, config_file: Optional[str] = None) -> None:
        """
        Save configuration to file.

        Args:
            config_file: Optional path (uses the loaded file if not provided)
        """
        if not config_file:
            config_file = self.config_file or "config.yaml"

        try:
            with open(config_file, "w", encoding="utf-8") as f:
                yaml.dump(self.config_data, f, default_flow_style=False, indent=2)
        except OSError as e:
            raise ConfigError(f"Could not save config to {config_file}: {e}") from e

    def to_dict(self) -> Dict[str, Any]:
        """Return configuration as dictionary."""
        return self.config_data.copy()
