"""Configuration management for the workbench."""

import logging
import math
import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


@dataclass
class RuntimeConfig:
    """Process-level settings."""

    threads: int = 1
    backend: str = "process"
    log_level: str = "INFO"
    log_file: Optional[str] = None


@dataclass
class ToleranceConfig:
    """Numerical tolerances shared by the experiments."""

    loss_tolerance: float = 1e-9
    phase_certification: float = 1e-5
    phase_amplitude: float = 1e-8


@dataclass
class SearchConfig:
    """Defaults of the multi-start penalty search."""

    coupling_bound: float = 10.0
    duration_bound: float = 2 * math.pi
    penalty_start: float = 1e2
    penalty_stop: float = 1e8
    penalty_factor: float = 10.0
    max_evaluations_per_stage: int = 400
    xatol: float = 1e-10
    fatol: float = 1e-14


class ConfigManager:
    """Manages workbench configuration from environment variables."""

    def __init__(self, env_file: Optional[str] = None):
        """
        Initialize configuration manager.

        Args:
            env_file: Path to .env file (optional)
        """
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

    def get_runtime_config(self) -> RuntimeConfig:
        """Get process-level configuration."""
        return RuntimeConfig(
            threads=self._get_int("PHOTON_EXCHANGE_THREADS", 1),
            backend=os.getenv("PHOTON_EXCHANGE_BACKEND") or "process",
            log_level=os.getenv("PHOTON_EXCHANGE_LOG_LEVEL", "INFO"),
            log_file=os.getenv("PHOTON_EXCHANGE_LOG_FILE") or None,
        )

    def get_tolerance_config(self) -> ToleranceConfig:
        """Get numerical tolerances."""
        return ToleranceConfig(
            loss_tolerance=self._get_float("PHOTON_EXCHANGE_LOSS_TOLERANCE", 1e-9),
            phase_certification=self._get_float("PHOTON_EXCHANGE_PHASE_CERTIFICATION", 1e-5),
            phase_amplitude=self._get_float("PHOTON_EXCHANGE_PHASE_AMPLITUDE", 1e-8),
        )

    def get_search_config(self) -> SearchConfig:
        """Get search defaults."""
        return SearchConfig(
            coupling_bound=self._get_float("PHOTON_EXCHANGE_COUPLING_BOUND", 10.0),
            duration_bound=self._get_float("PHOTON_EXCHANGE_DURATION_BOUND", 2 * math.pi),
            max_evaluations_per_stage=self._get_int("PHOTON_EXCHANGE_MAX_EVALUATIONS", 400),
        )

    def _get_int(self, key: str, default: int) -> int:
        value = os.getenv(key)
        if value is None or value == "":
            return default
        try:
            return int(value)
        except ValueError:
            raise ValueError(f"Environment variable '{key}' must be an integer, got {value!r}")

    def _get_float(self, key: str, default: float) -> float:
        value = os.getenv(key)
        if value is None or value == "":
            return default
        try:
            return float(value)
        except ValueError:
            raise ValueError(f"Environment variable '{key}' must be a number, got {value!r}")

    def validate_config(self) -> bool:
        """
        Validate the environment configuration.

        Returns:
            True if configuration is valid, False otherwise
        """
        try:
            runtime = self.get_runtime_config()
            tolerances = self.get_tolerance_config()
            search = self.get_search_config()
        except ValueError as e:
            logger.error(f"Configuration validation failed: {e}")
            return False

        if runtime.threads < 1:
            logger.error(
                f"Configuration validation failed: PHOTON_EXCHANGE_THREADS must be >= 1, "
                f"got {runtime.threads}"
            )
            return False
        if runtime.backend not in ("thread", "process"):
            logger.error(
                f"Configuration validation failed: PHOTON_EXCHANGE_BACKEND must be thread or process, "
                f"got {runtime.backend!r}"
            )
            return False
        if not isinstance(logging.getLevelName(runtime.log_level.upper()), int):
            logger.error(f"Configuration validation failed: unknown log level {runtime.log_level!r}")
            return False
        for name, value in vars(tolerances).items():
            if not value > 0:
                logger.error(f"Configuration validation failed: tolerance {name} must be positive, got {value}")
                return False
        if search.coupling_bound < 0 or search.duration_bound < 0 or search.max_evaluations_per_stage < 1:
            logger.error(f"Configuration validation failed: invalid search defaults {search}")
            return False
        return True
