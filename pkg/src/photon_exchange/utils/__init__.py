"""Utility modules."""

from .config import ConfigManager, RuntimeConfig, SearchConfig, ToleranceConfig
from .logging import setup_logging
from .experiment_config import (
    SCHEMA_VERSION,
    BeamSplitterConfig,
    EvolveConfig,
    NogoCertConfig,
    NsGateConfig,
    ScalingConfig,
    TradeoffConfig,
    canonicalize,
    load_experiment_config,
    parse_experiment_config,
    roundtrip_config,
)
from .output import build_metadata, read_csv_metadata, write_csv, write_json

__all__ = [
    "ConfigManager",
    "RuntimeConfig",
    "SearchConfig",
    "ToleranceConfig",
    "setup_logging",
    "SCHEMA_VERSION",
    "BeamSplitterConfig",
    "EvolveConfig",
    "NogoCertConfig",
    "NsGateConfig",
    "ScalingConfig",
    "TradeoffConfig",
    "canonicalize",
    "load_experiment_config",
    "parse_experiment_config",
    "roundtrip_config",
    "build_metadata",
    "read_csv_metadata",
    "write_csv",
    "write_json",
]
