"""
Experiment configuration files.

One pydantic model per CLI command. Files are JSON, or YAML when the suffix
is .yaml/.yml; both canonicalize to the same sorted, indented JSON. Complex
numbers are written as [re, im] or a bare real.
"""

import json
import logging
import math
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    TypeAdapter,
    ValidationError,
    field_validator,
    model_validator,
)

from ..errors import ConfigError, DomainError
from ..observables import MAIN_PROBE, PROBES, Variant
from ..sector import DickeModel

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
COMMANDS = ("evolve", "tradeoff", "nogo-cert", "scaling", "bs", "ns")
YAML_SUFFIXES = {".yaml", ".yml"}


def _parse_n_atoms(value: Any) -> Union[int, str]:
    if isinstance(value, bool):
        raise ValueError("atom number must be a positive integer or 'inf'")
    try:
        model = DickeModel.from_label(value)
    except (DomainError, TypeError) as e:
        raise ValueError(str(e))
    return "inf" if model.is_bosonic else model.n_atoms


def _parse_complex(value: Any) -> complex:
    if isinstance(value, bool):
        raise ValueError("expected a real number or [re, im]")
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2 and not any(isinstance(v, bool) for v in value):
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, complex):
        return value
    raise ValueError("expected a real number or [re, im]")


NAtoms = Annotated[Union[int, str], BeforeValidator(_parse_n_atoms)]
ComplexValue = Annotated[
    Any,
    BeforeValidator(_parse_complex),
    PlainSerializer(lambda z: [z.real, z.imag], return_type=list),
]
Occupation = Tuple[int, int, int]


class _ExperimentBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    schema_version: int

    @field_validator("schema_version")
    @classmethod
    def _check_schema_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {value}, this build reads {SCHEMA_VERSION}")
        return value


class SegmentConfig(BaseModel):
    """One pulse segment."""

    model_config = ConfigDict(extra="forbid")

    g1: float
    g2: float
    duration: float = Field(ge=0)


class _SearchFields(BaseModel):
    n_segments: int = Field(default=8, ge=1)
    coupling_bound: float = Field(default=10.0, ge=0)
    duration_bound: float = Field(default=2 * math.pi, ge=0)
    seed: int = Field(default=0, ge=0, le=2**64 - 1)
    restarts: int = Field(default=64, ge=1)
    max_evaluations_per_stage: int = Field(default=400, ge=1)


class EvolveConfig(_ExperimentBase):
    """Run the phase probes (and one initial state) through a pulse sequence."""

    command: Literal["evolve"] = "evolve"
    n_atoms: NAtoms = "inf"
    variant: Variant = Variant.TWO_MODE
    segments: List[SegmentConfig] = Field(default_factory=list)
    # defaults to the two-photon probe of the variant
    initial: Optional[Occupation] = None

    @model_validator(mode="after")
    def _default_initial(self) -> "EvolveConfig":
        if self.initial is None:
            self.initial = PROBES[self.variant][MAIN_PROBE[self.variant]][0]
        return self


class TradeoffConfig(_ExperimentBase, _SearchFields):
    """Best |phi_NL| per loss budget."""

    command: Literal["tradeoff"] = "tradeoff"
    n_atoms: NAtoms = "inf"
    variant: Variant = Variant.TWO_MODE
    budgets: List[float] = Field(min_length=1)

    @field_validator("budgets")
    @classmethod
    def _check_budgets(cls, value: List[float]) -> List[float]:
        if any(b < 0 for b in value):
            raise ValueError("budgets must be non-negative")
        if any(b2 < b1 for b1, b2 in zip(value, value[1:])):
            raise ValueError("budgets must be sorted ascending")
        return value


class NogoCertConfig(_ExperimentBase, _SearchFields):
    """Loss-free certification over a model grid."""

    command: Literal["nogo-cert"] = "nogo-cert"
    models: List[NAtoms] = Field(default_factory=lambda: [2, 4, 8, "inf"], min_length=1)
    variants: List[Variant] = Field(default_factory=lambda: [Variant.TWO_MODE, Variant.ONE_MODE], min_length=1)
    samples: int = Field(default=0, ge=0)
    phase_threshold: float = Field(default=1e-5, gt=0)


class ScalingConfig(_ExperimentBase):
    """Coupling-product table M(N)."""

    command: Literal["scaling"] = "scaling"
    n_values: List[int] = Field(default_factory=lambda: [2**k for k in range(11)], min_length=1)
    eps: float = 1.0

    @field_validator("n_values")
    @classmethod
    def _check_n_values(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("atom numbers must be at least 1")
        return value


class BeamSplitterConfig(_ExperimentBase):
    """Absorption statistics of a lossy beam splitter against distinguishability."""

    command: Literal["bs"] = "bs"
    t: ComplexValue = complex(0.5, 0.0)
    r: ComplexValue = complex(0.5, 0.0)
    d_values: List[float] = Field(default_factory=lambda: [k / 10 for k in range(11)], min_length=1)

    @field_validator("d_values")
    @classmethod
    def _check_d_values(cls, value: List[float]) -> List[float]:
        if any(not 0.0 <= d <= 1.0 for d in value):
            raise ValueError("distinguishability values must lie in [0, 1]")
        return value


class NsGateConfig(_ExperimentBase):
    """Nonlinear-sign gate search."""

    command: Literal["ns"] = "ns"
    seed: int = Field(default=0, ge=0, le=2**64 - 1)
    restarts: int = Field(default=256, ge=1)
    fidelity_tolerance: float = Field(default=1e-9, gt=0)
    max_evaluations_per_stage: int = Field(default=2000, ge=1)


ExperimentConfig = Annotated[
    Union[EvolveConfig, TradeoffConfig, NogoCertConfig, ScalingConfig, BeamSplitterConfig, NsGateConfig],
    Field(discriminator="command"),
]
_ADAPTER: TypeAdapter = TypeAdapter(ExperimentConfig)


def _parse_text(text: str, suffix: str) -> Any:
    if suffix in YAML_SUFFIXES:
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            position = (mark.line + 1, mark.column + 1) if mark is not None else None
            raise ConfigError(f"Invalid YAML: {getattr(e, 'problem', None) or e}", position=position)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON: {e.msg}", position=(e.lineno, e.colno))


def _describe(error: ValidationError) -> Tuple[str, List[str]]:
    keys = []
    parts = []
    for item in error.errors():
        # Drop the union tag pydantic inserts for discriminated unions
        loc = [str(p) for p in item["loc"]][1:] if len(item["loc"]) > 1 else [str(p) for p in item["loc"]]
        key = ".".join(loc)
        keys.append(key)
        if item["type"] == "extra_forbidden":
            parts.append(f"unknown key '{key}'")
        else:
            parts.append(f"{key}: {item['msg']}")
    return "; ".join(parts), keys


def parse_experiment_config(data: Any, command: Optional[str] = None) -> BaseModel:
    """
    Validate a decoded config document.

    Args:
        data: Decoded JSON/YAML mapping
        command: Expected command; filled in when the document omits it

    Raises:
        ConfigError: On any schema violation
    """
    if not isinstance(data, dict):
        raise ConfigError(f"Config must be a mapping, got {type(data).__name__}")
    data = dict(data)
    if command is not None:
        if command not in COMMANDS:
            raise ConfigError(f"Unknown command {command!r}", keys=["command"])
        declared = data.setdefault("command", command)
        if declared != command:
            raise ConfigError(f"Config is for command {declared!r}, not {command!r}", keys=["command"])
    elif "command" not in data:
        raise ConfigError("Config does not name a command", keys=["command"])
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as e:
        message, keys = _describe(e)
        raise ConfigError(f"Invalid {data.get('command')} config: {message}", keys=keys)


def load_experiment_config(path: Union[str, Path], command: Optional[str] = None) -> BaseModel:
    """
    Read and validate an experiment config file.

    Raises:
        ConfigError: If the file is unreadable, malformed or fails validation
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}")
    config = parse_experiment_config(_parse_text(text, path.suffix.lower()), command)
    logger.debug(f"Loaded {config.command} config from {path}")
    return config


def config_to_dict(config: BaseModel) -> Dict[str, Any]:
    return config.model_dump(mode="json")


def canonicalize(config: BaseModel) -> str:
    """Sorted-key, two-space JSON with a trailing newline."""
    return json.dumps(config_to_dict(config), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def roundtrip_config(path: Union[str, Path], command: Optional[str] = None) -> str:
    """Parse a config file and return its canonical serialization."""
    return canonicalize(load_experiment_config(path, command))
