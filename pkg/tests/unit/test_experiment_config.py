"""Unit tests for experiment configuration files."""

import json

import pytest

from photon_exchange.errors import ConfigError
from photon_exchange.observables import Variant
from photon_exchange.utils import (
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
from tests.fixtures import write_config


class TestParseExperimentConfig:
    """Test parse_experiment_config."""

    @pytest.mark.parametrize(
        "command,model",
        [
            ("evolve", EvolveConfig),
            ("nogo-cert", NogoCertConfig),
            ("scaling", ScalingConfig),
            ("bs", BeamSplitterConfig),
            ("ns", NsGateConfig),
        ],
    )
    def test_defaults(self, command, model):
        """A bare schema version yields the command defaults."""
        config = parse_experiment_config({"schema_version": 1}, command)
        assert isinstance(config, model)
        assert config.command == command

    def test_evolve_fields(self):
        """Segments, model and initial state are parsed."""
        config = parse_experiment_config(
            {
                "schema_version": 1,
                "n_atoms": 2,
                "variant": "one-mode",
                "segments": [{"g1": 2.0, "g2": 0.0, "duration": 1.5}],
                "initial": [2, 0, 0],
            },
            "evolve",
        )
        assert config.n_atoms == 2
        assert config.variant is Variant.ONE_MODE
        assert config.segments[0].duration == 1.5
        assert config.initial == (2, 0, 0)

    @pytest.mark.parametrize("variant,expected", [("two-mode", (1, 1, 0)), ("one-mode", (2, 0, 0))])
    def test_evolve_initial_defaults_to_two_photon_probe(self, variant, expected):
        """The default initial state is the variant's two-photon probe and is serialized."""
        config = parse_experiment_config({"schema_version": 1, "variant": variant}, "evolve")
        assert config.initial == expected
        assert json.loads(canonicalize(config))["initial"] == list(expected)

    @pytest.mark.parametrize("label", ["inf", "∞", "INF"])
    def test_bosonic_labels(self, label):
        """Every spelling of infinity normalizes to 'inf'."""
        config = parse_experiment_config({"schema_version": 1, "n_atoms": label}, "evolve")
        assert config.n_atoms == "inf"

    def test_unknown_key(self):
        """Unknown keys are rejected by name."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config({"schema_version": 1, "segmnets": []}, "evolve")
        assert exc_info.value.keys == ["segmnets"]
        assert "unknown key 'segmnets'" in str(exc_info.value)

    def test_nested_key_path(self):
        """Errors inside lists carry the full key path."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config(
                {"schema_version": 1, "segments": [{"g1": 1, "g2": 0, "duration": -1}]}, "evolve"
            )
        assert exc_info.value.keys == ["segments.0.duration"]

    @pytest.mark.parametrize("data", [{}, {"schema_version": 2}])
    def test_schema_version(self, data):
        """schema_version is required and must be 1."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config(data, "scaling")
        assert "schema_version" in exc_info.value.keys

    def test_unsorted_budgets(self):
        """Tradeoff budgets must ascend."""
        with pytest.raises(ConfigError, match="ascending"):
            parse_experiment_config({"schema_version": 1, "budgets": [0.1, 0.01]}, "tradeoff")

    def test_missing_budgets(self):
        """Tradeoff runs need budgets."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config({"schema_version": 1}, "tradeoff")
        assert exc_info.value.keys == ["budgets"]

    def test_command_mismatch(self):
        """A config for one command cannot drive another."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config({"schema_version": 1, "command": "bs"}, "ns")
        assert exc_info.value.keys == ["command"]

    def test_command_required_without_hint(self):
        """Without an expected command the document must name one."""
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1})
        config = parse_experiment_config({"schema_version": 1, "command": "scaling"})
        assert isinstance(config, ScalingConfig)

    def test_not_a_mapping(self):
        """Top-level lists are rejected."""
        with pytest.raises(ConfigError):
            parse_experiment_config([1, 2], "bs")

    @pytest.mark.parametrize(
        "value,expected",
        [(0.5, complex(0.5, 0)), ([0.3, 0.4], complex(0.3, 0.4)), (1, complex(1, 0))],
    )
    def test_complex_values(self, value, expected):
        """Complex amplitudes accept reals and [re, im] pairs."""
        config = parse_experiment_config({"schema_version": 1, "t": value}, "bs")
        assert config.t == expected

    @pytest.mark.parametrize("value", ["0.5", [1, 2, 3], True])
    def test_bad_complex_values(self, value):
        """Anything else is rejected."""
        with pytest.raises(ConfigError) as exc_info:
            parse_experiment_config({"schema_version": 1, "t": value}, "bs")
        assert exc_info.value.keys == ["t"]

    def test_d_values_range(self):
        """Distinguishabilities outside [0, 1] are rejected."""
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1, "d_values": [0.0, 1.2]}, "bs")

    def test_seed_range(self):
        """Seeds are unsigned 64-bit integers."""
        parse_experiment_config({"schema_version": 1, "seed": 2**64 - 1}, "ns")
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1, "seed": 2**64}, "ns")
        with pytest.raises(ConfigError):
            parse_experiment_config({"schema_version": 1, "seed": -1}, "ns")


class TestLoadExperimentConfig:
    """Test reading config files."""

    def test_truncated_json_position(self, tmp_path):
        """Malformed JSON reports line and column."""
        path = tmp_path / "broken.json"
        path.write_text('{\n  "schema_version": 1,\n', encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            load_experiment_config(path, "scaling")
        assert exc_info.value.position is not None
        assert exc_info.value.position[0] == 3
        assert exc_info.value.to_dict()["line"] == 3

    def test_malformed_yaml_position(self, tmp_path):
        """Malformed YAML reports a position too."""
        path = tmp_path / "broken.yaml"
        path.write_text("schema_version: 1\nn_values: [1, 2\n", encoding="utf-8")
        with pytest.raises(ConfigError) as exc_info:
            load_experiment_config(path, "scaling")
        assert exc_info.value.position is not None

    def test_missing_file(self, tmp_path):
        """Unreadable files raise ConfigError."""
        with pytest.raises(ConfigError):
            load_experiment_config(tmp_path / "absent.json", "scaling")

    def test_yaml_equals_json(self, tmp_path):
        """The same document in YAML and JSON canonicalizes identically."""
        data = {
            "schema_version": 1,
            "n_atoms": 2,
            "variant": "two-mode",
            "budgets": [0.001, 0.01],
            "restarts": 4,
        }
        as_json = write_config(tmp_path, data, "tradeoff.json")
        as_yaml = write_config(tmp_path, data, "tradeoff.yml")
        assert roundtrip_config(as_json, "tradeoff") == roundtrip_config(as_yaml, "tradeoff")


class TestCanonicalize:
    """Test canonical serialization."""

    def test_idempotent(self, tmp_path):
        """Canonical output parses back to the same canonical output."""
        data = {"schema_version": 1, "t": [0.3, 0.4], "d_values": [0.0, 0.5, 1.0]}
        first = roundtrip_config(write_config(tmp_path, data, "bs.json"), "bs")
        second_path = tmp_path / "canonical.json"
        second_path.write_text(first, encoding="utf-8")
        assert roundtrip_config(second_path, "bs") == first

    def test_key_order_irrelevant(self):
        """Reordered keys give the same canonical text."""
        a = parse_experiment_config({"schema_version": 1, "eps": 0.5, "n_values": [2, 4]}, "scaling")
        b = parse_experiment_config({"n_values": [2, 4], "eps": 0.5, "schema_version": 1}, "scaling")
        assert canonicalize(a) == canonicalize(b)

    def test_format(self):
        """Sorted keys, two-space indent, trailing newline, complex as pairs."""
        text = canonicalize(parse_experiment_config({"schema_version": 1, "r": [0, 0.5]}, "bs"))
        assert text.endswith("}\n")
        assert '\n  "command": "bs"' in text
        data = json.loads(text)
        assert list(data) == sorted(data)
        assert data["r"] == [0.0, 0.5]
        assert data["t"] == [0.5, 0.0]

    def test_tradeoff_defaults_serialized(self):
        """Defaults are written out so a file fully specifies the run."""
        data = json.loads(canonicalize(parse_experiment_config({"schema_version": 1, "budgets": [0.1]}, "tradeoff")))
        assert data["n_segments"] == 8
        assert data["restarts"] == 64
        assert data["n_atoms"] == "inf"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
