"""Unit tests for result files."""

import json
import math

import numpy as np
import pytest

from photon_exchange import __version__
from photon_exchange.utils import build_metadata, read_csv_metadata, write_csv, write_json
from photon_exchange.utils.output import format_number, to_jsonable
from tests.fixtures import read_csv_rows


class TestFormatting:
    """Test number formatting and JSON conversion."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            (None, ""),
            (True, "true"),
            (3, "3"),
            (np.int64(7), "7"),
            (0.1, "0.10000000000000001"),
            (1e-9, "1.0000000000000001e-09"),
            ("inf", "inf"),
        ],
    )
    def test_format_number(self, value, expected):
        """Floats use 17 significant digits."""
        assert format_number(value) == expected

    def test_float_round_trip(self):
        """Formatted floats parse back to the same value."""
        for value in (math.pi, 1 / 3, 2.5e-17, 4 * math.sqrt(2)):
            assert float(format_number(value)) == value

    def test_to_jsonable(self):
        """numpy values, complex numbers and non-finite floats are converted."""
        data = to_jsonable({"a": np.array([1.0, 2.0]), "z": 1 + 2j, "n": float("nan"), 3: np.float64(0.5)})
        assert data == {"a": [1.0, 2.0], "z": [1.0, 2.0], "n": None, "3": 0.5}


class TestMetadata:
    """Test build_metadata."""

    def test_seeded(self):
        """Seeded commands record the generator."""
        meta = build_metadata("tradeoff", {"restarts": 4}, seed=11)
        assert meta["tool"] == "photon-exchange"
        assert meta["version"] == __version__
        assert meta["schema_version"] == 1
        assert meta["seed"] == 11
        assert "PCG64" in meta["prng"]

    def test_unseeded(self):
        """Deterministic commands carry no generator."""
        meta = build_metadata("scaling", {})
        assert meta["seed"] is None
        assert meta["prng"] is None


class TestWriters:
    """Test write_json and write_csv."""

    def test_write_json(self, tmp_path):
        """Payload and metadata land in one sorted document."""
        path = write_json(tmp_path / "out" / "r.json", {"value": np.float64(1.5)}, build_metadata("evolve", {}))
        data = json.loads(path.read_text())
        assert data["value"] == 1.5
        assert data["metadata"]["command"] == "evolve"
        assert path.read_text().endswith("\n")

    def test_write_csv(self, tmp_path):
        """Metadata lines precede a header and formatted rows."""
        path = write_csv(
            tmp_path / "t.csv",
            ["budget", "phi", "carried_from"],
            [{"budget": 0.1, "phi": 1 / 3, "carried_from": None}, {"budget": 1.0, "phi": 2.0, "extra": 5}],
            build_metadata("tradeoff", {"budgets": [0.1, 1.0]}, seed=3),
            extra_metadata={"loglog_slope": 0.95},
        )
        lines = path.read_text().splitlines()
        assert lines[0] == "# tool: photon-exchange"
        meta = read_csv_metadata(path)
        assert meta["seed"] == "3"
        assert json.loads(meta["parameters"]) == {"budgets": [0.1, 1.0]}
        assert meta["loglog_slope"] == "0.94999999999999996"

        rows = read_csv_rows(path)
        assert rows[0] == {"budget": "0.10000000000000001", "phi": format_number(1 / 3), "carried_from": ""}
        assert rows[1]["phi"] == "2"
        assert "extra" not in rows[1]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
