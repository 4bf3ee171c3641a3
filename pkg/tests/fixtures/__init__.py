"""Test fixtures for the photon-exchange workbench."""

import json
import math
from pathlib import Path
from typing import Any, Dict

import numpy as np
import yaml

# Three-mode nonlinear-sign gate with ancilla |1, 0> postselected on (1, 0);
# all three postselected amplitudes equal 1/2 up to the sign flip on |2>.
KLM_NS_UNITARY = np.array(
    [
        [1 - math.sqrt(2), 2**-0.25, math.sqrt(3 / math.sqrt(2) - 2)],
        [2**-0.25, 0.5, 0.5 - 1 / math.sqrt(2)],
        [math.sqrt(3 / math.sqrt(2) - 2), 0.5 - 1 / math.sqrt(2), math.sqrt(2) - 0.5],
    ],
    dtype=complex,
)


def write_config(directory: Path, data: Dict[str, Any], name: str = "config.json") -> Path:
    """Write a config document as JSON or YAML depending on the file name."""
    path = Path(directory) / name
    if path.suffix in (".yaml", ".yml"):
        path.write_text(yaml.safe_dump(data, sort_keys=False), encoding="utf-8")
    else:
        path.write_text(json.dumps(data, indent=2), encoding="utf-8")
    return path


def read_csv_rows(path: Path) -> list:
    """Data rows of a CSV written by the workbench, skipping '# ' metadata lines."""
    import csv

    with Path(path).open(encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("# ")]
    return list(csv.DictReader(lines))
