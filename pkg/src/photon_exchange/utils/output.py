"""Result files: JSON reports and CSV curves with embedded run metadata."""

import csv
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from .. import __version__
from ..nogo.search import PRNG_NAME
from .experiment_config import SCHEMA_VERSION

logger = logging.getLogger(__name__)

TOOL_NAME = "photon-exchange"


def build_metadata(command: str, parameters: Dict[str, Any], seed: Optional[int] = None) -> Dict[str, Any]:
    """Everything needed to rerun the command that produced a file."""
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "seed": seed,
        "prng": PRNG_NAME if seed is not None else None,
        "parameters": parameters,
    }


def format_number(value: Any) -> str:
    """Fixed 17-significant-digit text, independent of locale."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert numpy values, complex numbers and non-finite floats for json.dumps."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [to_jsonable(float(value.real)), to_jsonable(float(value.imag))]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def write_json(path: Union[str, Path], payload: Dict[str, Any], metadata: Dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    document = {"metadata": metadata, **payload}
    path.write_text(json.dumps(to_jsonable(document), indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_csv(
    path: Union[str, Path],
    fieldnames: Sequence[str],
    rows: List[Dict[str, Any]],
    metadata: Dict[str, Any],
    extra_metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    Write rows after '# key: value' metadata lines.

    Parameters are written as one line of canonical JSON.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = dict(metadata)
    header.update(extra_metadata or {})
    with path.open("w", encoding="utf-8", newline="") as f:
        for key, value in header.items():
            if isinstance(value, (dict, list)):
                text = json.dumps(to_jsonable(value), sort_keys=True, separators=(",", ":"))
            else:
                text = format_number(value)
            f.write(f"# {key}: {text}\n")
        writer = csv.DictWriter(f, fieldnames=list(fieldnames), extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: format_number(row.get(k)) for k in fieldnames})
    logger.info(f"Wrote {path} ({len(rows)} rows)")
    return path


def read_csv_metadata(path: Union[str, Path]) -> Dict[str, str]:
    """Raw '# key: value' lines of a CSV written by write_csv."""
    meta: Dict[str, str] = {}
    with Path(path).open(encoding="utf-8") as f:
        for line in f:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition(": ")
            meta[key] = value
    return meta
