"""
Output Writers
Path: core/cli/outputs.py

CSV (pandas) and JSON writers. Every file records the toolkit version, the
arguments and the seed that produced it: a leading `#` line for CSV, a
`meta` object for JSON.
"""

import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd

from core.settings.configs import VERSION, settings

logger = logging.getLogger(__name__)

PROGRAM = "efd-toolkit"


def metadata_line(args: str, seed: Optional[int]) -> str:
    return f"# {PROGRAM} {VERSION} | args={args} | seed={seed if seed is not None else 'none'}"


def metadata(args: str, seed: Optional[int]) -> dict:
    return {'program': PROGRAM, 'version': VERSION, 'args': args, 'seed': seed}


def envelope(data: Any) -> dict:
    """{"success": true, "count": n, "data": ...} for list payloads."""
    payload = {"success": True}
    if isinstance(data, (list, tuple)):
        payload["count"] = len(data)
    payload["data"] = data
    return payload


def _jsonable(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serialisable: {type(value).__name__}")


def write_csv(frame: pd.DataFrame, path, args: str, seed: Optional[int]) -> Path:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        handle.write(metadata_line(args, seed) + "\n")
        frame.to_csv(handle, index=False, float_format=settings.FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"wrote {len(frame)} rows to {path}")
    return path


def write_json(payload: dict, path, args: str, seed: Optional[int]) -> Path:
    path = Path(path)
    document = {'meta': metadata(args, seed), **payload}
    with path.open("w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, default=_jsonable)
        handle.write("\n")
    logger.info(f"wrote {path}")
    return path


def read_csv(path, columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Read a file written by write_csv (the `#` line is skipped)."""
    frame = pd.read_csv(path, comment="#")
    if columns is not None:
        frame = frame[list(columns)]
    return frame


__all__ = [
    'metadata_line',
    'envelope',
    'write_csv',
    'write_json',
    'read_csv',
]
