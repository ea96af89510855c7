"""
Sample Loading
Path: core/testbed/loader.py

Reads recorded signals (one value per line, single-column CSV with an
optional header, or a generator CSV with a `signal` column) and provides a
SignalReader that serves either a file or a generated example.
"""

import io
import logging
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.errors import InvalidInputError, SampleParseError
from core.testbed.generators import ExampleSpec, gen_example

logger = logging.getLogger(__name__)

SIGNAL_COLUMN = "signal"


def _data_lines(path: Path) -> List[Tuple[int, str]]:
    """(line_number, text) for every non-blank, non-comment line."""
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SampleParseError(f"cannot read sample file: {e}", str(path)) from e
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, stripped))
    return lines


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _pick_column(frame: pd.DataFrame, path: Path) -> pd.Series:
    if frame.shape[1] == 1:
        return frame.iloc[:, 0]
    if SIGNAL_COLUMN in frame.columns:
        return frame[SIGNAL_COLUMN]
    raise SampleParseError(
        f"{frame.shape[1]} columns and no '{SIGNAL_COLUMN}' column; expected a single column", str(path)
    )


def load_samples(path, sample_rate: float, allow_truncate: bool = False) -> Signal:
    """
    Load a recorded signal.

    Args:
        path: Text or CSV file; `#` lines and blank lines are skipped.
        sample_rate: Sampling frequency in Hz.
        allow_truncate: Drop the final sample of an odd-length file instead
            of rejecting it.

    Raises:
        SampleParseError: unreadable file, non-numeric line (with its line
            number), empty file or odd length without allow_truncate.
    """
    path = Path(path)
    lines = _data_lines(path)
    if not lines:
        raise SampleParseError("no samples found", str(path))

    first = lines[0][1].split(",")
    has_header = not all(_is_number(cell) for cell in first)
    body = lines[1:] if has_header else lines
    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(text for _, text in lines)),
            header=0 if has_header else None,
            dtype=str,
            skipinitialspace=True,
        )
    except pd.errors.ParserError as e:
        raise SampleParseError(f"malformed CSV: {e}", str(path)) from e
    column = _pick_column(frame, path)
    values = pd.to_numeric(column.str.strip(), errors="coerce")
    bad = np.flatnonzero(values.isna().to_numpy())
    if bad.size:
        number, text = body[int(bad[0])]
        raise SampleParseError(f"non-numeric sample {text!r}", str(path), number)

    samples = values.to_numpy(dtype=np.float64)
    if samples.shape[0] % 2:
        if not allow_truncate:
            raise SampleParseError(
                f"odd sample count {samples.shape[0]}; pass --allow-truncate to drop the last sample", str(path)
            )
        logger.warning(f"{path}: truncating odd sample count {samples.shape[0]} to {samples.shape[0] - 1}")
        samples = samples[:-1]

    try:
        signal = Signal(samples, sample_rate)
    except InvalidInputError as e:
        raise SampleParseError(str(e), str(path)) from e
    logger.debug(f"loaded {len(signal)} samples from {path}")
    return signal


class SignalReader:
    """
    Source of signals for a run: a sample file, or a generated example when
    no file is given.
    """

    def __init__(self, path: Optional[str] = None, sample_rate: Optional[float] = None,
                 example: Optional[ExampleSpec] = None, allow_truncate: bool = False):
        """
        Args:
            path: Sample file; requires sample_rate.
            sample_rate: Sampling frequency of the file in Hz.
            example: Example to generate instead of reading a file.
            allow_truncate: Passed to load_samples.
        """
        if (path is None) == (example is None):
            raise InvalidInputError("exactly one of a sample file or an example must be given")
        if path is not None and sample_rate is None:
            raise InvalidInputError("a sample file needs a sample rate")
        self.path = path
        self.sample_rate = sample_rate
        self.example = example
        self.allow_truncate = allow_truncate

    @property
    def is_generated(self) -> bool:
        return self.example is not None

    def describe(self) -> str:
        if self.is_generated:
            return f"example {self.example.id} (seed {self.example.seed})"
        return f"file {self.path} at {self.sample_rate:g} Hz"

    def read(self) -> Signal:
        if self.is_generated:
            signal = gen_example(self.example).signal
            if len(signal) % 2 and self.allow_truncate:
                signal = signal.truncated_to_even()
            return signal
        return load_samples(self.path, self.sample_rate, allow_truncate=self.allow_truncate)


__all__ = [
    'load_samples',
    'SignalReader',
]
