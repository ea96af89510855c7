"""
Mode Error Metrics
Path: core/testbed/metrics.py

Matches extracted modes to known truth components and scores them.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np
import numpy.typing as npt
import pandas as pd

from core.settings.configs import settings
from core.spectral.corefiles.errors import InvalidInputError

logger = logging.getLogger(__name__)


def _as_series(item) -> npt.NDArray[np.float64]:
    return np.asarray(getattr(item, "samples", item), dtype=np.float64).reshape(-1)


def pearson(a: npt.NDArray[np.float64], b: npt.NDArray[np.float64]) -> float:
    """Pearson correlation; 0 when either series is constant."""
    a = a - a.mean()
    b = b - b.mean()
    denominator = np.sqrt(np.sum(a ** 2) * np.sum(b ** 2))
    if denominator == 0.0:
        return 0.0
    return float(np.clip(np.sum(a * b) / denominator, -1.0, 1.0))


def central_slice(n_samples: int, fraction: float) -> slice:
    margin = int(round(n_samples * (1.0 - fraction) / 2.0))
    return slice(margin, n_samples - margin)


def rmse(a: npt.NDArray[np.float64], b: npt.NDArray[np.float64]) -> float:
    return float(np.sqrt(np.mean((a - b) ** 2)))


@dataclass(frozen=True)
class ErrorReport:
    """
    Per-truth scores. assignment[i] is the mode index matched to truth i, or
    None when modes ran out; unmatched truths carry NaN scores.
    """

    assignment: Dict[int, Optional[int]]
    correlations: List[float]
    rmse_full: List[float]
    rmse_central: List[float]
    central_fraction: float

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'truth': list(self.assignment.keys()),
            'mode': [m if m is None else m + 1 for m in self.assignment.values()],
            'correlation': self.correlations,
            'rmse_full': self.rmse_full,
            'rmse_central': self.rmse_central,
        })

    def to_dict(self) -> dict:
        return {
            'assignment': {str(k): v for k, v in self.assignment.items()},
            'correlations': self.correlations,
            'rmse_full': self.rmse_full,
            'rmse_central': self.rmse_central,
            'central_fraction': self.central_fraction,
        }


def mode_errors(modes: Sequence, truths: Sequence, central_fraction: Optional[float] = None) -> ErrorReport:
    """
    Greedy max-|correlation| assignment of truths to modes, then RMSE over
    the full frame and over its central fraction (default 90%).

    Args:
        modes: Mode objects or plain arrays.
        truths: Truth component arrays.

    Raises:
        InvalidInputError: empty lists or series of different lengths.
    """
    central_fraction = settings.CENTRAL_FRACTION if central_fraction is None else central_fraction
    mode_series = [_as_series(m) for m in modes]
    truth_series = [_as_series(t) for t in truths]
    if not mode_series or not truth_series:
        raise InvalidInputError("mode_errors needs at least one mode and one truth")
    lengths = {s.shape[0] for s in mode_series + truth_series}
    if len(lengths) != 1:
        raise InvalidInputError(f"series lengths differ: {sorted(lengths)}")

    scores = np.array([[pearson(t, m) for m in mode_series] for t in truth_series])
    assignment: Dict[int, Optional[int]] = {i: None for i in range(len(truth_series))}
    free_truths = set(range(len(truth_series)))
    free_modes = set(range(len(mode_series)))
    # highest |r| first, ties to the lower truth then lower mode
    for flat in np.argsort(-np.abs(scores), axis=None, kind="stable"):
        i, j = np.unravel_index(flat, scores.shape)
        if i in free_truths and j in free_modes:
            assignment[int(i)] = int(j)
            free_truths.discard(i)
            free_modes.discard(j)
        if not free_truths or not free_modes:
            break

    window = central_slice(next(iter(lengths)), central_fraction)
    correlations, full, central = [], [], []
    for i, truth in enumerate(truth_series):
        j = assignment[i]
        if j is None:
            correlations.append(float("nan"))
            full.append(float("nan"))
            central.append(float("nan"))
            continue
        correlations.append(float(scores[i, j]))
        full.append(rmse(mode_series[j], truth))
        central.append(rmse(mode_series[j][window], truth[window]))

    logger.debug(f"mode assignment {assignment}")
    return ErrorReport(assignment, correlations, full, central, central_fraction)


__all__ = [
    'pearson',
    'rmse',
    'central_slice',
    'ErrorReport',
    'mode_errors',
]
