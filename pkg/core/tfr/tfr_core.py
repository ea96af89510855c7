"""
Time-Frequency Representation
Path: core/tfr/tfr_core.py

Hilbert-based instantaneous amplitude and frequency of decomposed modes, and
a rasterised grid accumulating track amplitudes over (time, frequency) cells.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
import numpy.typing as npt
import pandas as pd

from core.spectral.corefiles.errors import InvalidInputError
from core.spectral.spectral_core import analytic_signal

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TFTrack:
    """Instantaneous amplitude and frequency of one mode."""

    times: npt.NDArray[np.float64]
    amplitudes: npt.NDArray[np.float64]
    frequencies: npt.NDArray[np.float64]
    mode_label: int = 1

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=np.float64).reshape(-1) for a in (self.times, self.amplitudes, self.frequencies)]
        if len({a.shape[0] for a in arrays}) != 1:
            raise InvalidInputError("track times, amplitudes and frequencies must have equal lengths")
        if np.any(arrays[1] < 0.0):
            raise InvalidInputError("track amplitudes must be nonnegative")
        if not np.all(np.isfinite(arrays[2])):
            raise InvalidInputError("track frequencies must be finite")
        for name, array in zip(("times", "amplitudes", "frequencies"), arrays):
            object.__setattr__(self, name, array)

    def __len__(self) -> int:
        return int(self.times.shape[0])

    def central(self, fraction: float = 0.8) -> slice:
        """Slice covering the central `fraction` of samples."""
        margin = int(round(len(self) * (1.0 - fraction) / 2.0))
        return slice(margin, len(self) - margin)

    def weighted_mean_frequency(self, fraction: float = 1.0) -> float:
        """Amplitude-weighted mean frequency over the central `fraction`."""
        window = self.central(fraction)
        weights = self.amplitudes[window]
        if not np.any(weights):
            return 0.0
        return float(np.average(self.frequencies[window], weights=weights))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            't': self.times,
            'amplitude': self.amplitudes,
            'frequency_hz': self.frequencies,
            'mode': self.mode_label,
        })


@dataclass(frozen=True, eq=False)
class TFGrid:
    """Accumulated amplitude per (time, frequency) cell; intensity has shape (n_time, n_freq)."""

    time_edges: npt.NDArray[np.float64]
    freq_edges: npt.NDArray[np.float64]
    intensity: npt.NDArray[np.float64]
    dropped: int = 0

    @property
    def shape(self):
        return self.intensity.shape

    @property
    def total(self) -> float:
        return float(np.sum(self.intensity))

    @property
    def freq_centers(self) -> npt.NDArray[np.float64]:
        return (self.freq_edges[:-1] + self.freq_edges[1:]) / 2.0

    def frequency_marginal(self) -> npt.NDArray[np.float64]:
        """Intensity summed over time, one value per frequency row."""
        return self.intensity.sum(axis=0)

    def weighted_mean_frequency(self) -> float:
        marginal = self.frequency_marginal()
        if not np.any(marginal):
            return 0.0
        return float(np.average(self.freq_centers, weights=marginal))

    def to_frame(self) -> pd.DataFrame:
        """Long form: t_bin, f_bin, intensity."""
        t_bin, f_bin = np.meshgrid(np.arange(self.shape[0]), np.arange(self.shape[1]), indexing="ij")
        return pd.DataFrame({
            't_bin': t_bin.ravel(),
            'f_bin': f_bin.ravel(),
            'intensity': self.intensity.ravel(),
        })

    def to_dict(self) -> dict:
        return {
            'n_time': int(self.shape[0]),
            'n_freq': int(self.shape[1]),
            'fmax': float(self.freq_edges[-1]),
            'total_intensity': self.total,
            'dropped': self.dropped,
        }


def instantaneous_attributes(mode_samples: npt.ArrayLike, sample_rate: float, mode_label: int = 1) -> TFTrack:
    """
    A(t) = |z(t)| and f(t) = dtheta/dt / 2pi from the analytic signal z.

    The phase derivative is a centred difference inside and one-sided at the
    two ends, so the end samples are unreliable.

    Raises:
        InvalidInputError: odd length or fewer than 8 samples.
    """
    samples = np.asarray(mode_samples, dtype=np.float64).reshape(-1)
    if samples.shape[0] < 8:
        raise InvalidInputError(f"instantaneous attributes need at least 8 samples, got {samples.shape[0]}")
    analytic = analytic_signal(samples, sample_rate)
    frequencies = np.gradient(analytic.unwrapped_phase) * analytic.sample_rate / (2.0 * np.pi)
    return TFTrack(analytic.times, analytic.amplitude, frequencies, mode_label)


def tf_grid(tracks: Sequence[TFTrack], n_time: int, n_freq: int, fmax: float,
            duration: Optional[float] = None) -> TFGrid:
    """
    Rasterise tracks onto an n_time x n_freq grid over [0, duration] x [0, fmax].

    Samples with frequency outside [0, fmax] are dropped and counted, never
    clamped. The time axis spans the longest track unless `duration` is given.
    """
    if n_time < 1 or n_freq < 1:
        raise InvalidInputError(f"grid needs n_time, n_freq >= 1, got {n_time} x {n_freq}")
    if fmax <= 0.0:
        raise InvalidInputError(f"fmax must be positive, got {fmax}")

    tracks: List[TFTrack] = [track for track in tracks if len(track)]
    if duration is None:
        duration = max((float(track.times[-1]) for track in tracks), default=1.0)
        duration = duration if duration > 0.0 else 1.0
    time_edges = np.linspace(0.0, duration, n_time + 1)
    freq_edges = np.linspace(0.0, fmax, n_freq + 1)
    intensity = np.zeros((n_time, n_freq))

    dropped = 0
    for track in tracks:
        keep = (track.frequencies >= 0.0) & (track.frequencies <= fmax)
        keep &= (track.times >= 0.0) & (track.times <= duration)
        dropped += int(np.count_nonzero(~keep))
        counts, _, _ = np.histogram2d(
            track.times[keep], track.frequencies[keep],
            bins=(time_edges, freq_edges), weights=track.amplitudes[keep],
        )
        intensity += counts

    if dropped:
        logger.warning(f"TF grid dropped {dropped} out-of-range samples")
    return TFGrid(time_edges, freq_edges, intensity, dropped)


__all__ = [
    'TFTrack',
    'TFGrid',
    'instantaneous_attributes',
    'tf_grid',
]
