"""
Decomposition Results
=====================
Modes and the bookkeeping that makes every decomposition auditable:
which terms were folded into modes and which were kept aside.
"""
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
import numpy.typing as npt
import pandas as pd
from scipy import fft as sp_fft

from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import DecompositionMethod
from core.spectral.segmentation import Band, BoundarySet


@dataclass(frozen=True, eq=False)
class Mode:
    """One extracted component (FIBF for EFD/FDM, filter output for EWT)."""

    samples: npt.NDArray[np.float64]
    band: Band
    label: int

    def __repr__(self):
        return f"<Mode(label={self.label}, bins=[{self.band.start_bin}, {self.band.stop_bin}))>"

    @property
    def energy(self) -> float:
        return float(np.sum(self.samples ** 2))

    def dominant_bin(self) -> int:
        """Bin of the largest half-spectrum magnitude of this mode."""
        half = np.abs(sp_fft.rfft(self.samples))
        return int(np.argmax(half))

    def to_dict(self, sample_rate: Optional[float] = None) -> dict:
        data = {'label': self.label, 'energy': self.energy}
        data.update(self.band.to_dict(sample_rate, self.samples.shape[0]))
        return data


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """
    Ordered modes plus the terms that complete the signal.

    dc_term and nyquist_term are always reported; the *_folded flags say
    whether they are already contained in the modes, so `reconstruct` never
    counts a term twice. `synthesis_gains` is set only for filter-bank
    decompositions whose modes resynthesise through a second filtering.
    """

    modes: List[Mode]
    dc_term: float
    nyquist_term: float
    discarded_tail: npt.NDArray[np.float64]
    boundaries: Optional[BoundarySet]
    method: DecompositionMethod
    sample_rate: float
    dc_folded: bool = True
    nyquist_folded: bool = True
    synthesis_gains: Optional[npt.NDArray[np.float64]] = None
    metadata: dict = field(default_factory=dict)

    def __repr__(self):
        return f"<DecompositionResult(method={self.method.value}, modes={self.n_modes}, K={self.n_samples})>"

    def __str__(self):
        return f"{self.method.value.upper()}: {self.n_modes} modes over {self.n_samples} samples"

    # Properties

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def n_samples(self) -> int:
        return int(self.discarded_tail.shape[0])

    @property
    def bands(self) -> List[Band]:
        return [mode.band for mode in self.modes]

    @property
    def realized_segments(self) -> int:
        """Segments that own at least one bin; empty bands yield no mode."""
        return sum(not mode.band.is_empty for mode in self.modes)

    @property
    def mode_matrix(self) -> npt.NDArray[np.float64]:
        if not self.modes:
            return np.zeros((0, self.n_samples))
        return np.vstack([mode.samples for mode in self.modes])

    @property
    def times(self) -> npt.NDArray[np.float64]:
        return np.arange(self.n_samples) / self.sample_rate

    @property
    def tail_energy(self) -> float:
        return float(np.sum(self.discarded_tail ** 2))

    @property
    def center_frequencies_hz(self) -> List[float]:
        bin_width = self.sample_rate / self.n_samples
        return [mode.dominant_bin() * bin_width for mode in self.modes]

    # Reconstruction

    def separate_terms(self) -> npt.NDArray[np.float64]:
        """DC / Nyquist contributions not already folded into modes."""
        n = np.arange(self.n_samples)
        terms = np.zeros(self.n_samples)
        if not self.dc_folded:
            terms += self.dc_term
        if not self.nyquist_folded:
            terms += self.nyquist_term * (-1.0) ** n
        return terms

    def reconstruct(self) -> npt.NDArray[np.float64]:
        """Sum of everything the decomposition accounts for."""
        if self.synthesis_gains is not None:
            total = np.zeros(self.n_samples)
            for mode, gain in zip(self.modes, self.synthesis_gains):
                total += sp_fft.irfft(sp_fft.rfft(mode.samples) * gain, n=self.n_samples)
            return total + self.discarded_tail + self.separate_terms()
        return self.mode_matrix.sum(axis=0) + self.discarded_tail + self.separate_terms()

    def reconstruction_residual(self, signal: Signal) -> float:
        """Max-abs reconstruction error relative to the signal's max-abs value."""
        scale = max(float(np.max(np.abs(signal.samples))), np.finfo(float).tiny)
        return float(np.max(np.abs(self.reconstruct() - signal.samples))) / scale

    # Export

    def band_report(self) -> List[dict]:
        return [mode.to_dict(self.sample_rate) for mode in self.modes]

    def to_frame(self) -> pd.DataFrame:
        """Columns t, mode1..modeN."""
        frame = pd.DataFrame({'t': self.times})
        for i, mode in enumerate(self.modes, start=1):
            frame[f'mode{i}'] = mode.samples
        return frame

    def to_dict(self) -> dict:
        data = {
            'method': self.method.value,
            'n_modes': self.n_modes,
            'realized_segments': self.realized_segments,
            'n_samples': self.n_samples,
            'sample_rate': self.sample_rate,
            'dc_term': self.dc_term,
            'nyquist_term': self.nyquist_term,
            'dc_folded': self.dc_folded,
            'nyquist_folded': self.nyquist_folded,
            'tail_energy': self.tail_energy,
            'center_frequencies_hz': self.center_frequencies_hz,
            'bands': self.band_report(),
        }
        if self.boundaries is not None:
            data['boundaries'] = self.boundaries.to_dict(self.sample_rate, self.n_samples)
        data.update(self.metadata)
        return data


__all__ = [
    'Mode',
    'DecompositionResult',
]
