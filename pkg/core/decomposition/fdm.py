"""
Fourier Decomposition Method Baseline
Path: core/decomposition/fdm.py

Greedy low-to-high scan over bins 1..K/2-1. Each step extends a band from its
start bin to the largest end bin whose analytic partial sum still has a
non-decreasing unwrapped phase, emits 2*Re of that sum, and moves on.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy import fft as sp_fft

from core.decomposition.efd import band_mode
from core.decomposition.results import DecompositionResult, Mode
from core.settings.configs import settings
from core.spectral.corefiles.base import Signal, Spectrum
from core.spectral.corefiles.enums import DecompositionMethod
from core.spectral.corefiles.errors import InvalidInputError
from core.spectral.segmentation import Band
from core.spectral.spectral_core import forward_transform

logger = logging.getLogger(__name__)


@dataclass
class FdmScanState:
    """Progress of the scan: the next start bin and the bands emitted so far."""

    next_start: int
    upper_limit: int
    extracted: List[Tuple[Band, npt.NDArray[np.float64]]] = field(default_factory=list)

    @property
    def done(self) -> bool:
        return self.next_start > self.upper_limit

    def advance(self, band: Band, fibf: npt.NDArray[np.float64]) -> None:
        self.extracted.append((band, fibf))
        self.next_start = band.stop_bin


def _phase_is_monotone(values: npt.NDArray[np.complex128], epsilon: float) -> bool:
    if not np.any(values):
        return True
    phase = np.unwrap(np.angle(values))
    # centred differences; the two end samples are not checked
    omega = (phase[2:] - phase[:-2]) / 2.0
    return bool(np.min(omega) >= -epsilon)


def phase_monotone_span(spectrum: Spectrum, start_bin: int, epsilon: Optional[float] = None) -> int:
    """
    Largest end bin e in [start_bin, K/2-1] whose partial sum has monotone phase.

    Every candidate is tested; monotonicity is not monotone in e, so the scan
    never stops at the first failure. If no candidate passes, start_bin is
    returned so the scan still advances by one bin.

    Raises:
        InvalidInputError: start_bin outside 1..K/2-1.
    """
    spectrum.require_even("spectrum")
    epsilon = settings.PHASE_EPSILON if epsilon is None else epsilon
    n_fft = len(spectrum)
    upper = n_fft // 2 - 1
    if not 1 <= start_bin <= upper:
        raise InvalidInputError(f"start_bin must lie in [1, {upper}], got {start_bin}")

    n = np.arange(n_fft)
    partial = np.zeros(n_fft, dtype=np.complex128)
    best = start_bin
    for end in range(start_bin, upper + 1):
        partial += spectrum.coefficients[end] * np.exp(2j * np.pi * end * n / n_fft)
        if _phase_is_monotone(partial, epsilon):
            best = end
    logger.debug(f"FDM span [{start_bin}, {best}]")
    return best


def fdm_decompose(signal: Signal, epsilon: Optional[float] = None) -> DecompositionResult:
    """
    Decompose a signal into FIBFs by the low-to-high FDM scan.

    The DC term is reported separately (not folded); the Nyquist term is
    appended to the last FIBF. Sum of FIBFs plus dc_term equals the signal.
    """
    signal.require_even()
    n_fft = len(signal)
    spectrum = forward_transform(signal)
    state = FdmScanState(next_start=1, upper_limit=n_fft // 2 - 1)

    while not state.done:
        end = phase_monotone_span(spectrum, state.next_start, epsilon)
        band = Band.from_edges(state.next_start, end + 1)
        state.advance(band, band_mode(spectrum, band))

    modes = [Mode(fibf, band, label) for label, (band, fibf) in enumerate(state.extracted, start=1)]
    nyquist_folded = bool(modes)
    if modes:
        last = modes[-1]
        tail_wave = last.samples + spectrum.nyquist * (-1.0) ** np.arange(n_fft)
        modes[-1] = Mode(tail_wave, last.band, last.label)

    logger.debug(f"FDM: {len(modes)} FIBFs over K={n_fft}")
    return DecompositionResult(
        modes=modes,
        dc_term=spectrum.dc,
        nyquist_term=spectrum.nyquist,
        discarded_tail=np.zeros(n_fft),
        boundaries=None,
        method=DecompositionMethod.FDM,
        sample_rate=signal.sample_rate,
        dc_folded=False,
        nyquist_folded=nyquist_folded,
    )


def verify_fibf_phase(fibf: npt.ArrayLike, epsilon: Optional[float] = None) -> bool:
    """
    Re-check an emitted FIBF: rebuild its one-sided analytic sum over bins
    1..K/2-1 (DC and Nyquist excluded) and test omega(n) >= -epsilon on
    the interior samples.
    """
    epsilon = settings.PHASE_EPSILON if epsilon is None else epsilon
    samples = np.asarray(fibf, dtype=np.float64).reshape(-1)
    n_fft = samples.shape[0]
    if n_fft % 2 or n_fft < 4:
        raise InvalidInputError(f"FIBF length must be even and >= 4, got {n_fft}")
    coefficients = sp_fft.fft(samples, norm="forward")
    one_sided = np.zeros_like(coefficients)
    one_sided[1:n_fft // 2] = coefficients[1:n_fft // 2]
    return _phase_is_monotone(sp_fft.ifft(one_sided, norm="forward"), epsilon)


__all__ = [
    'FdmScanState',
    'phase_monotone_span',
    'fdm_decompose',
    'verify_fibf_phase',
]
