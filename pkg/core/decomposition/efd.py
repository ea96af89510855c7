"""
Empirical Fourier Decomposition
Path: core/decomposition/efd.py

Ideal (brick-wall) bandpass bank over lowest-minima boundaries. Each mode is
2*Re of the analytic partial Fourier sum over its band; DC is folded into
the first mode, Nyquist into the last mode when b_N = K/2, and everything
above the last boundary goes to the discarded tail.
"""

import logging
from typing import List

import numpy as np
import numpy.typing as npt

from core.decomposition.results import DecompositionResult, Mode
from core.spectral.corefiles.base import Signal, Spectrum
from core.spectral.corefiles.enums import DecompositionMethod, SignalExtension
from core.spectral.corefiles.errors import InvalidInputError
from core.spectral.segmentation import (
    Band,
    BoundarySet,
    bands_from_boundaries,
    boundaries_lowest_minima,
)
from core.spectral.spectral_core import band_limited_synthesis, forward_transform, half_magnitudes

logger = logging.getLogger(__name__)


def _interior_bins(band: Band, n_fft: int) -> npt.NDArray[np.int64]:
    lo = max(band.start_bin, 1)
    hi = min(band.stop_bin, n_fft // 2)
    return np.arange(lo, hi, dtype=np.int64) if hi > lo else np.zeros(0, dtype=np.int64)


def band_mode(spectrum: Spectrum, band: Band) -> npt.NDArray[np.float64]:
    """
    2*Re{ sum_{k in band} X[k] exp(j2pi kn/K) }.

    Bin 0 and bin K/2 are never synthesised here; the caller owns them.
    An empty band yields a zero sequence.
    """
    spectrum.require_even("spectrum")
    n_fft = len(spectrum)
    return band_limited_synthesis(spectrum.half, _interior_bins(band, n_fft), n_fft)


def _mirror_extend(samples: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    pad = samples.shape[0] // 2
    return np.pad(samples, (pad, pad), mode="symmetric")


def _split(spectrum: Spectrum, bands: List[Band], last_boundary: float):
    """Modes, tail and the DC/Nyquist bookkeeping for one (possibly extended) frame."""
    n_fft = len(spectrum)
    half = n_fft // 2
    n = np.arange(n_fft)
    nyquist_wave = spectrum.nyquist * (-1.0) ** n
    nyquist_in_last = last_boundary >= half

    mode_samples = []
    for i, band in enumerate(bands):
        samples = band_mode(spectrum, band)
        if i == 0:
            samples = samples + spectrum.dc
        if i == len(bands) - 1 and nyquist_in_last:
            samples = samples + nyquist_wave
        mode_samples.append(samples)

    tail_band = Band.from_edges(last_boundary, half)
    tail = band_mode(spectrum, tail_band)
    if not nyquist_in_last:
        tail = tail + nyquist_wave
    return mode_samples, tail


def _decompose_frame(signal: Signal, spectrum: Spectrum, boundaries: BoundarySet,
                     extension: SignalExtension) -> DecompositionResult:
    n_fft = len(signal)
    bands = bands_from_boundaries(boundaries, n_fft)

    if extension.is_extended():
        pad = n_fft // 2
        frame = Signal(_mirror_extend(signal.samples), signal.sample_rate)
        work = forward_transform(frame)
        work_bands = [band.scaled(2) for band in bands]
        mode_samples, tail = _split(work, work_bands, boundaries.last * 2)
        mode_samples = [samples[pad:pad + n_fft] for samples in mode_samples]
        tail = tail[pad:pad + n_fft]
    else:
        work = spectrum
        mode_samples, tail = _split(work, bands, boundaries.last)

    modes = [Mode(samples, band, label) for label, (samples, band) in enumerate(zip(mode_samples, bands), start=1)]
    return DecompositionResult(
        modes=modes,
        dc_term=work.dc,
        nyquist_term=work.nyquist,
        discarded_tail=tail,
        boundaries=boundaries,
        method=DecompositionMethod.EFD,
        sample_rate=signal.sample_rate,
        dc_folded=True,
        nyquist_folded=True,
        metadata={'extension': extension.value, 'segmentation': boundaries.method.value},
    )


def efd_decompose(signal: Signal, n_segments: int,
                  extension: SignalExtension = SignalExtension.NONE) -> DecompositionResult:
    """
    Decompose a signal into Fourier intrinsic band functions.

    Args:
        signal: Even-length real signal.
        n_segments: Requested number of segments (>= 1).
        extension: NONE decomposes the raw frame; SYMMETRIC mirrors K/2
            samples onto each end, decomposes the 2K frame with the same cut
            frequencies and crops the modes back to K samples.

    Returns:
        DecompositionResult whose modes plus discarded tail sum to the signal.
    """
    signal.require_even()
    if n_segments < 1:
        raise InvalidInputError(f"n_segments must be >= 1, got {n_segments}")
    extension = SignalExtension(extension)

    spectrum = forward_transform(signal)
    boundaries = boundaries_lowest_minima(half_magnitudes(spectrum), n_segments)
    result = _decompose_frame(signal, spectrum, boundaries, extension)
    logger.debug(
        f"EFD: {result.n_modes} modes, boundaries {boundaries.boundaries.tolist()}, extension={extension.value}"
    )
    return result


def decompose_with_boundaries(signal: Signal, boundaries: BoundarySet,
                              extension: SignalExtension = SignalExtension.NONE) -> DecompositionResult:
    """EFD synthesis over caller-supplied boundaries (no segmentation step)."""
    signal.require_even()
    return _decompose_frame(signal, forward_transform(signal), boundaries, SignalExtension(extension))


__all__ = [
    'band_mode',
    'efd_decompose',
    'decompose_with_boundaries',
]
