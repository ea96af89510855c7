"""
Spectral Core
Path: core/spectral/spectral_core.py

Discrete Fourier analysis/synthesis and the discrete analytic signal.
Every other module assumes the convention fixed here: the 1/K factor lives in
analysis, synthesis is the bare sum.
"""

import logging

import numpy as np
import numpy.typing as npt
from scipy import fft as sp_fft
from scipy import signal as sp_signal

from core.spectral.corefiles.base import AnalyticSeries, Signal, Spectrum
from core.spectral.corefiles.errors import ConventionViolationError, InvalidInputError

logger = logging.getLogger(__name__)

# imaginary residue tolerated silently / tolerated at all when a real signal is requested
RESIDUE_DISCARD_RTOL = 1e-10
RESIDUE_ERROR_RTOL = 1e-6


def forward_transform(signal: Signal) -> Spectrum:
    """
    Analysis transform X[k] = (1/K) * sum_n x[n] exp(-j2pi kn/K).

    Args:
        signal: Real signal, length >= 2 with finite samples (checked by Signal).

    Returns:
        Spectrum: K complex coefficients at the signal's sample rate.
    """
    coefficients = sp_fft.fft(signal.samples, norm="forward")
    return Spectrum(coefficients, signal.sample_rate)


def inverse_transform(spectrum: Spectrum) -> Signal:
    """
    Synthesis x[n] = sum_k X[k] exp(j2pi kn/K).

    Args:
        spectrum: Coefficients in the analysis convention. The imaginary
            residue of a conjugate symmetric spectrum is discarded.

    Returns:
        Signal with the spectrum's sample rate.

    Raises:
        ConventionViolationError: imaginary residue above 1e-6 relative.
    """
    values = sp_fft.ifft(spectrum.coefficients, norm="forward")
    scale = max(float(np.max(np.abs(values))), np.finfo(float).tiny)
    residue = float(np.max(np.abs(values.imag))) / scale
    if residue > RESIDUE_ERROR_RTOL:
        raise ConventionViolationError(
            f"imaginary residue {residue:.3e} (relative) exceeds {RESIDUE_ERROR_RTOL:g}; "
            "spectrum is not conjugate symmetric"
        )
    if residue > RESIDUE_DISCARD_RTOL:
        logger.warning(f"Discarding imaginary residue {residue:.3e} above {RESIDUE_DISCARD_RTOL:g}")
    return Signal(values.real, spectrum.sample_rate)


def half_magnitudes(spectrum: Spectrum) -> npt.NDArray[np.float64]:
    """|X[k]| for k = 0..K/2 inclusive."""
    return np.abs(spectrum.half)


def analytic_signal(samples: npt.ArrayLike, sample_rate: float) -> AnalyticSeries:
    """
    One-sided-spectrum analytic signal.

    X[0] and X[K/2] are kept, X[1..K/2-1] doubled, X[K/2+1..K-1] zeroed, then
    inverse transformed. The real part is replaced by the input samples so it
    matches bit for bit.

    Raises:
        InvalidInputError: odd length or fewer than 4 samples.
    """
    signal = Signal(samples, sample_rate)
    if len(signal) < 4:
        raise InvalidInputError(f"analytic signal needs at least 4 samples, got {len(signal)}")
    signal.require_even("analytic signal input")
    values = sp_signal.hilbert(signal.samples)
    values = signal.samples + 1j * values.imag
    return AnalyticSeries(values, signal.sample_rate)


def band_limited_synthesis(half: npt.NDArray[np.complex128], bins: npt.ArrayLike, n_samples: int) -> npt.NDArray[np.float64]:
    """
    2*Re{ sum_{k in bins} X[k] exp(j2pi kn/K) } for bins inside 1..K/2-1.

    Works on the half spectrum; all bins outside `bins` (and their mirrors) are
    zeroed before the real inverse transform.
    """
    bins = np.asarray(bins, dtype=int)
    masked = np.zeros_like(half)
    if bins.size:
        masked[bins] = half[bins]
    return sp_fft.irfft(masked, n=n_samples, norm="forward")


__all__ = [
    'forward_transform',
    'inverse_transform',
    'half_magnitudes',
    'analytic_signal',
    'band_limited_synthesis',
]
