"""
Empirical Wavelet Transform Baseline
Path: core/decomposition/ewt.py

Meyer-type scaling/wavelet filter bank over a spectrum segmentation.
Filters are sampled on the half-spectrum bins and mirrored conjugate
symmetrically. Each mode is one application of its filter; the squared-gain
resynthesis is the tight-frame reconstruction.

Transition orientation: the wavelet rises with sin(pi/2 * beta) across its
lower boundary and falls with cos(pi/2 * beta) across its upper boundary,
which is what makes the squared gains sum to one.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import numpy.typing as npt
import pandas as pd
from scipy import fft as sp_fft

from core.decomposition.results import DecompositionResult, Mode
from core.settings.configs import settings
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import DecompositionMethod, SegmentationMethod
from core.spectral.corefiles.errors import ConfigurationError, InvalidInputError
from core.spectral.segmentation import Band, BoundarySet, compute_boundaries
from core.spectral.spectral_core import forward_transform, half_magnitudes

logger = logging.getLogger(__name__)


def meyer_beta(x):
    """
    beta(x) = x^4 (35 - 84x + 70x^2 - 20x^3) on (0, 1), clamped to 0 / 1 outside.

    Accepts scalars or arrays.
    """
    values = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    result = values ** 4 * (35.0 - 84.0 * values + 70.0 * values ** 2 - 20.0 * values ** 3)
    if np.ndim(result) == 0:
        return float(result)
    return result


def gamma_bound(boundaries: BoundarySet, n_fft: int) -> float:
    """
    Admissibility bound: min over consecutive nonzero boundaries of
    (w_{n+1} - w_n) / (w_{n+1} + w_n), capped at 1.
    """
    edges = boundaries.boundaries[1:]
    if edges.shape[0] < 2:
        return 1.0
    ratios = np.diff(edges) / (edges[1:] + edges[:-1])
    return float(min(1.0, np.min(ratios)))


def _check_gamma(boundaries: BoundarySet, gamma: float, n_fft: int) -> None:
    if not 0.0 < gamma < 1.0:
        raise ConfigurationError(f"gamma must lie in (0, 1), got {gamma}")
    edges = boundaries.boundaries[1:]
    for lower, upper in zip(edges[:-1], edges[1:]):
        ratio = (upper - lower) / (upper + lower)
        if gamma >= ratio:
            raise ConfigurationError(
                f"gamma {gamma:.6g} is inadmissible for boundary pair "
                f"({lower:g}, {upper:g}) bins: must be < {ratio:.6g}"
            )


def _rise(omega, edge, tau):
    """sin branch across a lower boundary."""
    return np.sin(np.pi / 2.0 * meyer_beta((tau + omega - edge) / (2.0 * tau)))


def _fall(omega, edge, tau):
    """cos branch across an upper boundary."""
    return np.cos(np.pi / 2.0 * meyer_beta((tau + omega - edge) / (2.0 * tau)))


@dataclass(frozen=True, eq=False)
class EwtFilterBank:
    """N real gain curves on bins 0..K/2: phi_1 then psi_2..psi_N."""

    boundaries: BoundarySet
    gamma: float
    tau: npt.NDArray[np.float64]
    filters: npt.NDArray[np.float64]
    n_fft: int

    @property
    def n_filters(self) -> int:
        return int(self.filters.shape[0])

    def partition_error(self) -> float:
        """Max deviation of sum of squared gains from one over [0, pi]."""
        return float(np.max(np.abs(np.sum(self.filters ** 2, axis=0) - 1.0)))

    def full_gains(self) -> npt.NDArray[np.float64]:
        """Gains mirrored onto all K bins."""
        k = np.arange(self.n_fft)
        return self.filters[:, np.minimum(k, self.n_fft - k)]

    def to_frame(self, sample_rate: float) -> pd.DataFrame:
        bins = np.arange(self.filters.shape[1])
        frame = pd.DataFrame({'bin': bins, 'hz': bins * sample_rate / self.n_fft})
        frame['phi1'] = self.filters[0]
        for n in range(1, self.n_filters):
            frame[f'psi{n + 1}'] = self.filters[n]
        return frame


def build_filter_bank(boundaries: BoundarySet, gamma: float, n_fft: int) -> EwtFilterBank:
    """
    Sample the empirical scaling and wavelet filters on the half spectrum.

    Args:
        boundaries: Segmentation with b_0 = 0 and b_N <= K/2 (bins).
        gamma: Transition ratio; tau_n = gamma * w_n.
        n_fft: Frame length K (even).

    Raises:
        ConfigurationError: gamma not below the admissibility bound.
    """
    if n_fft % 2:
        raise InvalidInputError(f"n_fft must be even, got {n_fft}")
    _check_gamma(boundaries, gamma, n_fft)

    half = n_fft // 2
    # bin k sits at pi * k / (K/2) so the last grid point is exactly pi
    omega = np.pi * (np.arange(half + 1) / half)
    edges = np.pi * (boundaries.boundaries / half)
    interior = edges[1:-1]
    tau = gamma * interior
    n_filters = boundaries.realized_segments
    filters = np.zeros((n_filters, omega.shape[0]))

    if n_filters == 1:
        filters[0] = 1.0
        return EwtFilterBank(boundaries, gamma, tau, filters, n_fft)

    # scaling filter around w_1
    w1, t1 = interior[0], tau[0]
    filters[0] = np.where(omega <= w1 - t1, 1.0, 0.0)
    transition = (omega >= w1 - t1) & (omega <= w1 + t1)
    filters[0, transition] = _fall(omega[transition], w1, t1)

    for n in range(1, n_filters):
        lower, t_lo = interior[n - 1], tau[n - 1]
        last = n == n_filters - 1
        upper = omega[-1] if last else interior[n]
        t_up = 0.0 if last else tau[n]

        gains = np.where((omega >= lower + t_lo) & (omega <= upper - t_up), 1.0, 0.0)
        if not last:
            falling = (omega >= upper - t_up) & (omega <= upper + t_up)
            gains[falling] = _fall(omega[falling], upper, t_up)
        rising = (omega >= lower - t_lo) & (omega <= lower + t_lo)
        gains[rising] = _rise(omega[rising], lower, t_lo)
        filters[n] = gains

    bank = EwtFilterBank(boundaries, gamma, tau, filters, n_fft)
    logger.debug(f"EWT bank: {n_filters} filters, gamma={gamma:.6g}, partition error {bank.partition_error():.2e}")
    return bank


def default_gamma(boundaries: BoundarySet, n_fft: int, fraction: Optional[float] = None) -> float:
    fraction = settings.GAMMA_FRACTION if fraction is None else fraction
    return fraction * gamma_bound(boundaries, n_fft)


def ewt_decompose(signal: Signal, n_segments: int,
                  segmentation: SegmentationMethod = SegmentationMethod.MIDPOINT_MAXIMA,
                  gamma: Optional[float] = None) -> DecompositionResult:
    """
    Filter-bank decomposition: mode n = inverse transform of X * filter_n.

    Args:
        signal: Even-length real signal.
        n_segments: Requested segment count.
        segmentation: MIDPOINT_MAXIMA (original EWT) or LOCAL_MINIMA.
        gamma: Transition ratio; defaults to 0.9 x the admissibility bound.
    """
    signal.require_even()
    segmentation = SegmentationMethod(segmentation)
    if segmentation not in SegmentationMethod.ewt_choices():
        raise InvalidInputError(f"EWT segmentation must be one of {[m.value for m in SegmentationMethod.ewt_choices()]}")
    n_fft = len(signal)

    spectrum = forward_transform(signal)
    boundaries = compute_boundaries(half_magnitudes(spectrum), n_segments, segmentation)
    if gamma is None:
        gamma = default_gamma(boundaries, n_fft)
    bank = build_filter_bank(boundaries, gamma, n_fft)

    # gains apply to the full two-sided spectrum
    full = bank.full_gains()
    modes: List[Mode] = []
    edges = boundaries.boundaries
    for i in range(bank.n_filters):
        values = sp_fft.ifft(spectrum.coefficients * full[i], norm="forward")
        modes.append(Mode(values.real, Band.from_edges(edges[i], edges[i + 1]), i + 1))

    return DecompositionResult(
        modes=modes,
        dc_term=spectrum.dc,
        nyquist_term=spectrum.nyquist,
        discarded_tail=np.zeros(n_fft),
        boundaries=boundaries,
        method=DecompositionMethod.EWT,
        sample_rate=signal.sample_rate,
        dc_folded=True,
        nyquist_folded=True,
        synthesis_gains=bank.filters,
        metadata={'gamma': gamma, 'segmentation': segmentation.value},
    )


def ewt_reconstruct(result: DecompositionResult) -> npt.NDArray[np.float64]:
    """Tight-frame resynthesis: sum_n inverse(X * filter_n^2)."""
    if result.synthesis_gains is None:
        raise InvalidInputError("result carries no filter bank gains")
    return result.reconstruct()


__all__ = [
    'meyer_beta',
    'gamma_bound',
    'EwtFilterBank',
    'build_filter_bank',
    'default_gamma',
    'ewt_decompose',
    'ewt_reconstruct',
]
