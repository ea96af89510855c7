"""
Spectrum Segmentation
Path: core/spectral/segmentation.py

Control-point detection on half-spectrum magnitudes and the three boundary
rules: lowest minima between control points (EFD), midpoint of the largest
maxima (original EWT) and lowest minima between the largest maxima.
Boundaries are real values in bin units over 0..K/2. Ties go to the lowest bin.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import numpy.typing as npt
from scipy.signal import find_peaks

from core.spectral.corefiles.enums import SegmentationMethod
from core.spectral.corefiles.errors import InvalidInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ControlPoint:
    bin: int
    magnitude: float

    def to_dict(self) -> dict:
        return {'bin': self.bin, 'magnitude': self.magnitude}


@dataclass(frozen=True, eq=False)
class BoundarySet:
    """
    Ordered boundaries b_0 = 0 < b_1 < ... < b_N <= K/2 in bin units.

    N+1 boundaries delimit N segments; `realized_segments` can be lower than
    `requested_segments` when control points run out or boundaries collapse.
    """

    boundaries: npt.NDArray[np.float64]
    requested_segments: int
    method: SegmentationMethod = SegmentationMethod.LOWEST_MINIMA
    control_points: List[ControlPoint] = field(default_factory=list)

    def __post_init__(self):
        boundaries = np.array(self.boundaries, dtype=np.float64).reshape(-1)
        if boundaries.shape[0] < 2 or boundaries[0] != 0.0:
            raise InvalidInputError("boundaries must start at 0 and delimit at least one segment")
        if np.any(np.diff(boundaries) <= 0.0):
            raise InvalidInputError(f"boundaries must be strictly increasing: {boundaries.tolist()}")
        boundaries.setflags(write=False)
        object.__setattr__(self, "boundaries", boundaries)

    @property
    def realized_segments(self) -> int:
        return int(self.boundaries.shape[0] - 1)

    @property
    def last(self) -> float:
        return float(self.boundaries[-1])

    def to_hz(self, sample_rate: float, n_fft: int) -> npt.NDArray[np.float64]:
        return self.boundaries * sample_rate / n_fft

    def to_dict(self, sample_rate: float, n_fft: int) -> dict:
        return {
            'boundaries_bins': self.boundaries.tolist(),
            'boundaries_hz': self.to_hz(sample_rate, n_fft).tolist(),
            'requested': self.requested_segments,
            'realized': self.realized_segments,
        }


@dataclass(frozen=True)
class Band:
    """Half-open bin range [lo, hi); owns the integers lo <= k < hi."""

    lo: float
    hi: float
    start_bin: int
    stop_bin: int

    @classmethod
    def from_edges(cls, lo: float, hi: float) -> "Band":
        return cls(float(lo), float(hi), int(math.ceil(lo)), int(math.ceil(hi)))

    @property
    def bins(self) -> range:
        return range(self.start_bin, self.stop_bin)

    @property
    def is_empty(self) -> bool:
        return self.stop_bin <= self.start_bin

    def contains(self, k: int) -> bool:
        return self.start_bin <= k < self.stop_bin

    def scaled(self, factor: int) -> "Band":
        """Same cut frequencies on a spectrum with `factor` times the bins."""
        return Band.from_edges(self.lo * factor, self.hi * factor)

    def to_dict(self, sample_rate: Optional[float] = None, n_fft: Optional[int] = None) -> dict:
        data = {
            'start_bin': self.start_bin,
            'end_bin': self.stop_bin - 1,
            'lo': self.lo,
            'hi': self.hi,
        }
        if sample_rate is not None and n_fft is not None:
            data.update({
                'lo_hz': self.lo * sample_rate / n_fft,
                'hi_hz': self.hi * sample_rate / n_fft,
            })
        return data


# Control points

def _check_magnitudes(magnitudes: npt.ArrayLike) -> npt.NDArray[np.float64]:
    magnitudes = np.asarray(magnitudes, dtype=np.float64).reshape(-1)
    if magnitudes.shape[0] < 3:
        raise InvalidInputError(f"need at least 3 magnitudes, got {magnitudes.shape[0]}")
    return magnitudes


def _check_segments(n_segments: int) -> int:
    if int(n_segments) != n_segments or n_segments < 1:
        raise InvalidInputError(f"n_segments must be an integer >= 1, got {n_segments}")
    return int(n_segments)


def _interior_maxima(magnitudes: npt.NDArray[np.float64]) -> npt.NDArray[np.int64]:
    # strict maxima; flat-topped maxima are represented by their first bin
    _, properties = find_peaks(magnitudes, plateau_size=(1, None))
    return np.asarray(properties["left_edges"], dtype=np.int64)


def _rank(magnitudes: npt.NDArray[np.float64], bins: npt.NDArray[np.int64]) -> List[ControlPoint]:
    # descending magnitude, lowest bin first on ties
    order = np.lexsort((bins, -magnitudes[bins]))
    return [ControlPoint(int(bins[i]), float(magnitudes[bins[i]])) for i in order]


def detect_control_points(magnitudes: npt.ArrayLike, include_initial: bool = True) -> List[ControlPoint]:
    """
    Rank the control points of a half spectrum.

    Args:
        magnitudes: |X[k]| for k = 0..K/2.
        include_initial: Treat bin 0 (the initial value) as a control point.

    Returns:
        Control points sorted by magnitude descending, ties by lower bin.
    """
    magnitudes = _check_magnitudes(magnitudes)
    bins = _interior_maxima(magnitudes)
    if include_initial:
        bins = np.concatenate(([0], bins))
    return _rank(magnitudes, bins)


# Boundary rules

def _lowest_between(magnitudes: npt.NDArray[np.float64], left: int, right: int) -> float:
    """Bin of the global minimum over the open interval (left, right)."""
    if right - left < 2:
        return (left + right) / 2.0
    window = magnitudes[left + 1:right]
    return float(left + 1 + int(np.argmin(window)))


def _kept_ascending(points: Sequence[ControlPoint], n_keep: int) -> List[int]:
    return sorted(point.bin for point in points[:n_keep])


def _collapse(boundaries: Sequence[float], n_segments: int, method: SegmentationMethod,
              points: Sequence[ControlPoint]) -> BoundarySet:
    unique = np.unique(np.asarray(boundaries, dtype=np.float64))
    if unique.shape[0] < len(boundaries):
        logger.debug(f"{method.value}: collapsed {len(boundaries) - unique.shape[0]} duplicate boundaries")
    result = BoundarySet(unique, n_segments, method, list(points))
    if result.realized_segments < n_segments:
        logger.info(
            f"{method.value}: requested {n_segments} segments, realized {result.realized_segments}"
        )
    return result


def _minima_rule(magnitudes: npt.NDArray[np.float64], n_segments: int, include_initial: bool,
                 method: SegmentationMethod) -> BoundarySet:
    half = magnitudes.shape[0] - 1
    points = detect_control_points(magnitudes, include_initial=include_initial)
    if n_segments == 1:
        return BoundarySet(np.array([0.0, float(half)]), 1, method, points)

    kept = _kept_ascending(points, min(n_segments - 1, len(points)))
    boundaries = [0.0]
    previous = 0
    for current in kept:
        boundaries.append(_lowest_between(magnitudes, previous, current))
        previous = current
    if include_initial:
        boundaries.append((previous + half) / 2.0 if kept else float(half))
    else:
        boundaries.append(float(half))
    return _collapse(boundaries, n_segments, method, points)


def boundaries_lowest_minima(magnitudes: npt.ArrayLike, n_segments: int) -> BoundarySet:
    """
    EFD boundaries: lowest minimum between consecutive kept control points.

    The top min(N-1, M) control points (bin 0 eligible) are kept and
    re-indexed ascending; each interior boundary is the lowest bin of the
    open interval between neighbours, and the last boundary is the midpoint
    between the highest kept point and K/2. N = 1 returns [0, K/2].
    """
    n_segments = _check_segments(n_segments)
    magnitudes = _check_magnitudes(magnitudes)
    return _minima_rule(magnitudes, n_segments, True, SegmentationMethod.LOWEST_MINIMA)


def boundaries_local_minima(magnitudes: npt.ArrayLike, n_segments: int) -> BoundarySet:
    """Like boundaries_lowest_minima, without the bin-0 control point and with b_N = K/2."""
    n_segments = _check_segments(n_segments)
    magnitudes = _check_magnitudes(magnitudes)
    return _minima_rule(magnitudes, n_segments, False, SegmentationMethod.LOCAL_MINIMA)


def boundaries_midpoint_maxima(magnitudes: npt.ArrayLike, n_segments: int) -> BoundarySet:
    """Original EWT rule: midpoints between the N-1 largest interior maxima, b_N = K/2."""
    n_segments = _check_segments(n_segments)
    magnitudes = _check_magnitudes(magnitudes)
    half = magnitudes.shape[0] - 1
    points = detect_control_points(magnitudes, include_initial=False)
    kept = _kept_ascending(points, n_segments - 1)
    boundaries = [0.0]
    previous = 0
    for current in kept:
        boundaries.append((previous + current) / 2.0)
        previous = current
    boundaries.append(float(half))
    return _collapse(boundaries, n_segments, SegmentationMethod.MIDPOINT_MAXIMA, points)


SEGMENTATION_RULES = {
    SegmentationMethod.LOWEST_MINIMA: boundaries_lowest_minima,
    SegmentationMethod.MIDPOINT_MAXIMA: boundaries_midpoint_maxima,
    SegmentationMethod.LOCAL_MINIMA: boundaries_local_minima,
}


def compute_boundaries(magnitudes: npt.ArrayLike, n_segments: int,
                       method: SegmentationMethod = SegmentationMethod.LOWEST_MINIMA) -> BoundarySet:
    return SEGMENTATION_RULES[SegmentationMethod(method)](magnitudes, n_segments)


def bands_from_boundaries(bs: BoundarySet, n_fft: int) -> List[Band]:
    """
    Integer bin ownership of each segment.

    Band i owns b_{i-1} <= k < b_i; bins at or above b_N belong to no band.
    Empty bands are dropped.
    """
    if n_fft % 2:
        raise InvalidInputError(f"n_fft must be even, got {n_fft}")
    if bs.last > n_fft // 2:
        raise InvalidInputError(f"last boundary {bs.last} exceeds K/2 = {n_fft // 2}")
    bands = [Band.from_edges(lo, hi) for lo, hi in zip(bs.boundaries[:-1], bs.boundaries[1:])]
    non_empty = [band for band in bands if not band.is_empty]
    if len(non_empty) < len(bands):
        logger.debug(f"dropped {len(bands) - len(non_empty)} empty bands")
    return non_empty


__all__ = [
    'ControlPoint',
    'BoundarySet',
    'Band',
    'detect_control_points',
    'boundaries_lowest_minima',
    'boundaries_midpoint_maxima',
    'boundaries_local_minima',
    'compute_boundaries',
    'bands_from_boundaries',
]
