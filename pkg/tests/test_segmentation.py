import numpy as np
import pytest
from numpy.testing import assert_array_equal

from core.spectral.corefiles.enums import SegmentationMethod
from core.spectral.corefiles.errors import InvalidInputError
from core.spectral.segmentation import (
    BoundarySet,
    bands_from_boundaries,
    boundaries_local_minima,
    boundaries_lowest_minima,
    boundaries_midpoint_maxima,
    compute_boundaries,
    detect_control_points,
)
from core.spectral.spectral_core import forward_transform, half_magnitudes

MAGNITUDES = [0, 1, 5, 1, 1, 4, 1, 1, 3]


# ---------------------------------------------------------------- control points

def test_control_points_ranked_with_initial_value():
    points = detect_control_points([0, 1, 5, 1, 4, 1, 3])
    assert [p.bin for p in points] == [2, 4, 0]
    assert [p.magnitude for p in points] == [5, 4, 0]


def test_plateau_maximum_keeps_first_bin():
    points = detect_control_points([0, 3, 3, 1])
    assert [p.bin for p in points] == [1, 0]


def test_control_points_need_three_magnitudes():
    with pytest.raises(InvalidInputError):
        detect_control_points([1, 2])


def test_example1_top_control_points(example1):
    magnitudes = half_magnitudes(forward_transform(example1.signal))
    top = [p.bin for p in detect_control_points(magnitudes)[:3]]
    assert 4 in top and 20 in top
    assert any(b in (0, 1) for b in top)


# ---------------------------------------------------------------- boundary rules

def test_lowest_minima_reference_case():
    result = boundaries_lowest_minima(MAGNITUDES, 3)
    assert_array_equal(result.boundaries, [0, 1, 3, 6.5])
    assert result.requested_segments == 3
    assert result.realized_segments == 3


def test_midpoint_maxima_reference_case():
    assert_array_equal(boundaries_midpoint_maxima(MAGNITUDES, 3).boundaries, [0, 1, 3.5, 8])


def test_local_minima_reference_case():
    assert_array_equal(boundaries_local_minima(MAGNITUDES, 3).boundaries, [0, 1, 3, 8])


@pytest.mark.parametrize("method", list(SegmentationMethod))
def test_single_segment_is_whole_half_spectrum(method, rng):
    magnitudes = np.abs(rng.normal(size=33))
    assert_array_equal(compute_boundaries(magnitudes, 1, method).boundaries, [0, 32])


def test_midpoint_single_maximum():
    magnitudes = np.zeros(17)
    magnitudes[6] = 1.0
    assert_array_equal(boundaries_midpoint_maxima(magnitudes, 2).boundaries, [0, 3, 16])


def test_initial_value_boundary_collapses(example1):
    magnitudes = half_magnitudes(forward_transform(example1.signal))
    result = boundaries_lowest_minima(magnitudes, 4)
    assert_array_equal(result.boundaries, [0, 3, 19, 260])
    assert result.realized_segments == 3
    assert result.last < 500


def test_example1_midpoint_rule(example1):
    magnitudes = half_magnitudes(forward_transform(example1.signal))
    assert_array_equal(boundaries_midpoint_maxima(magnitudes, 3).boundaries, [0, 2, 12, 500])


def test_local_minima_separate_example4_spikes(example4):
    magnitudes = half_magnitudes(forward_transform(example4.signal))
    result = boundaries_local_minima(magnitudes, 4)
    assert result.last == len(example4.signal) // 2
    bands = bands_from_boundaries(result, len(example4.signal))
    owners = [[i for i, band in enumerate(bands) if band.contains(spike)] for spike in (22, 26, 62)]
    assert all(len(owner) == 1 for owner in owners), f"owners {owners}"
    assert len({owner[0] for owner in owners}) == 3, f"boundaries {result.boundaries.tolist()}"


def test_rejects_zero_segments():
    with pytest.raises(InvalidInputError):
        boundaries_lowest_minima(MAGNITUDES, 0)


def test_lowest_minima_properties_on_random_spectra(rng):
    for _ in range(50):
        magnitudes = np.abs(rng.normal(size=rng.integers(8, 200)))
        n_segments = int(rng.integers(1, 10))
        result = boundaries_lowest_minima(magnitudes, n_segments)
        assert result.boundaries[0] == 0
        assert np.all(np.diff(result.boundaries) > 0)
        assert result.realized_segments <= n_segments
        assert result.last <= magnitudes.shape[0] - 1

        # scale invariance
        scaled = boundaries_lowest_minima(magnitudes * 7.5, n_segments)
        assert_array_equal(scaled.boundaries, result.boundaries)


def test_lowest_minima_picks_global_minimum_between_control_points(rng):
    magnitudes = np.abs(rng.normal(size=101))
    result = boundaries_lowest_minima(magnitudes, 6)
    kept = sorted(p.bin for p in result.control_points[:5])
    for left, right in zip(kept[:-1], kept[1:]):
        if right - left < 2:
            continue
        boundary = int(left + 1 + np.argmin(magnitudes[left + 1:right]))
        assert boundary in result.boundaries
        assert magnitudes[boundary] <= magnitudes[left + 1:right].min()


# ---------------------------------------------------------------- bands

def test_bands_from_boundaries_own_integer_bins():
    bands = bands_from_boundaries(BoundarySet(np.array([0, 1, 3, 6.5]), 3), 16)
    assert [list(b.bins) for b in bands] == [[0], [1, 2], [3, 4, 5, 6]]


def test_full_band_owns_everything_below_nyquist():
    (band,) = bands_from_boundaries(BoundarySet(np.array([0, 8.0]), 1), 16)
    assert list(band.bins) == list(range(8))


def test_boundary_set_must_increase():
    with pytest.raises(InvalidInputError):
        BoundarySet(np.array([0, 3, 3]), 2)
    with pytest.raises(InvalidInputError):
        BoundarySet(np.array([1, 3]), 1)


def test_boundary_set_json_keys():
    data = BoundarySet(np.array([0, 2.0, 8.0]), 3).to_dict(sample_rate=100.0, n_fft=16)
    assert data == {
        'boundaries_bins': [0.0, 2.0, 8.0],
        'boundaries_hz': [0.0, 12.5, 50.0],
        'requested': 3,
        'realized': 2,
    }
