import numpy as np
import pytest
from numpy.testing import assert_allclose

from core.decomposition.efd import efd_decompose
from core.spectral.corefiles.errors import InvalidInputError
from core.tfr.tfr_core import TFTrack, instantaneous_attributes, tf_grid
from tests.conftest import tone

FS = 1000.0


# ---------------------------------------------------------------- instantaneous attributes

def test_pure_tones_recover_amplitude_and_frequency(rng):
    for f0 in rng.integers(6, 250, size=20):
        amplitude = float(rng.uniform(0.5, 3.0))
        track = instantaneous_attributes(tone(float(f0), amplitude=amplitude).samples, FS)
        window = track.central(0.8)
        assert np.max(np.abs(track.amplitudes[window] - amplitude)) <= 0.01 * amplitude, f"f0={f0}"
        assert np.max(np.abs(track.frequencies[window] - f0)) <= 0.1, f"f0={f0}"


def test_constant_has_zero_frequency():
    track = instantaneous_attributes(np.full(200, 2.5), FS)
    assert_allclose(track.amplitudes, 2.5, atol=1e-12)
    assert_allclose(track.frequencies, 0.0, atol=1e-9)


def test_linear_chirp_tracks_its_frequency():
    t = np.arange(1000) / FS
    track = instantaneous_attributes(np.cos(15.0 * np.pi * t + np.pi * t ** 2), FS)
    window = track.central(0.8)
    expected = 7.5 + t[window]
    error = np.max(np.abs(track.frequencies[window] - expected))
    assert error <= 0.2, f"chirp frequency error {error:.3f} Hz"


def test_attributes_need_eight_samples():
    with pytest.raises(InvalidInputError):
        instantaneous_attributes(np.ones(6), FS)


def test_track_frame_columns():
    frame = instantaneous_attributes(tone(10.0).samples, FS, mode_label=2).to_frame()
    assert list(frame.columns) == ['t', 'amplitude', 'frequency_hz', 'mode']
    assert set(frame['mode']) == {2}


def test_track_rejects_mismatched_lengths():
    with pytest.raises(InvalidInputError):
        TFTrack(np.arange(4.0), np.ones(3), np.ones(4))


# ---------------------------------------------------------------- grid

def test_grid_conserves_in_range_amplitude(rng):
    times = np.arange(500) / 500.0
    frequencies = rng.uniform(-5.0, 60.0, size=500)
    amplitudes = rng.uniform(0.0, 2.0, size=500)
    grid = tf_grid([TFTrack(times, amplitudes, frequencies)], 20, 25, 50.0)
    inside = (frequencies >= 0.0) & (frequencies <= 50.0)
    assert grid.total == pytest.approx(amplitudes[inside].sum())
    assert grid.dropped == int(np.count_nonzero(~inside))
    assert grid.shape == (20, 25)


def test_constant_frequency_fills_one_column():
    times = np.arange(100) / 100.0
    track = TFTrack(times, np.ones(100), np.full(100, 11.0))
    grid = tf_grid([track], 10, 25, 50.0)
    occupied = np.flatnonzero(grid.frequency_marginal())
    assert occupied.tolist() == [5]
    assert grid.total == pytest.approx(100.0)
    assert grid.weighted_mean_frequency() == pytest.approx(11.0)


def test_empty_track_list_gives_zero_grid():
    grid = tf_grid([], 8, 8, 10.0)
    assert grid.total == 0.0
    assert grid.dropped == 0


def test_grid_rejects_bad_shape():
    with pytest.raises(InvalidInputError):
        tf_grid([], 0, 8, 10.0)
    with pytest.raises(InvalidInputError):
        tf_grid([], 8, 8, 0.0)


def test_grid_long_frame_and_dict():
    grid = tf_grid([], 3, 4, 10.0)
    assert len(grid.to_frame()) == 12
    assert grid.to_dict()['n_freq'] == 4


# ---------------------------------------------------------------- example 3

def test_example3_modes_separate_in_frequency(example3):
    result = efd_decompose(example3.signal, 3)
    assert result.n_modes == 2
    low, high = (instantaneous_attributes(mode.samples, FS, mode.label) for mode in result.modes)
    assert high.weighted_mean_frequency(0.8) == pytest.approx(16.0, abs=1.5)
    assert abs(low.weighted_mean_frequency(0.8)) < 3.0

    grid = tf_grid([low, high], 100, 100, 50.0)
    assert grid.shape == (100, 100)
    assert grid.dropped < len(low) + len(high)
