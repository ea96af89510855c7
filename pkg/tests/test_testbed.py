import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

from core.decomposition.efd import efd_decompose
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import SignalExtension
from core.spectral.corefiles.errors import InvalidInputError, SampleParseError
from core.testbed.benchmark import BENCH_COLUMNS, benchmark, ratio_table
from core.testbed.generators import ExampleSpec, VibrationParams, add_awgn, gen_example
from core.testbed.loader import SignalReader, load_samples
from core.testbed.metrics import mode_errors, pearson
from tests.conftest import SEED, tone


# ---------------------------------------------------------------- generators

@pytest.mark.parametrize("example_id, first_value", [(1, 3.0), (2, 0.0), (3, 1.0 / 2.2 + np.cos(0.2) / 1.2)])
def test_examples_start_where_expected(example_id, first_value):
    generated = gen_example(ExampleSpec(id=example_id))
    assert generated.signal.samples[0] == pytest.approx(first_value, abs=1e-12)
    assert len(generated.signal) == 1000


def test_example3_first_value_literal(example3):
    assert example3.signal.samples[0] == pytest.approx(1.271268, abs=1e-6)


@pytest.mark.parametrize("example_id", [1, 2, 3, 4, 5])
def test_components_and_noise_sum_to_signal(example_id):
    generated = gen_example(ExampleSpec(id=example_id, seed=SEED))
    total = np.sum(generated.components, axis=0)
    if generated.noise is not None:
        total = total + generated.noise
    assert_allclose(total, generated.signal.samples, atol=1e-12)
    assert len(generated.components) == len(generated.names)


def test_example_defaults():
    assert ExampleSpec(id=4).n_samples == 1000
    assert ExampleSpec(id=4).resolved_rate == 50.0
    assert ExampleSpec(id=5).n_samples == 1000


def test_generation_is_deterministic_per_seed():
    first = gen_example(ExampleSpec(id=4, seed=7)).signal.samples
    again = gen_example(ExampleSpec(id=4, seed=7)).signal.samples
    other = gen_example(ExampleSpec(id=4, seed=8)).signal.samples
    assert_allclose(first, again, atol=0)
    assert not np.allclose(first, other)


def test_noise_free_vibration():
    generated = gen_example(ExampleSpec(id=4, vibration=VibrationParams(snr_db=None)))
    assert generated.noise is None


def test_vibration_rejects_overdamping():
    with pytest.raises(ValueError):
        VibrationParams(damping=(0.02, 1.5, 0.0))


def test_unknown_example_id():
    with pytest.raises(InvalidInputError):
        gen_example(ExampleSpec(id=9))


def test_generated_frame_columns(example1):
    assert list(example1.to_frame().columns) == ['t', 'signal', 'comp1', 'comp2', 'comp3']
    signal, components = example1
    assert len(components) == 3


# ---------------------------------------------------------------- noise

def test_awgn_hits_requested_snr():
    clean = tone(50.0, n_samples=100000, sample_rate=100000.0)
    noisy = add_awgn(clean, 20.0, seed=SEED)
    noise = noisy.samples - clean.samples
    assert abs(np.mean(noise)) < 0.01
    snr = 10.0 * np.log10(np.mean(clean.samples ** 2) / np.var(noise))
    assert 19.5 <= snr <= 20.5, f"SNR {snr:.2f} dB"


def test_awgn_none_and_infinite_are_identity():
    clean = tone(5.0)
    assert add_awgn(clean, None) is clean
    assert add_awgn(clean, float("inf")) is clean


def test_awgn_rejects_silent_signal():
    with pytest.raises(InvalidInputError):
        add_awgn(Signal(np.zeros(100), 1.0), 10.0)


# ---------------------------------------------------------------- loader

def test_load_one_value_per_line(tmp_path):
    path = tmp_path / "samples.txt"
    values = np.sin(np.arange(1000) / 10.0)
    path.write_text("\n".join(f"{v:.17g}" for v in values) + "\n")
    signal = load_samples(path, 360.0)
    assert len(signal) == 1000
    assert signal.sample_rate == 360.0
    assert_allclose(signal.samples, values, atol=0)


def test_load_skips_header_comments_and_blanks(tmp_path):
    path = tmp_path / "samples.csv"
    path.write_text("# recorded excerpt\nvalue\n1.0\n\n2.5\n-3\n4e-1\n")
    assert_allclose(load_samples(path, 100.0).samples, [1.0, 2.5, -3.0, 0.4])


def test_load_generated_csv_uses_signal_column(tmp_path, example1):
    path = tmp_path / "gen.csv"
    frame = example1.to_frame()
    with path.open("w") as handle:
        handle.write("# efd-toolkit test\n")
        frame.to_csv(handle, index=False, float_format="%.17g")
    assert_allclose(load_samples(path, 1000.0).samples, example1.signal.samples, atol=1e-15)


def test_non_numeric_line_reports_its_number(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1.0\n2.0\n# note\nabc\n4.0\n")
    with pytest.raises(SampleParseError) as excinfo:
        load_samples(path, 1.0)
    assert excinfo.value.line_number == 4
    assert ":4:" in str(excinfo.value)


def test_odd_length_rejected_unless_truncated(tmp_path):
    path = tmp_path / "odd.txt"
    path.write_text("\n".join(str(v) for v in range(7)))
    with pytest.raises(SampleParseError, match="odd"):
        load_samples(path, 1.0)
    assert len(load_samples(path, 1.0, allow_truncate=True)) == 6


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing\n\n")
    with pytest.raises(SampleParseError):
        load_samples(path, 1.0)


def test_signal_reader_sources(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("1\n2\n3\n4\n")
    reader = SignalReader(path=str(path), sample_rate=2.0)
    assert not reader.is_generated
    assert len(reader.read()) == 4

    generated = SignalReader(example=ExampleSpec(id=1))
    assert generated.is_generated
    assert "example 1" in generated.describe()

    with pytest.raises(InvalidInputError):
        SignalReader(path=str(path))
    with pytest.raises(InvalidInputError):
        SignalReader()


# ---------------------------------------------------------------- metrics

def test_identity_modes_score_perfectly(example1):
    report = mode_errors(example1.components, example1.components)
    assert report.assignment == {0: 0, 1: 1, 2: 2}
    assert_allclose(report.correlations, 1.0)
    assert_allclose(report.rmse_full, 0.0, atol=1e-15)


def test_constant_offset_keeps_correlation():
    truth = np.sin(np.linspace(0, 10, 400))
    report = mode_errors([truth + 0.5], [truth])
    assert report.correlations[0] == pytest.approx(1.0)
    assert report.rmse_full[0] == pytest.approx(0.5)
    assert report.rmse_central[0] == pytest.approx(0.5)


def test_metrics_reject_length_mismatch():
    with pytest.raises(InvalidInputError):
        mode_errors([np.ones(10)], [np.ones(12)])


def test_unmatched_truth_scores_nan():
    truths = [np.sin(np.arange(100.0)), np.cos(np.arange(100.0) / 3.0)]
    report = mode_errors([truths[0]], truths)
    assert report.assignment[1] is None
    assert np.isnan(report.correlations[1])
    assert report.to_frame().shape == (2, 5)


def test_pearson_of_constant_is_zero():
    assert pearson(np.ones(10), np.arange(10.0)) == 0.0


def test_example1_mapping(example1):
    result = efd_decompose(example1.signal, 4, extension=SignalExtension.SYMMETRIC)
    report = mode_errors(result.modes, example1.components)
    assert report.assignment == {0: 0, 1: 1, 2: 2}
    assert report.correlations[0] > 0.9
    data = report.to_dict()
    assert data['assignment'] == {'0': 0, '1': 1, '2': 2}
    assert data['central_fraction'] == pytest.approx(0.9)


# ---------------------------------------------------------------- benchmark

def test_benchmark_table_shape():
    table = benchmark([1], repetitions=3)
    assert list(table.columns) == BENCH_COLUMNS
    assert sorted(table['method']) == ['efd', 'ewt', 'fdm']
    assert (table['runs'] == 3).all()
    assert (table['median_seconds'] > 0).all()
    assert list(ratio_table(table).index) == [1]


def test_benchmark_needs_three_repetitions():
    with pytest.raises(InvalidInputError):
        benchmark([1], repetitions=2)


def test_benchmark_accepts_replacement_signal():
    table = benchmark([5], repetitions=3, signals={5: tone(7.0, sample_rate=360.0, n_samples=720)})
    assert isinstance(table, pd.DataFrame)
    assert len(table) == 3
