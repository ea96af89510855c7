import json
import re

import pytest
from click.testing import CliRunner

from core.cli.commands import cli, run
from core.cli.outputs import read_csv


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def gen_csv(runner, tmp_path):
    path = tmp_path / "ex1.csv"
    result = runner.invoke(cli, ["gen", "--example", "1", "--out", str(path)])
    assert result.exit_code == 0, result.output
    return path


def _residual(output: str) -> float:
    match = re.search(r"residual ([0-9.e+-]+)", output)
    assert match, output
    return float(match.group(1))


# ---------------------------------------------------------------- gen / decompose

def test_gen_writes_metadata_and_components(gen_csv):
    first = gen_csv.read_text().splitlines()[0]
    assert first.startswith("# efd-toolkit 1.0.0 | args=gen")
    assert first.endswith("seed=1234")
    frame = read_csv(gen_csv)
    assert list(frame.columns) == ['t', 'signal', 'comp1', 'comp2', 'comp3']
    assert len(frame) == 1000


def test_decompose_file_input(runner, gen_csv, tmp_path):
    out = tmp_path / "modes.csv"
    bands = tmp_path / "bands.json"
    result = runner.invoke(cli, ["decompose", "--in", str(gen_csv), "--fs", "1000", "--segments", "4",
                                 "--out", str(out), "--bands-out", str(bands)])
    assert result.exit_code == 0, result.output
    assert "realized segments 3" in result.output
    assert _residual(result.output) < 1e-10
    assert list(read_csv(out).columns) == ['t', 'mode1', 'mode2', 'mode3']
    document = json.loads(bands.read_text())
    assert document['meta']['program'] == 'efd-toolkit'
    assert document['count'] == 3


def test_decompose_output_is_deterministic(runner, tmp_path):
    out = tmp_path / "modes.csv"
    args = ["decompose", "--example", "4", "--segments", "4", "--out", str(out)]
    assert runner.invoke(cli, args).exit_code == 0
    first = out.read_bytes()
    assert runner.invoke(cli, args).exit_code == 0
    assert out.read_bytes() == first


@pytest.mark.parametrize("method", ["efd", "ewt", "fdm"])
def test_every_method_reconstructs(runner, method):
    args = ["decompose", "--example", "3", "--method", method]
    if method != "fdm":
        args += ["--segments", "3"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert f"{method}: realized segments" in result.output


# ---------------------------------------------------------------- exit statuses

def test_zero_segments_is_usage_error(runner):
    result = runner.invoke(cli, ["decompose", "--example", "1", "--segments", "0"])
    assert result.exit_code == 2


def test_missing_segments_is_usage_error(runner):
    assert runner.invoke(cli, ["decompose", "--example", "1", "--method", "ewt"]).exit_code == 2


def test_file_without_rate_is_usage_error(runner, gen_csv):
    assert runner.invoke(cli, ["decompose", "--in", str(gen_csv), "--segments", "3"]).exit_code == 2


def test_odd_file_is_input_error(runner, tmp_path):
    path = tmp_path / "odd.txt"
    path.write_text("\n".join(str(v) for v in range(999)))
    result = runner.invoke(cli, ["decompose", "--in", str(path), "--fs", "1000", "--segments", "3"])
    assert result.exit_code == 3
    assert "odd" in result.output

    truncated = runner.invoke(cli, ["decompose", "--in", str(path), "--fs", "1000", "--segments", "3",
                                    "--allow-truncate"])
    assert truncated.exit_code == 0, truncated.output


def test_missing_file_is_input_error(runner, tmp_path):
    result = runner.invoke(cli, ["decompose", "--in", str(tmp_path / "absent.txt"), "--fs", "10", "--segments", "2"])
    assert result.exit_code == 3


def test_inadmissible_gamma_is_configuration_error(runner):
    result = runner.invoke(cli, ["decompose", "--example", "1", "--method", "ewt", "--segments", "3",
                                 "--gamma", "0.99"])
    assert result.exit_code == 4
    assert "inadmissible" in result.output


def test_run_returns_status_codes(tmp_path):
    assert run(["decompose", "--example", "1", "--segments", "0"]) == 2
    assert run(["decompose", "--example", "1", "--method", "ewt", "--segments", "3", "--gamma", "0.99"]) == 4
    assert run(["gen", "--example", "2", "--out", str(tmp_path / "ex2.csv")]) == 0


# ---------------------------------------------------------------- other commands

def test_boundaries_json_and_filters(runner, tmp_path):
    out = tmp_path / "b.json"
    filters = tmp_path / "filters.csv"
    result = runner.invoke(cli, ["boundaries", "--example", "1", "--segments", "3",
                                 "--segmentation", "midpoint_maxima", "--out", str(out),
                                 "--filters-out", str(filters)])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())['data']
    assert data['boundaries_bins'] == [0.0, 2.0, 12.0, 500.0]
    assert data['realized'] == 3
    assert list(read_csv(filters).columns) == ['bin', 'hz', 'phi1', 'psi2', 'psi3']


def test_tfr_writes_tracks_and_grid(runner, tmp_path):
    tracks = tmp_path / "tracks.csv"
    grid = tmp_path / "grid.csv"
    result = runner.invoke(cli, ["tfr", "--example", "3", "--segments", "3", "--out", str(tracks),
                                 "--grid-out", str(grid), "--n-time", "20", "--n-freq", "10", "--fmax", "50"])
    assert result.exit_code == 0, result.output
    assert set(read_csv(tracks)['mode']) == {1, 2}
    assert len(read_csv(grid)) == 200


def test_errors_command(runner, tmp_path):
    out = tmp_path / "errors.csv"
    result = runner.invoke(cli, ["errors", "--example", "1", "--segments", "4", "--extension", "symmetric",
                                 "--out", str(out)])
    assert result.exit_code == 0, result.output
    frame = read_csv(out)
    assert list(frame['name']) == ['f11', 'f12', 'f13']
    assert (frame['correlation'] > 0.9).all()


def test_bench_command(runner, tmp_path):
    out = tmp_path / "bench.csv"
    result = runner.invoke(cli, ["bench", "--examples", "1", "--reps", "3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert len(read_csv(out)) == 3


def test_bench_rejects_unknown_example(runner):
    assert runner.invoke(cli, ["bench", "--examples", "1,9"]).exit_code == 2


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "1.0.0" in result.output
