"""
Command Line Interface
Path: core/cli/commands.py

Subcommands: gen, boundaries, decompose, tfr, errors, bench.
Exit status: 0 success, 2 usage error, 3 input error, 4 numerical or
configuration error.
"""

import functools
import logging
from typing import List, Optional

import click
import pandas as pd
from pydantic import BaseModel, ValidationError, model_validator

from core.decomposition.decomposition_handler import DecompositionHandler
from core.decomposition.ewt import build_filter_bank, default_gamma
from core.decomposition.results import DecompositionResult
from core.settings.configs import VERSION, settings
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import (
    DecompositionMethod,
    ExitStatus,
    SegmentationMethod,
    SignalExtension,
    get_all_enum_values,
)
from core.spectral.corefiles.errors import DecompositionError, exit_status_for
from core.spectral.segmentation import compute_boundaries
from core.spectral.spectral_core import forward_transform, half_magnitudes
from core.testbed.benchmark import benchmark
from core.testbed.generators import EXAMPLE_IDS, ExampleSpec, gen_example
from core.testbed.loader import SignalReader, load_samples
from core.testbed.metrics import mode_errors
from core.tfr.tfr_core import instantaneous_attributes, tf_grid
from core.cli.outputs import envelope, write_csv, write_json

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    """One validated invocation."""

    subcommand: str
    input_path: Optional[str] = None
    example_id: Optional[int] = None
    sample_rate: Optional[float] = None
    n_segments: Optional[int] = None
    method: DecompositionMethod = DecompositionMethod.EFD
    segmentation: Optional[SegmentationMethod] = None
    gamma: Optional[float] = None
    extension: SignalExtension = SignalExtension.NONE
    seed: Optional[int] = None
    allow_truncate: bool = False

    @model_validator(mode="after")
    def _check_sources(self) -> "RunConfig":
        if (self.input_path is None) == (self.example_id is None):
            raise ValueError("give exactly one of --in or --example")
        if self.input_path is not None and self.sample_rate is None:
            raise ValueError("--in needs --fs")
        if self.method.needs_segments() and self.n_segments is None:
            raise ValueError(f"--method {self.method.value} needs --segments")
        if self.n_segments is not None and self.n_segments < 1:
            raise ValueError("--segments must be >= 1")
        return self

    @property
    def resolved_seed(self) -> int:
        return settings.DEFAULT_SEED if self.seed is None else self.seed

    def reader(self) -> SignalReader:
        if self.input_path is not None:
            return SignalReader(path=self.input_path, sample_rate=self.sample_rate,
                                allow_truncate=self.allow_truncate)
        spec = ExampleSpec(id=self.example_id, sample_rate=self.sample_rate, seed=self.resolved_seed)
        return SignalReader(example=spec, allow_truncate=self.allow_truncate)

    def handler(self) -> DecompositionHandler:
        return DecompositionHandler(self.method, n_segments=self.n_segments, segmentation=self.segmentation,
                                    gamma=self.gamma, extension=self.extension)


def _build_config(ctx: click.Context, **fields) -> RunConfig:
    try:
        return RunConfig(subcommand=ctx.info_name, **fields)
    except ValidationError as e:
        message = "; ".join(error["msg"].removeprefix("Value error, ") for error in e.errors())
        raise click.UsageError(message, ctx=ctx)


def _args_text(ctx: click.Context) -> str:
    # deterministic rendering of the parsed arguments
    parts = [ctx.info_name]
    for name, value in sorted(ctx.params.items()):
        if value is None or value is False:
            continue
        parts.append(f"--{name.replace('_', '-')}" if value is True else f"--{name.replace('_', '-')}={value}")
    return " ".join(parts)


def handle_errors(func):
    """Turn toolkit errors into a one-line message and the mapped exit status."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return func(*args, **kwargs)
        except DecompositionError as e:
            status = exit_status_for(e)
            logger.error(f"{ctx.info_name} failed ({status.name}): {e}")
            click.echo(f"error: {e}", err=True)
            ctx.exit(int(status))
        except OSError as e:
            logger.error(f"{ctx.info_name} failed: {e}")
            click.echo(f"error: {e}", err=True)
            ctx.exit(int(ExitStatus.INPUT))

    return wrapper


def _decompose(config: RunConfig, signal: Signal) -> DecompositionResult:
    outcome = config.handler().process(signal)
    if not outcome["success"]:
        click.echo(f"error: {outcome['message']}", err=True)
        click.get_current_context().exit(outcome["status"])
    return outcome["result"]


def _summary(result: DecompositionResult, signal: Signal) -> str:
    residual = result.reconstruction_residual(signal)
    return f"{result.method.value}: realized segments {result.realized_segments}, modes {result.n_modes}, residual {residual:.3e}"


# Shared options

def input_options(func):
    options = [
        click.option("--in", "input_path", type=click.Path(dir_okay=False), help="Sample file (text or CSV)."),
        click.option("--example", "example_id", type=click.IntRange(1, len(EXAMPLE_IDS)), help="Generate example 1-5 instead."),
        click.option("--fs", "sample_rate", type=click.FloatRange(min=0, min_open=True), help="Sample rate in Hz."),
        click.option("--seed", type=int, help="Noise seed for generated examples."),
        click.option("--allow-truncate", is_flag=True, help="Drop the last sample of odd-length input."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def method_options(func):
    options = [
        click.option("--method", type=click.Choice(get_all_enum_values(DecompositionMethod)), default="efd",
                     show_default=True),
        click.option("--segments", "n_segments", type=click.IntRange(min=1), help="Requested segment count."),
        click.option("--segmentation", type=click.Choice(get_all_enum_values(SegmentationMethod)),
                     help="EWT boundary rule (midpoint_maxima or local_minima)."),
        click.option("--gamma", type=click.FloatRange(0, 1, min_open=True, max_open=True),
                     help="EWT transition ratio."),
        click.option("--extension", type=click.Choice(get_all_enum_values(SignalExtension)), default="none",
                     show_default=True, help="EFD frame extension."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log progress to stderr.")
@click.version_option(version=VERSION, prog_name="efd-toolkit")
def cli(verbose: bool):
    """Empirical Fourier decomposition toolkit with EWT and FDM baselines."""
    if verbose:
        logging.getLogger().setLevel(logging.INFO)


@cli.command()
@click.option("--example", "example_id", type=click.IntRange(1, len(EXAMPLE_IDS)), required=True)
@click.option("--fs", "sample_rate", type=click.FloatRange(min=0, min_open=True))
@click.option("--duration", type=click.FloatRange(min=0, min_open=True))
@click.option("--seed", type=int)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), required=True)
@click.pass_context
@handle_errors
def gen(ctx, example_id, sample_rate, duration, seed, out_path):
    """Write an example signal and its truth components (t,signal,comp1,...)."""
    seed = settings.DEFAULT_SEED if seed is None else seed
    generated = gen_example(ExampleSpec(id=example_id, sample_rate=sample_rate, duration=duration, seed=seed))
    write_csv(generated.to_frame(), out_path, _args_text(ctx), seed)
    signal = generated.signal
    click.echo(f"example {example_id}: {len(signal)} samples at {signal.sample_rate:g} Hz, "
               f"{len(generated.components)} components")


@cli.command()
@input_options
@click.option("--segments", "n_segments", type=click.IntRange(min=1), required=True)
@click.option("--segmentation", type=click.Choice(get_all_enum_values(SegmentationMethod)),
              default=SegmentationMethod.LOWEST_MINIMA.value, show_default=True)
@click.option("--gamma", type=click.FloatRange(0, 1, min_open=True, max_open=True))
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.option("--filters-out", type=click.Path(dir_okay=False), help="Also write the EWT filter bank CSV.")
@click.pass_context
@handle_errors
def boundaries(ctx, input_path, example_id, sample_rate, seed, allow_truncate,
               n_segments, segmentation, gamma, out_path, filters_out):
    """Segment the half spectrum and report the boundaries (bins and Hz)."""
    config = _build_config(ctx, input_path=input_path, example_id=example_id, sample_rate=sample_rate,
                           seed=seed, allow_truncate=allow_truncate, n_segments=n_segments,
                           segmentation=segmentation, gamma=gamma)
    signal = config.reader().read()
    n_fft = len(signal)
    signal.require_even()
    found = compute_boundaries(half_magnitudes(forward_transform(signal)), n_segments, segmentation)

    args = _args_text(ctx)
    if out_path:
        data = found.to_dict(signal.sample_rate, n_fft)
        data['control_points'] = [point.to_dict() for point in found.control_points]
        write_json(envelope(data), out_path, args, config.resolved_seed)
    if filters_out:
        bank = build_filter_bank(found, gamma if gamma is not None else default_gamma(found, n_fft), n_fft)
        write_csv(bank.to_frame(signal.sample_rate), filters_out, args, config.resolved_seed)

    hz = ", ".join(f"{b:.4g}" for b in found.to_hz(signal.sample_rate, n_fft))
    click.echo(f"{segmentation}: realized segments {found.realized_segments} of {n_segments}; boundaries Hz [{hz}]")


@cli.command()
@input_options
@method_options
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.option("--bands-out", type=click.Path(dir_okay=False), help="JSON band report.")
@click.pass_context
@handle_errors
def decompose(ctx, input_path, example_id, sample_rate, seed, allow_truncate,
              method, n_segments, segmentation, gamma, extension, out_path, bands_out):
    """Decompose a signal; writes t,mode1..modeN."""
    config = _build_config(ctx, input_path=input_path, example_id=example_id, sample_rate=sample_rate,
                           seed=seed, allow_truncate=allow_truncate, method=method, n_segments=n_segments,
                           segmentation=segmentation, gamma=gamma, extension=extension)
    signal = config.reader().read()
    result = _decompose(config, signal)

    args = _args_text(ctx)
    if out_path:
        write_csv(result.to_frame(), out_path, args, config.resolved_seed)
    if bands_out:
        write_json(envelope(result.band_report()), bands_out, args, config.resolved_seed)
    click.echo(_summary(result, signal))


@cli.command()
@input_options
@method_options
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Track CSV t,amplitude,frequency_hz,mode.")
@click.option("--grid-out", type=click.Path(dir_okay=False), help="Grid CSV t_bin,f_bin,intensity.")
@click.option("--n-time", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--n-freq", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--fmax", type=click.FloatRange(min=0, min_open=True), help="Grid top frequency (default fs/2).")
@click.pass_context
@handle_errors
def tfr(ctx, input_path, example_id, sample_rate, seed, allow_truncate, method, n_segments, segmentation,
        gamma, extension, out_path, grid_out, n_time, n_freq, fmax):
    """Hilbert time-frequency representation of the decomposed modes."""
    config = _build_config(ctx, input_path=input_path, example_id=example_id, sample_rate=sample_rate,
                           seed=seed, allow_truncate=allow_truncate, method=method, n_segments=n_segments,
                           segmentation=segmentation, gamma=gamma, extension=extension)
    signal = config.reader().read()
    result = _decompose(config, signal)
    tracks = [instantaneous_attributes(mode.samples, signal.sample_rate, mode.label) for mode in result.modes]
    grid = tf_grid(tracks, n_time, n_freq, fmax or signal.sample_rate / 2.0, duration=signal.duration)

    args = _args_text(ctx)
    if out_path:
        frame = pd.concat([track.to_frame() for track in tracks], ignore_index=True)
        write_csv(frame, out_path, args, config.resolved_seed)
    if grid_out:
        write_csv(grid.to_frame(), grid_out, args, config.resolved_seed)
    click.echo(f"{_summary(result, signal)}; tf grid {n_time}x{n_freq}, dropped {grid.dropped}")


@cli.command()
@click.option("--example", "example_id", type=click.IntRange(1, len(EXAMPLE_IDS)), required=True)
@click.option("--seed", type=int)
@method_options
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.pass_context
@handle_errors
def errors(ctx, example_id, seed, method, n_segments, segmentation, gamma, extension, out_path):
    """Score the modes of a generated example against its truth components."""
    config = _build_config(ctx, example_id=example_id, seed=seed, method=method, n_segments=n_segments,
                           segmentation=segmentation, gamma=gamma, extension=extension)
    generated = gen_example(ExampleSpec(id=example_id, seed=config.resolved_seed))
    result = _decompose(config, generated.signal)
    report = mode_errors(result.modes, generated.components)

    if out_path:
        frame = report.to_frame()
        frame.insert(0, 'name', generated.names)
        write_csv(frame, out_path, _args_text(ctx), config.resolved_seed)
    scores = ", ".join(f"{name}->mode{'-' if j is None else j + 1} r={r:.4f}"
                       for name, j, r in zip(generated.names, report.assignment.values(), report.correlations))
    click.echo(f"{_summary(result, generated.signal)}; {scores}")


def _parse_ids(ctx, param, value: str) -> List[int]:
    try:
        ids = [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise click.BadParameter("expected a comma-separated list of example ids")
    unknown = [i for i in ids if i not in EXAMPLE_IDS]
    if not ids or unknown:
        raise click.BadParameter(f"example ids must be among {list(EXAMPLE_IDS)}")
    return ids


@cli.command()
@click.option("--examples", "example_ids", default="1,2,3,4,5", show_default=True, callback=_parse_ids)
@click.option("--reps", type=click.IntRange(min=3), default=None, help="Timed runs per cell (default from settings).")
@click.option("--ecg", "ecg_path", type=click.Path(dir_okay=False), help="Recorded ECG excerpt for example 5.")
@click.option("--ecg-fs", type=click.FloatRange(min=0, min_open=True), default=360.0, show_default=True)
@click.option("--seed", type=int)
@click.option("--out", "out_path", type=click.Path(dir_okay=False))
@click.pass_context
@handle_errors
def bench(ctx, example_ids, reps, ecg_path, ecg_fs, seed, out_path):
    """Median wall time of EFD, EWT and FDM per example."""
    seed = settings.DEFAULT_SEED if seed is None else seed
    signals = {}
    if ecg_path:
        signals[5] = load_samples(ecg_path, ecg_fs)
    table = benchmark(example_ids, reps, signals=signals, seed=seed)
    if out_path:
        write_csv(table, out_path, _args_text(ctx), seed)
    fastest = table.loc[table.groupby('example')['median_seconds'].idxmin(), 'method'].tolist()
    click.echo(f"bench: {len(example_ids)} examples, fastest per example {fastest}")


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return the exit status instead of exiting."""
    try:
        status = cli.main(args=argv, prog_name="efd-toolkit", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    return int(status) if isinstance(status, int) else int(ExitStatus.OK)


__all__ = [
    'RunConfig',
    'cli',
    'run',
]
