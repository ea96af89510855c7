"""
Timing Harness
Path: core/testbed/benchmark.py

Median wall time of EFD, EWT and FDM per example, single-threaded.
"""

import logging
import statistics
import time
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List, Mapping, Optional

import pandas as pd

from core.decomposition.decomposition_handler import DecompositionHandler
from core.settings.configs import settings
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.enums import DecompositionMethod
from core.spectral.corefiles.errors import InvalidInputError
from core.testbed.generators import ExampleSpec, gen_example

logger = logging.getLogger(__name__)

# requested segment counts per example (EFD and EWT)
DEFAULT_SEGMENTS: Dict[int, int] = {1: 4, 2: 5, 3: 3, 4: 4, 5: 11}

BENCH_COLUMNS = ['example', 'method', 'median_seconds', 'runs']


@dataclass(frozen=True)
class BenchmarkRow:
    example: int
    method: str
    median_seconds: float
    runs: int


def time_method(handler: DecompositionHandler, signal: Signal, repetitions: int) -> List[float]:
    """Wall time of `repetitions` runs after one untimed warm-up."""
    handler.decompose(signal)
    timings = []
    for _ in range(repetitions):
        start = time.perf_counter()
        handler.decompose(signal)
        timings.append(time.perf_counter() - start)
    return timings


def benchmark(example_ids: Iterable[int], repetitions: Optional[int] = None,
              signals: Optional[Mapping[int, Signal]] = None,
              seed: Optional[int] = None) -> pd.DataFrame:
    """
    Time every method on every example.

    Args:
        example_ids: Examples to run (1..5).
        repetitions: Timed runs per cell, at least 3.
        signals: Optional replacement signals by example id (e.g. a recorded ECG
            for example 5).
        seed: Noise seed for generated examples.

    Returns:
        DataFrame with columns example, method, median_seconds, runs.
    """
    repetitions = settings.BENCH_REPS if repetitions is None else repetitions
    if repetitions < 3:
        raise InvalidInputError(f"repetitions must be >= 3, got {repetitions}")
    seed = settings.DEFAULT_SEED if seed is None else seed
    signals = dict(signals or {})

    rows: List[BenchmarkRow] = []
    for example_id in example_ids:
        signal = signals.get(example_id)
        if signal is None:
            signal = gen_example(ExampleSpec(id=example_id, seed=seed)).signal
        n_segments = DEFAULT_SEGMENTS.get(example_id, 4)
        for method in DecompositionMethod:
            handler = DecompositionHandler(method, n_segments=n_segments)
            timings = time_method(handler, signal, repetitions)
            row = BenchmarkRow(example_id, method.value, statistics.median(timings), len(timings))
            logger.info(f"example {example_id} | {method.value.upper()} | median {row.median_seconds:.6f} s")
            rows.append(row)

    return pd.DataFrame([asdict(row) for row in rows], columns=BENCH_COLUMNS)


def ratio_table(table: pd.DataFrame) -> pd.DataFrame:
    """One row per example, one column per method (wide layout)."""
    return table.pivot(index='example', columns='method', values='median_seconds')


__all__ = [
    'DEFAULT_SEGMENTS',
    'BenchmarkRow',
    'time_method',
    'benchmark',
    'ratio_table',
]
