"""
Synthetic Testbed
Path: core/testbed/generators.py

The five benchmark signals and seeded additive white Gaussian noise.

1. linear trend + 4 Hz + 20 Hz harmonics
2. quadratic trend + linear chirp + piecewise 40/30 Hz tone
3. periodic amplitude + intra-wave frequency modulation
4. 3-DOF free vibration (1.1 / 1.3 / 3.1 Hz) with 20 dB noise
5. ECG-like record (P/QRS/T waves, baseline wander, noise)
"""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
import numpy.typing as npt
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from core.settings.configs import settings
from core.spectral.corefiles.base import Signal
from core.spectral.corefiles.errors import InvalidInputError

logger = logging.getLogger(__name__)

EXAMPLE_IDS = (1, 2, 3, 4, 5)

# (sample_rate, duration) per example
EXAMPLE_DEFAULTS: Dict[int, Tuple[float, float]] = {
    1: (1000.0, 1.0),
    2: (1000.0, 1.0),
    3: (1000.0, 1.0),
    4: (50.0, 20.0),
    5: (360.0, 1000.0 / 360.0),
}


class VibrationParams(BaseModel):
    """Free-decay parameters of the three-mode structure."""

    model_config = ConfigDict(frozen=True)

    amplitudes: Tuple[float, ...] = (1.0, 1.0, 1.0)
    frequencies: Tuple[float, ...] = (1.1, 1.3, 3.1)
    damping: Tuple[float, ...] = (0.02, 0.012, 0.008)
    phases: Tuple[float, ...] = (0.0, 0.0, 0.0)
    snr_db: Optional[float] = 20.0

    @field_validator("damping")
    @classmethod
    def _underdamped(cls, value):
        if any(not 0.0 <= zeta < 1.0 for zeta in value):
            raise ValueError("damping ratios must lie in [0, 1)")
        return value

    def damped_frequencies(self) -> List[float]:
        return [f * np.sqrt(1.0 - zeta ** 2) for f, zeta in zip(self.frequencies, self.damping)]


class ExampleSpec(BaseModel):
    """
    Which example to generate and how.

    sample_rate and duration default per example id; seed drives every noise
    term (examples 4 and 5).
    """

    model_config = ConfigDict(frozen=True)

    id: int
    sample_rate: Optional[float] = Field(default=None, gt=0)
    duration: Optional[float] = Field(default=None, gt=0)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED)
    vibration: VibrationParams = Field(default_factory=VibrationParams)

    @property
    def resolved_rate(self) -> float:
        if self.sample_rate is not None:
            return self.sample_rate
        return EXAMPLE_DEFAULTS.get(self.id, (1000.0, 1.0))[0]

    @property
    def resolved_duration(self) -> float:
        if self.duration is not None:
            return self.duration
        return EXAMPLE_DEFAULTS.get(self.id, (1000.0, 1.0))[1]

    @property
    def n_samples(self) -> int:
        return int(round(self.resolved_rate * self.resolved_duration))

    def times(self) -> npt.NDArray[np.float64]:
        return np.arange(self.n_samples) / self.resolved_rate


@dataclass(frozen=True, eq=False)
class GeneratedExample:
    """Composite signal, its clean truth components and the noise realisation (if any)."""

    signal: Signal
    components: List[npt.NDArray[np.float64]]
    names: List[str]
    noise: Optional[npt.NDArray[np.float64]] = None

    def __iter__(self) -> Iterator:
        # unpacks as (signal, components)
        return iter((self.signal, self.components))

    def to_frame(self) -> pd.DataFrame:
        """Columns t, signal, comp1..compM."""
        frame = pd.DataFrame({'t': self.signal.times, 'signal': self.signal.samples})
        for i, component in enumerate(self.components, start=1):
            frame[f'comp{i}'] = component
        return frame


# Noise

def awgn_noise(samples: npt.ArrayLike, snr_db: float, seed: int) -> npt.NDArray[np.float64]:
    """White Gaussian noise with variance mean(x^2) / 10^(snr_db / 10)."""
    samples = np.asarray(samples, dtype=np.float64)
    power = float(np.mean(samples ** 2))
    if power == 0.0:
        raise InvalidInputError("cannot set an SNR against an all-zero signal")
    variance = power / 10.0 ** (snr_db / 10.0)
    rng = np.random.default_rng(seed)
    return rng.normal(0.0, np.sqrt(variance), samples.shape[0])


def add_awgn(signal: Signal, snr_db: Optional[float], seed: Optional[int] = None) -> Signal:
    """
    Add seeded white Gaussian noise at the given SNR.

    snr_db None (or +inf) returns the signal unchanged.
    """
    if snr_db is None or np.isposinf(snr_db):
        return signal
    seed = settings.DEFAULT_SEED if seed is None else seed
    noise = awgn_noise(signal.samples, snr_db, seed)
    return Signal(signal.samples + noise, signal.sample_rate)


# Generators

def _example_1(t, spec: ExampleSpec):
    return [6.0 * t, 2.0 * np.cos(8.0 * np.pi * t), np.cos(40.0 * np.pi * t)], ['f11', 'f12', 'f13'], None


def _example_2(t, spec: ExampleSpec):
    # branches as printed: 40 Hz up to t = 0.5, 30 Hz after
    piecewise = np.where(t <= 0.5, np.cos(80.0 * np.pi * t - 15.0 * np.pi), np.cos(60.0 * np.pi * t))
    return [6.0 * t ** 2, np.cos(15.0 * np.pi * t + np.pi * t ** 2), piecewise], ['f21', 'f22', 'f23'], None


def _example_3(t, spec: ExampleSpec):
    amplitude_wave = 1.0 / (1.2 + np.cos(2.0 * np.pi * t))
    modulated = np.cos(32.0 * np.pi * t + 0.2 * np.cos(64.0 * np.pi * t)) / (1.2 + np.sin(2.0 * np.pi * t))
    return [amplitude_wave, modulated], ['f31', 'f32'], None


def _example_4(t, spec: ExampleSpec):
    params = spec.vibration
    components = []
    for a, f, zeta, theta, fd in zip(params.amplitudes, params.frequencies, params.damping,
                                     params.phases, params.damped_frequencies()):
        components.append(a * np.exp(-2.0 * np.pi * f * zeta * t) * np.cos(2.0 * np.pi * fd * t + theta))
    noise = None
    if params.snr_db is not None:
        noise = awgn_noise(np.sum(components, axis=0), params.snr_db, spec.seed)
    return components, [f'mode_{f:g}hz' for f in params.frequencies], noise


def _gaussian_wave(t, centers, width, height):
    wave = np.zeros_like(t)
    for center in centers:
        wave += height * np.exp(-0.5 * ((t - center) / width) ** 2)
    return wave


def _example_5(t, spec: ExampleSpec):
    period = 0.8  # 75 bpm
    beats = np.arange(-period, t[-1] + period, period) + 0.3
    cardiac = (_gaussian_wave(t, beats - 0.16, 0.025, 0.12)      # P
               + _gaussian_wave(t, beats - 0.025, 0.008, -0.12)  # Q
               + _gaussian_wave(t, beats, 0.010, 1.0)            # R
               + _gaussian_wave(t, beats + 0.03, 0.010, -0.25)   # S
               + _gaussian_wave(t, beats + 0.25, 0.045, 0.30))   # T
    wander = 0.15 * np.sin(2.0 * np.pi * 0.3 * t + 0.5)
    noise = awgn_noise(cardiac + wander, 30.0, spec.seed)
    return [wander, cardiac], ['baseline', 'cardiac'], noise


GENERATORS: Dict[int, Callable] = {
    1: _example_1,
    2: _example_2,
    3: _example_3,
    4: _example_4,
    5: _example_5,
}


def gen_example(spec: ExampleSpec) -> GeneratedExample:
    """
    Sample one example on t = n / fs, n = 0..K-1.

    Truth components exclude noise; signal = sum(components) + noise.

    Raises:
        InvalidInputError: unknown example id.
    """
    generator = GENERATORS.get(spec.id)
    if generator is None:
        raise InvalidInputError(f"unknown example id {spec.id}; expected one of {list(EXAMPLE_IDS)}")
    t = spec.times()
    components, names, noise = generator(t, spec)
    composite = np.sum(components, axis=0)
    if noise is not None:
        composite = composite + noise
    logger.debug(f"generated example {spec.id}: K={t.shape[0]}, fs={spec.resolved_rate:g}")
    return GeneratedExample(Signal(composite, spec.resolved_rate), components, names, noise)


__all__ = [
    'EXAMPLE_IDS',
    'VibrationParams',
    'ExampleSpec',
    'GeneratedExample',
    'awgn_noise',
    'add_awgn',
    'gen_example',
]
