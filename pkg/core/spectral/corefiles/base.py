from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import InvalidInputError


# Mixins

class SampledMixin:
    """Shared helpers for anything that carries `sample_rate` and a length."""

    sample_rate: float

    def __len__(self) -> int:
        return int(self._values().shape[0])

    def _values(self) -> npt.NDArray:
        raise NotImplementedError

    @property
    def duration(self) -> float:
        return len(self) / self.sample_rate

    @property
    def times(self) -> npt.NDArray[np.float64]:
        return np.arange(len(self)) / self.sample_rate


class EvenLengthMixin:

    def require_even(self, what: str = "signal") -> None:
        if len(self) % 2:
            raise InvalidInputError(f"{what} length must be even, got {len(self)}")


def _check_rate(sample_rate: float) -> float:
    sample_rate = float(sample_rate)
    if not np.isfinite(sample_rate) or sample_rate <= 0.0:
        raise InvalidInputError(f"sample_rate must be positive, got {sample_rate}")
    return sample_rate


# Domain types

@dataclass(frozen=True, eq=False)
class Signal(SampledMixin, EvenLengthMixin):
    """Uniformly sampled real time series."""

    samples: npt.NDArray[np.float64]
    sample_rate: float

    def __post_init__(self):
        samples = np.array(self.samples, dtype=np.float64).reshape(-1)
        if samples.shape[0] < 2:
            raise InvalidInputError(f"signal needs at least 2 samples, got {samples.shape[0]}")
        if not np.all(np.isfinite(samples)):
            raise InvalidInputError("signal contains non-finite samples")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    def _values(self):
        return self.samples

    def truncated_to_even(self) -> "Signal":
        """Drop the final sample of an odd-length signal."""
        if len(self) % 2 == 0:
            return self
        return Signal(self.samples[:-1], self.sample_rate)


@dataclass(frozen=True, eq=False)
class Spectrum(SampledMixin, EvenLengthMixin):
    """
    Discrete Fourier coefficients X[0..K-1].

    Analysis carries the 1/K factor: X[k] = (1/K) sum_n x[n] exp(-j2pi kn/K);
    synthesis is the bare sum.
    """

    coefficients: npt.NDArray[np.complex128]
    sample_rate: float

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        if coefficients.shape[0] < 2:
            raise InvalidInputError(f"spectrum needs at least 2 coefficients, got {coefficients.shape[0]}")
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "sample_rate", _check_rate(self.sample_rate))

    def _values(self):
        return self.coefficients

    @property
    def half(self) -> npt.NDArray[np.complex128]:
        """Coefficients 0..K/2 inclusive."""
        return self.coefficients[: len(self) // 2 + 1]

    @property
    def dc(self) -> float:
        return float(self.coefficients[0].real)

    @property
    def nyquist(self) -> float:
        return float(self.coefficients[len(self) // 2].real)

    def is_conjugate_symmetric(self, rtol: float = 1e-12) -> bool:
        x = self.coefficients
        mirrored = np.conj(np.roll(x[::-1], 1))
        scale = max(float(np.max(np.abs(x))), np.finfo(float).tiny)
        return bool(np.max(np.abs(x - mirrored)) <= rtol * scale)


@dataclass(frozen=True, eq=False)
class AnalyticSeries(SampledMixin):
    """Complex series whose real part is the originating real signal."""

    values: npt.NDArray[np.complex128]
    sample_rate: float

    def _values(self):
        return self.values

    @property
    def amplitude(self) -> npt.NDArray[np.float64]:
        return np.abs(self.values)

    @property
    def unwrapped_phase(self) -> npt.NDArray[np.float64]:
        return np.unwrap(np.angle(self.values))


__all__ = [
    'SampledMixin',
    'EvenLengthMixin',
    'Signal',
    'Spectrum',
    'AnalyticSeries',
]
