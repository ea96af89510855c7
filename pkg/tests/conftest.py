import os
import sys

import numpy as np
import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from core.spectral.corefiles.base import Signal  # noqa: E402
from core.testbed.generators import ExampleSpec, gen_example  # noqa: E402

SEED = 1234


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def example1():
    return gen_example(ExampleSpec(id=1))


@pytest.fixture(scope="session")
def example3():
    return gen_example(ExampleSpec(id=3))


@pytest.fixture(scope="session")
def example4():
    return gen_example(ExampleSpec(id=4, seed=SEED))


def tone(freq_hz: float, sample_rate: float = 1000.0, n_samples: int = 1000, amplitude: float = 1.0) -> Signal:
    t = np.arange(n_samples) / sample_rate
    return Signal(amplitude * np.cos(2.0 * np.pi * freq_hz * t), sample_rate)
