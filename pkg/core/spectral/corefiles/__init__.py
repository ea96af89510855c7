from .base import AnalyticSeries, Signal, Spectrum
from .enums import DecompositionMethod, ExitStatus, SegmentationMethod, SignalExtension
from .errors import (
    ConfigurationError,
    ConventionViolationError,
    DecompositionError,
    InvalidInputError,
    SampleParseError,
)

__all__ = [

#types
    'Signal',
    'Spectrum',
    'AnalyticSeries',

#enums
    'DecompositionMethod',
    'SegmentationMethod',
    'SignalExtension',
    'ExitStatus',

#errors
    'DecompositionError',
    'InvalidInputError',
    'ConventionViolationError',
    'ConfigurationError',
    'SampleParseError',
]
