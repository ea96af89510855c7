"""
Exception Hierarchy
===================
Every failure the toolkit raises on purpose derives from DecompositionError
and knows the CLI exit status it maps to.
"""
from typing import Optional

from .enums import ExitStatus


class DecompositionError(Exception):
    """Base class for toolkit errors."""

    exit_status = ExitStatus.NUMERICAL


class InvalidInputError(DecompositionError, ValueError):
    """Signal, spectrum or argument violates a documented precondition."""


class ConventionViolationError(DecompositionError):
    """A spectrum that should synthesise a real signal carries an imaginary residue."""


class ConfigurationError(DecompositionError, ValueError):
    """Parameter combination is inadmissible (e.g. EWT gamma too large)."""


class SampleParseError(DecompositionError):
    """A sample file could not be read or holds a non-numeric line."""

    exit_status = ExitStatus.INPUT

    def __init__(self, message: str, path: Optional[str] = None, line_number: Optional[int] = None):
        self.path = path
        self.line_number = line_number
        location = ""
        if path is not None:
            location = f"{path}"
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        super().__init__(f"{location}{message}")


def exit_status_for(exc: BaseException) -> ExitStatus:
    """Map an exception to the CLI exit status."""
    if isinstance(exc, DecompositionError):
        return exc.exit_status
    if isinstance(exc, (OSError, UnicodeDecodeError)):
        return ExitStatus.INPUT
    return ExitStatus.NUMERICAL


__all__ = [
    'DecompositionError',
    'InvalidInputError',
    'ConventionViolationError',
    'ConfigurationError',
    'SampleParseError',
    'exit_status_for',
]
