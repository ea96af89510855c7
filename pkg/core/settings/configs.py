"""
Runtime Settings
Path: core/settings/configs.py

Environment-driven defaults for the decomposition toolkit.
Values are read once at import; run.py loads .env before importing this module.
"""

import os

from pydantic import BaseModel, Field, field_validator


VERSION = "1.0.0"


class Config(BaseModel):
    """
    Validated settings snapshot.

    Every field has a default taken from an EFD_* environment variable, so the
    toolkit runs with no environment at all.
    """

    LOG_LEVEL: str = Field(default_factory=lambda: os.getenv("EFD_LOG_LEVEL", "WARNING"))
    DEFAULT_SEED: int = Field(default_factory=lambda: int(os.getenv("EFD_DEFAULT_SEED", 1234)))
    GAMMA_FRACTION: float = Field(default_factory=lambda: float(os.getenv("EFD_GAMMA_FRACTION", 0.9)))
    PHASE_EPSILON: float = Field(default_factory=lambda: float(os.getenv("EFD_PHASE_EPSILON", 1e-10)))
    CENTRAL_FRACTION: float = Field(default_factory=lambda: float(os.getenv("EFD_CENTRAL_FRACTION", 0.9)))
    FLOAT_FORMAT: str = Field(default_factory=lambda: os.getenv("EFD_FLOAT_FORMAT", "%.12g"))
    BENCH_REPS: int = Field(default_factory=lambda: int(os.getenv("EFD_BENCH_REPS", 5)))

    @field_validator("LOG_LEVEL")
    @classmethod
    def _known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {value}")
        return value

    @field_validator("GAMMA_FRACTION")
    @classmethod
    def _open_unit_interval(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("GAMMA_FRACTION must lie in (0, 1)")
        return value

    @field_validator("PHASE_EPSILON")
    @classmethod
    def _non_negative(cls, value: float) -> float:
        if value < 0.0:
            raise ValueError("PHASE_EPSILON must be >= 0")
        return value

    @field_validator("CENTRAL_FRACTION")
    @classmethod
    def _fraction(cls, value: float) -> float:
        if not 0.0 < value <= 1.0:
            raise ValueError("CENTRAL_FRACTION must lie in (0, 1]")
        return value

    @field_validator("BENCH_REPS")
    @classmethod
    def _min_reps(cls, value: int) -> int:
        if value < 3:
            raise ValueError("BENCH_REPS must be >= 3")
        return value

    @classmethod
    def load(cls) -> "Config":
        """Build a settings snapshot from the current environment."""
        return cls()


settings = Config.load()
