"""Run configuration for the command-line front end."""

from __future__ import annotations

import math
import os
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .exceptions import InvalidConfigError
from .types import ArithmeticMode

THREADS_ENV = "VECTS1_THREADS"
MAX_K = 16


def worker_count() -> int:
    """Worker cap for scans and flow sweeps, read from ``VECTS1_THREADS``.

    Defaults to ``min(4, cpu_count)``.

    Raises:
        InvalidConfigError: If the variable is set but is not a positive integer.
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return max(1, min(4, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from exc
    if value < 1:
        raise InvalidConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def parse_k_range(value: str | int | list[int]) -> list[int]:
    """Parse ``"3"``, ``"0..5"`` or ``"0,1,3"`` into a list of ``k`` values."""
    if isinstance(value, int):
        return [value]
    if isinstance(value, list):
        return [int(v) for v in value]
    text = str(value).strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        start, stop = int(lo), int(hi)
        if stop < start:
            raise ValueError(f"empty k range {text!r}")
        return list(range(start, stop + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def parse_rational(value: str | int | float | Fraction) -> Fraction:
    """Exact value of a decimal or ``p/q`` literal."""
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class Command(str, Enum):
    CLASSIFY = "classify"
    SCAN = "scan"
    COCYCLE_CHECK = "cocycle-check"
    EVOLVE = "evolve"
    CROSSCHECK = "crosscheck"
    GRADCHECK = "gradcheck"


class FlowSettings(BaseModel):
    """Parameters of a single geodesic-flow run."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    T: float = Field(default=1.0, ge=0.0)
    dt: float = Field(default=1e-3, gt=0.0)
    grid_points: int = Field(default=128, ge=4)
    init: str = "2cos"
    breaking_threshold: float = Field(default=1e3, gt=0.0)
    dump_coefficients: bool = False
    record_every: int = Field(default=1, ge=1)

    @field_validator("grid_points")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("grid_points must be a power of two")
        return value

    @field_validator("T", "dt")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("must be finite")
        return value


class RunConfig(BaseModel):
    """Validated parameters for one CLI command.

    Examples:
        >>> config = RunConfig.build(command="classify", k_values="0..5", n_max=6)
        >>> config.k_values
        [0, 1, 2, 3, 4, 5]
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    k_values: list[int] = Field(default_factory=lambda: [0, 1])
    n_max: int = Field(default=6, ge=2)
    n_values: list[int] | None = None
    alpha_beta: list[tuple[str, str]] = Field(
        default_factory=lambda: [("1", "0"), ("0", "1"), ("-1", "1"), ("2", "-2")]
    )
    m0: str = "cos"
    beta: str = "0"
    bound: int = Field(default=6, ge=1)
    x_values: list[float] = Field(default_factory=lambda: [math.pi / 6, math.pi / 2, 1.0])
    flow: FlowSettings = Field(default_factory=FlowSettings)
    out_dir: Path = Path("vects1-out")
    mode: ArithmeticMode = ArithmeticMode.FLOAT
    seed: int = 0
    samples: int = Field(default=3, ge=1)
    threads: int | None = Field(default=None, ge=1)

    @field_validator("k_values", mode="before")
    @classmethod
    def _parse_k(cls, value: Any) -> list[int]:
        return parse_k_range(value)

    @field_validator("k_values")
    @classmethod
    def _check_k(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("at least one k is required")
        if any(k < 0 or k > MAX_K for k in value):
            raise ValueError(f"k must lie in 0..{MAX_K}")
        return value

    @field_validator("n_values")
    @classmethod
    def _check_n(cls, value: list[int] | None) -> list[int] | None:
        if value is not None:
            if not value:
                raise ValueError("scan grid needs at least one n")
            if any(n < 1 for n in value):
                raise ValueError("n must be a positive integer")
        return value

    @field_validator("alpha_beta")
    @classmethod
    def _check_alpha_beta(cls, value: list[tuple[str, str]]) -> list[tuple[str, str]]:
        if not value:
            raise ValueError("scan grid needs at least one (alpha, beta) pair")
        for alpha, beta in value:
            parse_rational(alpha)
            parse_rational(beta)
        return value

    @field_validator("beta")
    @classmethod
    def _check_beta(cls, value: str) -> str:
        parse_rational(value)
        return value

    @classmethod
    def build(cls, **values: Any) -> "RunConfig":
        """Validate ``values`` and raise :class:`InvalidConfigError` on failure."""
        try:
            return cls(**values)
        except (ValidationError, ValueError, ZeroDivisionError) as exc:
            raise InvalidConfigError(str(exc)) from exc

    @property
    def scan_ns(self) -> list[int]:
        return self.n_values if self.n_values is not None else list(range(1, self.n_max + 1))

    def number(self, text: str) -> Fraction | float:
        """A parameter in the configured arithmetic."""
        exact = parse_rational(text)
        return exact if self.mode is ArithmeticMode.RATIONAL else float(exact)

    def scan_grid(self) -> list[tuple[Fraction | float, Fraction | float]]:
        return [(self.number(a), self.number(b)) for a, b in self.alpha_beta]

    def workers(self) -> int:
        return self.threads or worker_count()
