"""Serialization helpers."""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
from sympy.polys.domains.gaussiandomains import GaussianElement

from .scalars import to_complex


def _number(value: float) -> float | str:
    if math.isfinite(value):
        return value
    return str(value)


def ensure_serializable(value: Any) -> Any:
    """Best-effort conversion to JSON-serializable objects.

    Complex numbers become ``[re, im]`` pairs, Fractions become ``"p/q"``
    strings (integers stay integers) and numpy values become Python values.
    """
    if value is None or isinstance(value, (str, bool, int)):
        return value
    if isinstance(value, float):
        return _number(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, GaussianElement):
        value = to_complex(value)
    if isinstance(value, complex):
        return [_number(value.real), _number(value.imag)]
    if isinstance(value, np.generic):
        return ensure_serializable(value.item())
    if isinstance(value, np.ndarray):
        return [ensure_serializable(item) for item in value.tolist()]
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "to_json"):
        return ensure_serializable(value.to_json())
    if hasattr(value, "model_dump"):
        return ensure_serializable(value.model_dump(mode="json"))
    if isinstance(value, dict):
        return {str(key): ensure_serializable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set)):
        return [ensure_serializable(item) for item in value]
    return str(value)
