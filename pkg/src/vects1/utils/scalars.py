"""Scalar helpers shared by the float and exact-rational code paths."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable

import numpy as np
from sympy import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianElement

from ..types import ArithmeticMode


def to_fraction(value: Any) -> Fraction:
    """Convert ints, strings, floats, Fractions and sympy rationals to a Fraction.

    Floats are converted exactly (binary expansion); pass strings such as
    ``"0.1"`` or ``"1/3"`` to get the decimal or rational value instead.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    if hasattr(value, "p") and hasattr(value, "q"):  # sympy.Rational
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def gaussian(value: Any) -> GaussianElement:
    """Return ``value`` as an exact Gaussian rational (a ``QQ_I`` element)."""
    if isinstance(value, GaussianElement):
        if value.parent() is QQ_I:
            return value
        return QQ_I(QQ(int(value.x)), QQ(int(value.y)))
    if isinstance(value, complex):
        re, im = to_fraction(value.real), to_fraction(value.imag)
    elif isinstance(value, tuple):
        re, im = to_fraction(value[0]), to_fraction(value[1])
    else:
        re, im = to_fraction(value), Fraction(0)
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def to_complex(value: Any) -> complex:
    """Convert any supported scalar to a Python complex."""
    if isinstance(value, GaussianElement):
        return complex(float(to_fraction(value.x)), float(to_fraction(value.y)))
    return complex(value)


def real_part(value: Any) -> Fraction | float:
    """Real part as a Fraction for exact scalars, float otherwise."""
    if isinstance(value, GaussianElement):
        return to_fraction(value.x)
    return complex(value).real


def imag_part(value: Any) -> Fraction | float:
    """Imaginary part as a Fraction for exact scalars, float otherwise."""
    if isinstance(value, GaussianElement):
        return to_fraction(value.y)
    return complex(value).imag


def conj(value: Any) -> Any:
    if isinstance(value, GaussianElement):
        return QQ_I(value.x, -value.y)
    return complex(value).conjugate()


def magnitude(value: Any) -> float:
    return abs(to_complex(value))


def is_zero(value: Any, tol: float = 0.0) -> bool:
    """Exact zero test for Gaussian rationals, ``|value| <= tol`` otherwise."""
    if isinstance(value, GaussianElement):
        return not value
    return abs(complex(value)) <= tol


def as_scalar(value: Any, mode: ArithmeticMode) -> Any:
    if mode is ArithmeticMode.RATIONAL:
        return gaussian(value)
    if isinstance(value, GaussianElement):
        return to_complex(value)
    if isinstance(value, Fraction):
        return complex(float(value))
    return complex(value)


def zero(mode: ArithmeticMode) -> Any:
    return QQ_I.zero if mode is ArithmeticMode.RATIONAL else 0j


def zeros(shape: int | tuple[int, ...], mode: ArithmeticMode) -> np.ndarray:
    """Zero-filled coefficient storage: complex128 or an object array of ``QQ_I`` zeros."""
    if mode is ArithmeticMode.RATIONAL:
        return np.full(shape, QQ_I.zero, dtype=object)
    return np.zeros(shape, dtype=complex)


def convert_array(values: np.ndarray, mode: ArithmeticMode) -> np.ndarray:
    """Convert a coefficient array of any shape into ``mode`` storage."""
    if mode is ArithmeticMode.FLOAT:
        if values.dtype != object:
            return np.array(values, dtype=complex)
        flat = [to_complex(v) for v in values.ravel()]
        return np.asarray(flat, dtype=complex).reshape(values.shape)
    flat = [gaussian(v) for v in values.ravel()]
    out = np.empty(values.size, dtype=object)
    out[:] = flat
    return out.reshape(values.shape)


def mode_of(values: np.ndarray) -> ArithmeticMode:
    return ArithmeticMode.RATIONAL if values.dtype == object else ArithmeticMode.FLOAT


def i_power(j: int, order: int, mode: ArithmeticMode) -> Any:
    """The derivative symbol ``(i j)**order`` in the requested arithmetic."""
    if mode is ArithmeticMode.RATIONAL:
        return QQ_I(0, int(j)) ** int(order)
    return (1j * j) ** order


def exact_sum(values: Iterable[Any], mode: ArithmeticMode) -> Any:
    total = zero(mode)
    for value in values:
        total = total + value
    return total


def rational_or_float(value: Any) -> Fraction | float:
    """Keep exact inputs exact; everything else becomes a float."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return float(value)
