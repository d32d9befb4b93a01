"""Shared typing utilities for the vects1 package."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Literal, Protocol, Union, runtime_checkable

if TYPE_CHECKING:
    from .fourier import FourierSeries
    from .operators import OperatorMatrix


class ArithmeticMode(str, Enum):
    """Scalar arithmetic used by series and operators.

    ``FLOAT`` stores complex128 values; ``RATIONAL`` stores exact Gaussian
    rationals (``sympy.QQ_I`` elements) so identities can be checked with zero
    tolerance.

    Examples:
        >>> from vects1 import ArithmeticMode, FourierSeries
        >>> f = FourierSeries.cos(1, mode=ArithmeticMode.RATIONAL)
        >>> f.mode
        <ArithmeticMode.RATIONAL: 'rational'>
    """

    FLOAT = "float"
    RATIONAL = "rational"


class KernelKind(str, Enum):
    """Shape of the admissible (alpha, beta) set returned by a classification."""

    PLANE = "plane"
    LINE = "line"
    POINT = "point"


ModeLike = Union[ArithmeticMode, Literal["float", "rational"]]
RealLike = Union[int, float, Fraction]
Symbol = Callable[[int], RealLike | complex]
SeriesMap = Callable[["FourierSeries"], "FourierSeries"]
ValueMap = Callable[["FourierSeries"], float]


@runtime_checkable
class SupportsStructure(Protocol):
    """Protocol for callables returning the Poisson operator at a point ``m``."""

    def __call__(self, m: "FourierSeries", /) -> "OperatorMatrix": ...


def coerce_mode(mode: ModeLike | None) -> ArithmeticMode:
    """Normalise strings and ``None`` into an :class:`ArithmeticMode`."""
    if mode is None:
        return ArithmeticMode.FLOAT
    if isinstance(mode, ArithmeticMode):
        return mode
    return ArithmeticMode(mode)
