"""Dense operator matrices on the truncated exponential basis.

Entry ``(j, l)`` of an :class:`OperatorMatrix` with bandwidth ``N`` is the
coefficient of ``exp(i j x)`` in the image of ``exp(i l x)``; rows and columns
are stored at offset ``N`` so the matrix is ``(2N + 1) x (2N + 1)``.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import IO, Any, Iterable, Sequence

import numpy as np

from .exceptions import BandwidthError, DimensionMismatchError, SingularSymbolError
from .fourier import FourierSeries
from .types import ArithmeticMode, ModeLike, Symbol, coerce_mode
from .utils.scalars import (
    as_scalar,
    convert_array,
    i_power,
    imag_part,
    is_zero,
    mode_of,
    real_part,
    to_complex,
    zeros,
)

logger = logging.getLogger(__name__)


class OperatorMatrix:
    """Linear operator on trig polynomials of bandwidth ``N``.

    Args:
        entries: Square matrix of side ``2N + 1``.
        mode: Scalar arithmetic; inferred from the dtype when omitted.
        diagonal: Marks Fourier multipliers so composition can scale rows or
            columns instead of multiplying full matrices.

    Examples:
        >>> D = derivative_operator(2)
        >>> D.entry(1, 1)
        1j
        >>> symmetry_defect(D) > 0
        True
    """

    __slots__ = ("_entries", "_max_freq", "_mode", "_diagonal")

    def __init__(
        self,
        entries: np.ndarray,
        *,
        mode: ModeLike | None = None,
        diagonal: bool = False,
    ) -> None:
        matrix = np.asarray(entries)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2 != 1:
            raise DimensionMismatchError(f"operator matrix must be square of odd side, got {matrix.shape}")
        resolved = mode_of(matrix) if mode is None else coerce_mode(mode)
        matrix = convert_array(matrix, resolved)
        matrix.flags.writeable = False
        self._entries = matrix
        self._max_freq = (matrix.shape[0] - 1) // 2
        self._mode = resolved
        self._diagonal = diagonal

    @property
    def max_freq(self) -> int:
        return self._max_freq

    @property
    def size(self) -> int:
        return 2 * self._max_freq + 1

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def mode(self) -> ArithmeticMode:
        return self._mode

    @property
    def is_diagonal(self) -> bool:
        return self._diagonal

    def entry(self, row_freq: int, col_freq: int) -> Any:
        """Coefficient of ``exp(i row_freq x)`` in the image of ``exp(i col_freq x)``."""
        n = self._max_freq
        if abs(row_freq) > n or abs(col_freq) > n:
            raise BandwidthError(
                f"entry ({row_freq}, {col_freq}) lies outside the window |j| <= {n}"
            )
        return self._entries[row_freq + n, col_freq + n]

    def apply(self, f: FourierSeries) -> FourierSeries:
        """Image of ``f`` as a series of bandwidth ``N``.

        Raises:
            BandwidthError: If ``f`` has nonzero coefficients beyond ``N``.
            DimensionMismatchError: If the scalar modes differ.
        """
        if f.mode is not self._mode:
            raise DimensionMismatchError(
                f"cannot apply a {self._mode.value} operator to a {f.mode.value} series"
            )
        if f.bandwidth > self._max_freq:
            raise BandwidthError(
                f"series bandwidth {f.bandwidth} exceeds operator window {self._max_freq}"
            )
        coeffs = f.resized(self._max_freq).coeffs
        if self._diagonal:
            image = np.diagonal(self._entries) * coeffs
        elif self._mode is ArithmeticMode.FLOAT:
            image = self._entries @ coeffs
        else:
            image = _object_matmul(self._entries, coeffs.reshape(-1, 1)).reshape(-1)
        return FourierSeries(image, mode=self._mode)

    def to_mode(self, mode: ModeLike) -> "OperatorMatrix":
        resolved = coerce_mode(mode)
        if resolved is self._mode:
            return self
        return OperatorMatrix(convert_array(self._entries, resolved), mode=resolved, diagonal=self._diagonal)

    def restricted(self, max_freq: int) -> "OperatorMatrix":
        """The block with rows and columns ``|j| <= max_freq``."""
        if max_freq > self._max_freq or max_freq < 0:
            raise BandwidthError(f"window {max_freq} is not inside 0..{self._max_freq}")
        lo = self._max_freq - max_freq
        hi = self._max_freq + max_freq + 1
        return OperatorMatrix(self._entries[lo:hi, lo:hi], mode=self._mode, diagonal=self._diagonal)

    def max_abs(self) -> float:
        if self._mode is ArithmeticMode.FLOAT:
            return float(np.max(np.abs(self._entries)))
        return max((abs(to_complex(v)) for v in self._entries.ravel() if v), default=0.0)

    def allclose(self, other: "OperatorMatrix", *, rtol: float = 1e-12) -> bool:
        """Exact equality in rational mode, ``max|A - B| <= rtol (1 + max|B|)`` otherwise."""
        _check_compatible(self, other)
        if self._mode is ArithmeticMode.RATIONAL:
            return self == other
        diff = float(np.max(np.abs(self._entries - other._entries)))
        return diff <= rtol * (1.0 + other.max_abs())

    def to_csv(self, target: str | Path | IO[str]) -> None:
        """Dump entries row-major with ``"re,im"`` cells (debugging aid)."""
        rows = [
            [f"{real_part(v)},{imag_part(v)}" for v in row]
            for row in self._entries
        ]
        if isinstance(target, (str, Path)):
            with open(target, "w", newline="", encoding="utf-8") as handle:
                csv.writer(handle).writerows(rows)
        else:
            csv.writer(target).writerows(rows)

    # Arithmetic -------------------------------------------------------
    def __add__(self, other: object) -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return combine([(1, self), (1, other)])

    def __sub__(self, other: object) -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return combine([(1, self), (-1, other)])

    def __neg__(self) -> "OperatorMatrix":
        return OperatorMatrix(-self._entries, mode=self._mode, diagonal=self._diagonal)

    def __mul__(self, scalar: object) -> "OperatorMatrix":
        if isinstance(scalar, OperatorMatrix):
            return NotImplemented
        return combine([(scalar, self)])

    __rmul__ = __mul__

    def __matmul__(self, other: object) -> "OperatorMatrix":
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other._mode is not self._mode or other._max_freq != self._max_freq:
            return False
        if self._mode is ArithmeticMode.RATIONAL:
            return all(not (a - b) for a, b in zip(self._entries.ravel(), other._entries.ravel()))
        return bool(np.array_equal(self._entries, other._entries))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "diagonal" if self._diagonal else "dense"
        return f"OperatorMatrix(N={self._max_freq}, mode={self._mode.value}, {kind})"


def _check_compatible(a: OperatorMatrix, b: OperatorMatrix) -> None:
    if a.max_freq != b.max_freq:
        raise DimensionMismatchError(f"operator windows differ: N={a.max_freq} vs N={b.max_freq}")
    if a.mode is not b.mode:
        raise DimensionMismatchError(f"operator modes differ: {a.mode.value} vs {b.mode.value}")


def _object_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of object matrices, skipping zero entries."""
    rows, inner = a.shape
    cols = b.shape[1]
    out = zeros((rows, cols), ArithmeticMode.RATIONAL)
    nonzero_b = [[(l, v) for l, v in enumerate(b[r]) if v] for r in range(inner)]
    for i in range(rows):
        row = a[i]
        for r in range(inner):
            a_ir = row[r]
            if not a_ir:
                continue
            for l, b_rl in nonzero_b[r]:
                out[i, l] = out[i, l] + a_ir * b_rl
    return out


# ----------------------------------------------------------------------
# Constructors
# ----------------------------------------------------------------------
def op_from_symbol(
    symbol: Symbol,
    max_freq: int,
    *,
    inverse: bool = False,
    mode: ModeLike | None = None,
) -> OperatorMatrix:
    """Diagonal Fourier multiplier ``exp(i j x) -> symbol(j) exp(i j x)``.

    Raises:
        SingularSymbolError: If ``inverse`` and ``symbol(j) == 0`` for some ``|j| <= N``.
    """
    resolved = coerce_mode(mode)
    size = 2 * max_freq + 1
    matrix = zeros((size, size), resolved)
    for idx, j in enumerate(range(-max_freq, max_freq + 1)):
        value = as_scalar(symbol(j), resolved)
        if inverse:
            if is_zero(value):
                raise SingularSymbolError(f"symbol vanishes at frequency {j}; cannot invert")
            value = as_scalar(1, resolved) / value
        matrix[idx, idx] = value
    return OperatorMatrix(matrix, mode=resolved, diagonal=True)


def identity(max_freq: int, *, mode: ModeLike | None = None) -> OperatorMatrix:
    return op_from_symbol(lambda j: 1, max_freq, mode=mode)


def zero_operator(max_freq: int, *, mode: ModeLike | None = None) -> OperatorMatrix:
    resolved = coerce_mode(mode)
    size = 2 * max_freq + 1
    return OperatorMatrix(zeros((size, size), resolved), mode=resolved, diagonal=True)


def derivative_operator(max_freq: int, order: int = 1, *, mode: ModeLike | None = None) -> OperatorMatrix:
    """``D**order`` with symbol ``(i j)**order``."""
    resolved = coerce_mode(mode)
    size = 2 * max_freq + 1
    matrix = zeros((size, size), resolved)
    for idx, j in enumerate(range(-max_freq, max_freq + 1)):
        matrix[idx, idx] = i_power(j, order, resolved)
    return OperatorMatrix(matrix, mode=resolved, diagonal=True)


def op_mult(m: FourierSeries, max_freq: int) -> OperatorMatrix:
    """Multiplication by ``m`` truncated to ``|j| <= N``: entries ``c_{j-l}(m)``."""
    size = 2 * max_freq + 1
    matrix = zeros((size, size), m.mode)
    for s in range(-m.max_freq, m.max_freq + 1):
        c = m.coeff(s)
        if is_zero(c):
            continue
        for l in range(max(-max_freq, -max_freq - s), min(max_freq, max_freq - s) + 1):
            matrix[l + s + max_freq, l + max_freq] = c
    return OperatorMatrix(matrix, mode=m.mode, diagonal=m.bandwidth == 0)


# ----------------------------------------------------------------------
# Algebra
# ----------------------------------------------------------------------
def combine(terms: Iterable[tuple[Any, OperatorMatrix]]) -> OperatorMatrix:
    """Linear combination ``Σ scalar_i * op_i``.

    Raises:
        DimensionMismatchError: If the operators have different windows or modes.
    """
    items = list(terms)
    if not items:
        raise ValueError("combine() needs at least one term")
    first = items[0][1]
    total = zeros(first.entries.shape, first.mode)
    diagonal = True
    for scalar, op in items:
        _check_compatible(first, op)
        total = total + op.entries * as_scalar(scalar, op.mode)
        diagonal = diagonal and op.is_diagonal
    return OperatorMatrix(total, mode=first.mode, diagonal=diagonal)


def compose(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """Matrix product: the operator ``a`` applied after ``b``."""
    _check_compatible(a, b)
    if a.is_diagonal:
        product = np.diagonal(a.entries).reshape(-1, 1) * b.entries
    elif b.is_diagonal:
        product = a.entries * np.diagonal(b.entries).reshape(1, -1)
    elif a.mode is ArithmeticMode.FLOAT:
        product = a.entries @ b.entries
    else:
        logger.debug("Exact dense composition at N=%d", a.max_freq)
        product = _object_matmul(a.entries, b.entries)
    return OperatorMatrix(product, mode=a.mode, diagonal=a.is_diagonal and b.is_diagonal)


def compose_all(ops: Sequence[OperatorMatrix]) -> OperatorMatrix:
    """``ops[0] ∘ ops[1] ∘ ...``."""
    if not ops:
        raise ValueError("compose_all() needs at least one operator")
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = compose(op, result)
    return result


def bilinear_adjoint(p: OperatorMatrix) -> OperatorMatrix:
    """Adjoint for the complex-bilinear pairing: ``P*[j, l] = P[-l, -j]``."""
    return OperatorMatrix(p.entries[::-1, ::-1].T.copy(), mode=p.mode, diagonal=p.is_diagonal)


def symmetry_defect(p: OperatorMatrix, *, window: int | None = None) -> float:
    """``max |P - P*|`` over the whole matrix, or over ``|j|, |l| <= window``."""
    diff = p - bilinear_adjoint(p)
    if window is not None:
        diff = diff.restricted(window)
    return diff.max_abs()


def is_symmetric(p: OperatorMatrix, *, tol: float = 0.0) -> bool:
    return symmetry_defect(p) <= tol
