"""Truncated Fourier series on the circle of period 2π.

A :class:`FourierSeries` stores the coefficients ``c_j`` for ``j = -N..N`` of
``f(x) = Σ c_j exp(i j x)``. The same type represents vector fields ``u, v``
and densities ``m, M, N, m0`` of the regular dual; both are trig polynomials.

Coefficients live either in a complex128 array or, in rational mode, in an
object array of exact Gaussian rationals so that algebraic identities can be
checked with zero tolerance.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import numpy as np
from sympy.polys.domains.gaussiandomains import GaussianElement

from .exceptions import DimensionMismatchError, ResolutionError, SingularSymbolError
from .types import ArithmeticMode, ModeLike, Symbol, coerce_mode
from .utils.scalars import (
    as_scalar,
    conj,
    convert_array,
    exact_sum,
    gaussian,
    i_power,
    imag_part,
    is_zero,
    mode_of,
    real_part,
    to_complex,
    to_fraction,
    zero,
    zeros,
)

TWO_PI = 2.0 * math.pi


class FourierSeries:
    """Immutable trig polynomial with coefficients indexed by signed frequency.

    Args:
        coeffs: ``2N + 1`` coefficients ordered ``j = -N..N``.
        mode: Scalar arithmetic. Inferred from the array dtype when omitted
            (object arrays are rational, everything else float).
        real: Whether ``c_{-j} == conj(c_j)``. Inferred when omitted. Float
            series flagged real are symmetrised so the invariant holds exactly.

    Examples:
        >>> f = FourierSeries.cos(1)
        >>> f.coeff(1), f.coeff(-1)
        ((0.5+0j), (0.5+0j))
        >>> multiply(f, f).coeff(0)
        (0.5+0j)
    """

    __slots__ = ("_coeffs", "_max_freq", "_mode", "_real")

    def __init__(
        self,
        coeffs: Sequence[Any] | np.ndarray,
        *,
        mode: ModeLike | None = None,
        real: bool | None = None,
    ) -> None:
        raw = coeffs if isinstance(coeffs, np.ndarray) else np.asarray(list(coeffs), dtype=object)
        if raw.ndim != 1 or raw.size % 2 != 1:
            raise ValueError(f"expected an odd number of coefficients, got shape {raw.shape}")

        if mode is None:
            if isinstance(coeffs, np.ndarray):
                resolved = mode_of(raw)
            else:
                resolved = (
                    ArithmeticMode.RATIONAL
                    if any(isinstance(c, (Fraction, GaussianElement)) for c in raw)
                    else ArithmeticMode.FLOAT
                )
        else:
            resolved = coerce_mode(mode)

        values = convert_array(raw, resolved)
        if real is None:
            real = _is_conjugate_symmetric(values, resolved)
        elif real:
            if resolved is ArithmeticMode.FLOAT:
                values = 0.5 * (values + np.conj(values[::-1]))
            elif not _is_conjugate_symmetric(values, resolved):
                raise ValueError("coefficients are not conjugate symmetric; cannot flag series as real")

        values.flags.writeable = False
        self._coeffs = values
        self._max_freq = (values.size - 1) // 2
        self._mode = resolved
        self._real = bool(real)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, max_freq: int = 0, *, mode: ModeLike | None = None) -> "FourierSeries":
        resolved = coerce_mode(mode)
        return cls(zeros(2 * max_freq + 1, resolved), mode=resolved, real=True)

    @classmethod
    def constant(cls, value: Any, *, mode: ModeLike | None = None) -> "FourierSeries":
        resolved = coerce_mode(mode)
        return cls.from_dict({0: value}, mode=resolved)

    @classmethod
    def exponential(
        cls,
        freq: int,
        coefficient: Any = 1,
        *,
        max_freq: int | None = None,
        mode: ModeLike | None = None,
    ) -> "FourierSeries":
        """``coefficient * exp(i freq x)``."""
        return cls.from_dict({freq: coefficient}, max_freq=max_freq, mode=mode)

    @classmethod
    def cos(cls, freq: int = 1, amplitude: Any = 1, *, mode: ModeLike | None = None) -> "FourierSeries":
        """``amplitude * cos(freq x)``."""
        resolved = coerce_mode(mode)
        amp = as_scalar(amplitude, resolved)
        if freq == 0:
            return cls.from_dict({0: amp}, mode=resolved)
        half = amp / 2
        return cls.from_dict({freq: half, -freq: half}, mode=resolved)

    @classmethod
    def sin(cls, freq: int = 1, amplitude: Any = 1, *, mode: ModeLike | None = None) -> "FourierSeries":
        """``amplitude * sin(freq x)``."""
        resolved = coerce_mode(mode)
        if freq == 0:
            return cls.zero(0, mode=resolved)
        amp = as_scalar(amplitude, resolved)
        minus_half_i = as_scalar(-0.5j, resolved) if resolved is ArithmeticMode.FLOAT else gaussian(
            (0, Fraction(-1, 2))
        )
        top = amp * minus_half_i
        sign = 1 if freq > 0 else -1
        return cls.from_dict({abs(freq): sign * top, -abs(freq): -sign * top}, mode=resolved)

    @classmethod
    def from_dict(
        cls,
        coefficients: Mapping[int, Any],
        *,
        max_freq: int | None = None,
        mode: ModeLike | None = None,
        real: bool | None = None,
    ) -> "FourierSeries":
        """Build a series from a sparse ``{frequency: coefficient}`` mapping."""
        resolved = coerce_mode(mode)
        top = max((abs(int(j)) for j in coefficients), default=0)
        size = top if max_freq is None else max_freq
        if size < top:
            raise ValueError(f"max_freq={size} cannot hold frequency {top}")
        values = zeros(2 * size + 1, resolved)
        for j, c in coefficients.items():
            values[int(j) + size] = values[int(j) + size] + as_scalar(c, resolved)
        return cls(values, mode=resolved, real=real)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------
    @property
    def max_freq(self) -> int:
        return self._max_freq

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array ordered ``j = -N..N``."""
        return self._coeffs

    @property
    def mode(self) -> ArithmeticMode:
        return self._mode

    @property
    def is_exact(self) -> bool:
        return self._mode is ArithmeticMode.RATIONAL

    @property
    def real_flag(self) -> bool:
        return self._real

    @property
    def frequencies(self) -> range:
        return range(-self._max_freq, self._max_freq + 1)

    @property
    def bandwidth(self) -> int:
        """Largest ``|j|`` with a nonzero coefficient (0 for constants and zero)."""
        for j in range(self._max_freq, 0, -1):
            if not (is_zero(self.coeff(j)) and is_zero(self.coeff(-j))):
                return j
        return 0

    def coeff(self, freq: int) -> Any:
        """Coefficient of ``exp(i freq x)``; zero outside the stored window."""
        if abs(freq) > self._max_freq:
            return zero(self._mode)
        return self._coeffs[freq + self._max_freq]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(is_zero(c, tol) for c in self._coeffs)

    # ------------------------------------------------------------------
    # Conversions
    # ------------------------------------------------------------------
    def resized(self, max_freq: int) -> "FourierSeries":
        """Zero-pad or truncate to bandwidth ``max_freq``."""
        if max_freq < 0:
            raise ValueError("max_freq must be nonnegative")
        if max_freq == self._max_freq:
            return self
        values = zeros(2 * max_freq + 1, self._mode)
        keep = min(max_freq, self._max_freq)
        values[max_freq - keep : max_freq + keep + 1] = self._coeffs[
            self._max_freq - keep : self._max_freq + keep + 1
        ]
        return FourierSeries(values, mode=self._mode, real=self._real)

    def to_mode(self, mode: ModeLike) -> "FourierSeries":
        resolved = coerce_mode(mode)
        if resolved is self._mode:
            return self
        return FourierSeries(convert_array(self._coeffs, resolved), mode=resolved, real=self._real)

    def as_float(self) -> "FourierSeries":
        return self.to_mode(ArithmeticMode.FLOAT)

    def as_exact(self) -> "FourierSeries":
        return self.to_mode(ArithmeticMode.RATIONAL)

    def apply_symbol(self, symbol: Symbol, *, inverse: bool = False) -> "FourierSeries":
        """Apply the Fourier multiplier ``c_j -> symbol(j) c_j`` (or its inverse)."""
        values = zeros(self._coeffs.size, self._mode)
        for idx, j in enumerate(self.frequencies):
            s = as_scalar(symbol(j), self._mode)
            if inverse:
                if is_zero(s):
                    raise SingularSymbolError(f"symbol vanishes at frequency {j}; cannot invert")
                values[idx] = self._coeffs[idx] / s
            else:
                values[idx] = self._coeffs[idx] * s
        real = self._real and all(is_zero(imag_part(as_scalar(symbol(j), self._mode))) for j in self.frequencies)
        return FourierSeries(values, mode=self._mode, real=real if real else None)

    def evaluate(self, x: float | np.ndarray) -> Any:
        """Point values ``Σ c_j exp(i j x)``; real for real-flagged series."""
        points = np.atleast_1d(np.asarray(x, dtype=float))
        coeffs = convert_array(self._coeffs, ArithmeticMode.FLOAT)
        freqs = np.arange(-self._max_freq, self._max_freq + 1)
        values = np.exp(1j * np.outer(points, freqs)) @ coeffs
        if self._real:
            values = values.real
        if np.ndim(x) == 0:
            return values[0]
        return values

    def to_json(self) -> dict[str, Any]:
        """``{"N": int, "coeffs": [[re, im], ...]}`` ordered ``j = -N..N``.

        Rational series keep exact values as ``"p/q"`` strings.
        """
        if self.is_exact:
            pairs = [[str(real_part(c)), str(imag_part(c))] for c in self._coeffs]
        else:
            pairs = [[float(c.real), float(c.imag)] for c in self._coeffs]
        return {"N": self._max_freq, "mode": self._mode.value, "coeffs": pairs}

    @classmethod
    def from_json(cls, payload: Mapping[str, Any]) -> "FourierSeries":
        mode = coerce_mode(payload.get("mode", "float"))
        pairs = payload["coeffs"]
        if len(pairs) != 2 * int(payload["N"]) + 1:
            raise ValueError("coefficient list does not match N")
        if mode is ArithmeticMode.RATIONAL:
            values = [gaussian((to_fraction(re), to_fraction(im))) for re, im in pairs]
        else:
            values = [complex(float(re), float(im)) for re, im in pairs]
        return cls(np.asarray(values, dtype=object if mode is ArithmeticMode.RATIONAL else complex), mode=mode)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def _aligned(self, other: "FourierSeries") -> tuple[np.ndarray, np.ndarray, int]:
        if other._mode is not self._mode:
            raise DimensionMismatchError(
                f"cannot combine {self._mode.value} and {other._mode.value} series"
            )
        size = max(self._max_freq, other._max_freq)
        return self.resized(size)._coeffs, other.resized(size)._coeffs, size

    def __add__(self, other: object) -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return FourierSeries(a + b, mode=self._mode, real=(self._real and other._real) or None)

    def __sub__(self, other: object) -> "FourierSeries":
        if not isinstance(other, FourierSeries):
            return NotImplemented
        a, b, _ = self._aligned(other)
        return FourierSeries(a - b, mode=self._mode, real=(self._real and other._real) or None)

    def __neg__(self) -> "FourierSeries":
        return FourierSeries(-self._coeffs, mode=self._mode, real=self._real)

    def __mul__(self, scalar: object) -> "FourierSeries":
        if isinstance(scalar, FourierSeries):
            return NotImplemented
        s = as_scalar(scalar, self._mode)
        real = self._real and is_zero(imag_part(s))
        return FourierSeries(self._coeffs * s, mode=self._mode, real=real or None)

    __rmul__ = __mul__

    def __truediv__(self, scalar: object) -> "FourierSeries":
        s = as_scalar(scalar, self._mode)
        if is_zero(s):
            raise ZeroDivisionError("division of a series by zero")
        real = self._real and is_zero(imag_part(s))
        return FourierSeries(self._coeffs / s, mode=self._mode, real=real or None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FourierSeries) or other._mode is not self._mode:
            return NotImplemented
        a, b, _ = self._aligned(other)
        if self.is_exact:
            return all(not (x - y) for x, y in zip(a, b))
        return bool(np.array_equal(a, b))

    __hash__ = None  # type: ignore[assignment]

    def max_abs_diff(self, other: "FourierSeries") -> float:
        """Largest coefficient difference, compared in float arithmetic."""
        a = self.as_float()
        b = other.as_float()
        x, y, _ = a._aligned(b)
        if x.size == 0:
            return 0.0
        return float(np.max(np.abs(x - y)))

    def allclose(self, other: "FourierSeries", *, atol: float = 1e-12, rtol: float = 0.0) -> bool:
        scale = max(float(np.max(np.abs(other.as_float()._coeffs))), 0.0)
        return self.max_abs_diff(other) <= atol + rtol * scale

    def __repr__(self) -> str:
        terms = [
            f"{j}: {to_complex(c) if not self.is_exact else c}"
            for j, c in zip(self.frequencies, self._coeffs)
            if not is_zero(c)
        ]
        body = ", ".join(terms) if terms else "0"
        return f"FourierSeries(N={self._max_freq}, mode={self._mode.value}, {{{body}}})"


def _is_conjugate_symmetric(values: np.ndarray, mode: ArithmeticMode) -> bool:
    if mode is ArithmeticMode.RATIONAL:
        return all(not (a - conj(b)) for a, b in zip(values, values[::-1]))
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    return bool(np.all(np.abs(values - np.conj(values[::-1])) <= 1e-14 * scale))


def _same_mode(f: FourierSeries, g: FourierSeries) -> ArithmeticMode:
    if f.mode is not g.mode:
        raise DimensionMismatchError(f"cannot combine {f.mode.value} and {g.mode.value} series")
    return f.mode


# ----------------------------------------------------------------------
# Algebra and calculus
# ----------------------------------------------------------------------
def multiply(f: FourierSeries, g: FourierSeries, out_max_freq: int | None = None) -> FourierSeries:
    """Pointwise product (coefficient convolution) truncated to ``out_max_freq``.

    The default bandwidth ``N_f + N_g`` keeps the product exact.
    """
    mode = _same_mode(f, g)
    full = f.max_freq + g.max_freq
    out = full if out_max_freq is None else out_max_freq
    if out < 0:
        raise ValueError("out_max_freq must be nonnegative")

    if mode is ArithmeticMode.FLOAT:
        product = np.convolve(f.coeffs, g.coeffs)
    else:
        product = zeros(2 * full + 1, mode)
        for i, a in enumerate(f.coeffs):
            if not a:
                continue
            for j, b in enumerate(g.coeffs):
                if b:
                    product[i + j] = product[i + j] + a * b

    result = FourierSeries(product, mode=mode, real=(f.real_flag and g.real_flag) or None)
    return result.resized(out)


def differentiate(f: FourierSeries, order: int = 1) -> FourierSeries:
    """``c_j -> (i j)**order c_j``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        return f
    values = zeros(f.coeffs.size, f.mode)
    for idx, j in enumerate(f.frequencies):
        values[idx] = f.coeffs[idx] * i_power(j, order, f.mode)
    return FourierSeries(values, mode=f.mode, real=f.real_flag or None)


def mean_pair(f: FourierSeries, g: FourierSeries) -> Any:
    """``(1/2π) ∫ f g dx = Σ_j c_j(f) c_{-j}(g)`` in the series' own arithmetic.

    The pairing is complex bilinear: no conjugation is applied.
    """
    mode = _same_mode(f, g)
    n = min(f.max_freq, g.max_freq)
    a = f.coeffs[f.max_freq - n : f.max_freq + n + 1]
    b = g.coeffs[g.max_freq - n : g.max_freq + n + 1][::-1]
    if mode is ArithmeticMode.FLOAT:
        return complex(np.dot(a, b))
    return exact_sum((x * y for x, y in zip(a, b)), mode)


def l2_pair(f: FourierSeries, g: FourierSeries) -> complex:
    """``∫ f g dx`` over one period: ``2π Σ_j c_j(f) c_{-j}(g)``."""
    return TWO_PI * to_complex(mean_pair(f, g))


def integrate(f: FourierSeries) -> float:
    """``∫ f dx`` over one period (real part)."""
    return TWO_PI * float(real_part(f.coeff(0)))


def lie_bracket_product(u: FourierSeries, v: FourierSeries) -> FourierSeries:
    """``u v_x - u_x v`` at full bandwidth."""
    return multiply(u, differentiate(v)) - multiply(differentiate(u), v)


# ----------------------------------------------------------------------
# Grid transforms
# ----------------------------------------------------------------------
def grid_points(num_points: int) -> np.ndarray:
    """Sample locations ``x_p = 2π p / num_points``."""
    return TWO_PI * np.arange(num_points) / num_points


def grid_transform(f: FourierSeries, num_points: int, *, invertible: bool = True) -> np.ndarray:
    """Sample ``f`` on the uniform grid of ``num_points`` points.

    Raises:
        ResolutionError: If ``invertible`` and ``num_points < 2N + 1``.
    """
    if num_points < 1:
        raise ValueError("num_points must be positive")
    if invertible and num_points < 2 * f.max_freq + 1:
        raise ResolutionError(
            f"{num_points} points cannot resolve bandwidth {f.max_freq}; need at least {2 * f.max_freq + 1}"
        )
    coeffs = convert_array(f.coeffs, ArithmeticMode.FLOAT)
    wrapped = np.zeros(num_points, dtype=complex)
    np.add.at(wrapped, np.arange(-f.max_freq, f.max_freq + 1) % num_points, coeffs)
    samples = num_points * np.fft.ifft(wrapped)
    if f.real_flag:
        return samples.real
    return samples


def inverse_grid_transform(
    samples: Sequence[complex] | np.ndarray,
    max_freq: int,
    *,
    real: bool | None = None,
) -> FourierSeries:
    """Recover the coefficients ``|j| <= max_freq`` from uniform samples.

    Raises:
        ResolutionError: If there are fewer than ``2 max_freq + 1`` samples.
    """
    values = np.asarray(samples)
    num_points = values.size
    if num_points < 2 * max_freq + 1:
        raise ResolutionError(
            f"{num_points} samples cannot recover bandwidth {max_freq}; need at least {2 * max_freq + 1}"
        )
    spectrum = np.fft.fft(values) / num_points
    coeffs = spectrum[np.arange(-max_freq, max_freq + 1) % num_points]
    if real is None:
        real = not np.iscomplexobj(values)
    return FourierSeries(np.asarray(coeffs, dtype=complex), mode=ArithmeticMode.FLOAT, real=real or None)


# ----------------------------------------------------------------------
# Test data
# ----------------------------------------------------------------------
def random_trig_polynomial(
    max_freq: int,
    *,
    seed: int,
    mode: ModeLike | None = None,
    real: bool = True,
    scale: float = 1.0,
    max_denominator: int = 8,
) -> FourierSeries:
    """Deterministic random trig polynomial of bandwidth ``max_freq``.

    Rational mode draws small integer ratios so exact arithmetic stays cheap.
    """
    resolved = coerce_mode(mode)
    rng = np.random.default_rng(seed)

    def draw() -> Any:
        if resolved is ArithmeticMode.RATIONAL:
            re = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, max_denominator + 1)))
            im = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, max_denominator + 1)))
            return gaussian((re, im))
        return complex(rng.normal(), rng.normal()) * scale

    coefficients: dict[int, Any] = {}
    if real:
        c0 = draw()
        coefficients[0] = gaussian(real_part(c0)) if resolved is ArithmeticMode.RATIONAL else complex(c0.real)
        for j in range(1, max_freq + 1):
            c = draw()
            coefficients[j] = c
            coefficients[-j] = conj(c)
    else:
        for j in range(-max_freq, max_freq + 1):
            coefficients[j] = draw()
    return FourierSeries.from_dict(coefficients, max_freq=max_freq, mode=resolved, real=real or None)


def trig_sum(terms: Iterable[tuple[str, int, Any]], *, mode: ModeLike | None = None) -> FourierSeries:
    """Sum of ``(kind, freq, amplitude)`` terms with kind in ``{"const", "cos", "sin"}``."""
    resolved = coerce_mode(mode)
    total = FourierSeries.zero(0, mode=resolved)
    for kind, freq, amplitude in terms:
        if kind == "cos":
            total = total + FourierSeries.cos(freq, amplitude, mode=resolved)
        elif kind == "sin":
            total = total + FourierSeries.sin(freq, amplitude, mode=resolved)
        elif kind == "const":
            total = total + FourierSeries.constant(amplitude, mode=resolved)
        else:
            raise ValueError(f"unknown term kind {kind!r}")
    return total
