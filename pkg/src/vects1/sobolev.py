"""Sobolev H^k machinery: symbols f_k, operators A_k, Hamiltonians and their fields."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Callable

from .fourier import FourierSeries, differentiate, integrate, l2_pair, multiply
from .lie_poisson import RegularFunctional
from .operators import OperatorMatrix, combine, compose, derivative_operator, op_from_symbol, op_mult
from .types import ModeLike


def f_k(k: int, r: int) -> int:
    """``Σ_{i=0..k} r^(2i)``, the symbol of ``A_k`` at frequency ``r``.

    Equals ``(r^(2k+2) - 1) / (r^2 - 1)`` away from ``r = ±1`` and ``k + 1`` there.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    square = r * r
    return sum(square**i for i in range(k + 1))


def f_k_quotient(k: int, r: int) -> Fraction:
    """Closed quotient form of :func:`f_k`; undefined at ``r = ±1``."""
    if r * r == 1:
        raise ZeroDivisionError("quotient form of f_k is indeterminate at r = ±1")
    return Fraction(r ** (2 * k + 2) - 1, r * r - 1)


def sobolev_symbol(k: int) -> Callable[[int], int]:
    return lambda j: f_k(k, j)


def sobolev_operator(
    k: int,
    max_freq: int,
    *,
    inverse: bool = False,
    mode: ModeLike | None = None,
) -> OperatorMatrix:
    """``A_k = 1 - D² + ... + (-1)^k D^(2k)`` or its inverse as a diagonal matrix."""
    return op_from_symbol(sobolev_symbol(k), max_freq, inverse=inverse, mode=mode)


def apply_A(m: FourierSeries, k: int) -> FourierSeries:
    return m.apply_symbol(sobolev_symbol(k))


def apply_A_inv(m: FourierSeries, k: int) -> FourierSeries:
    return m.apply_symbol(sobolev_symbol(k), inverse=True)


# ----------------------------------------------------------------------
# Inner products
# ----------------------------------------------------------------------
def sobolev_inner_forms(u: FourierSeries, v: FourierSeries, k: int) -> tuple[float, float]:
    """``(Σ_i ∫ ∂^i u ∂^i v dx, ∫ A_k(u) v dx)``; both equal ``<u, v>_k``."""
    derivative_sum = sum(
        float(l2_pair(differentiate(u, i), differentiate(v, i)).real) for i in range(k + 1)
    )
    operator_form = float(l2_pair(apply_A(u, k), v).real)
    return derivative_sum, operator_form


def sobolev_inner(u: FourierSeries, v: FourierSeries, k: int) -> float:
    """The H^k inner product ``<u, v>_k``.

    Raises:
        ArithmeticError: If the derivative-sum and operator forms disagree.
    """
    derivative_sum, operator_form = sobolev_inner_forms(u, v, k)
    if abs(derivative_sum - operator_form) > 1e-12 * max(1.0, abs(operator_form)):
        raise ArithmeticError(
            f"H^{k} inner product forms disagree: {derivative_sum!r} vs {operator_form!r}"
        )
    return operator_form


def sobolev_norm(u: FourierSeries, k: int) -> float:
    return math.sqrt(max(sobolev_inner(u, u, k), 0.0))


# ----------------------------------------------------------------------
# Hamiltonians and fields
# ----------------------------------------------------------------------
def h_k_eval(m: FourierSeries, k: int) -> tuple[float, FourierSeries]:
    """``h_k(m) = ½ ∫ m A_k⁻¹m dx`` and its gradient ``A_k⁻¹m``."""
    u = apply_A_inv(m, k)
    return 0.5 * float(l2_pair(m, u).real), u


def X_k_field(m: FourierSeries, k: int) -> FourierSeries:
    """``X_k(m) = (mD + Dm)(A_k⁻¹m) = 2 m u_x + u m_x``."""
    u = apply_A_inv(m, k)
    return multiply(m, differentiate(u)) * 2 + multiply(u, differentiate(m))


def dX_k_operator(m: FourierSeries, k: int, max_freq: int) -> OperatorMatrix:
    """Fréchet derivative ``dX_k(m) = 2u_x + uD + 2m D A_k⁻¹ + m_x A_k⁻¹`` with ``u = A_k⁻¹m``."""
    u = apply_A_inv(m, k)
    d = derivative_operator(max_freq, mode=m.mode)
    a_inv = sobolev_operator(k, max_freq, inverse=True, mode=m.mode)
    return combine(
        [
            (2, op_mult(differentiate(u), max_freq)),
            (1, compose(op_mult(u, max_freq), d)),
            (2, compose(op_mult(m, max_freq), compose(d, a_inv))),
            (1, compose(op_mult(differentiate(m), max_freq), a_inv)),
        ]
    )


def second_hamiltonians(m: FourierSeries, which: int) -> tuple[float, FourierSeries]:
    """Second Hamiltonians of the bi-Hamiltonian flows.

    ``which=0``: ``½ ∫ m³ dx`` with gradient ``(3/2) m²``.
    ``which=1``: ``½ ∫ (u³ + u u_x²) dx`` with ``u = A_1⁻¹m`` and gradient
    ``A_1⁻¹((3/2) u² - ½ u_x² - u u_xx)``.
    """
    if which == 0:
        square = multiply(m, m)
        return 0.5 * integrate(multiply(square, m)), square * Fraction(3, 2)
    if which == 1:
        u = apply_A_inv(m, 1)
        ux = differentiate(u)
        uxx = differentiate(u, 2)
        u_squared = multiply(u, u)
        ux_squared = multiply(ux, ux)
        value = 0.5 * integrate(multiply(u, u_squared) + multiply(u, ux_squared))
        inner = u_squared * Fraction(3, 2) - ux_squared * Fraction(1, 2) - multiply(u, uxx)
        return value, apply_A_inv(inner, 1)
    raise ValueError(f"second Hamiltonian is defined for which in {{0, 1}}, got {which}")


def h_k_functional(k: int) -> RegularFunctional:
    return RegularFunctional(
        value=lambda m: h_k_eval(m, k)[0],
        gradient=lambda m: apply_A_inv(m, k),
        name=f"h_{k}",
    )


def h_tilde_functional(which: int) -> RegularFunctional:
    if which not in (0, 1):
        raise ValueError(f"second Hamiltonian is defined for which in {{0, 1}}, got {which}")
    return RegularFunctional(
        value=lambda m: second_hamiltonians(m, which)[0],
        gradient=lambda m: second_hamiltonians(m, which)[1],
        name=f"h_tilde_{which}",
    )


def mean_functional() -> RegularFunctional:
    """``∫ m dx`` with gradient ``1``."""
    return RegularFunctional(
        value=integrate,
        gradient=lambda m: FourierSeries.constant(1, mode=m.mode),
        name="mean",
    )


def hamiltonian_invariants(m: FourierSeries, k: int) -> dict[str, Any]:
    """``h_k``, the second Hamiltonian (k in {0, 1}) and the mean at ``m``."""
    record: dict[str, Any] = {"h": h_k_eval(m, k)[0], "mean": integrate(m)}
    if k in (0, 1):
        record["h_tilde"] = second_hamiltonians(m, k)[0]
    return record
