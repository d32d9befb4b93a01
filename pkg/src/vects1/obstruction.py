"""Symmetry obstruction for H^k fields against modified Lie-Poisson structures.

``X_k`` is Hamiltonian for the constant structure ``K`` exactly when
``P(m) = dX_k(m) ∘ K`` is symmetric for the bilinear pairing. Testing ``P`` on
exponentials ``m = A_k e^{iax}``, ``M = e^{ibx}``, ``N = e^{icx}`` gives
closed-form pairings that are linear in ``(alpha, beta)``; their differences at
``(n, -2n, n)`` cut out the admissible parameters for each ``k``.

All pairings here are reported divided by 2π.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np
import sympy
from scipy import linalg

from .config import worker_count
from .exceptions import BandwidthError, DegenerateFitError, DimensionMismatchError, OracleMismatchError
from .fourier import FourierSeries, differentiate, mean_pair
from .lie_poisson import CocycleSpec, op_K
from .operators import OperatorMatrix, bilinear_adjoint, compose
from .sobolev import dX_k_operator, f_k
from .types import ArithmeticMode, KernelKind, ModeLike, RealLike, coerce_mode
from .utils.scalars import imag_part, real_part, to_complex, to_fraction

logger = logging.getLogger(__name__)

SVD_THRESHOLD = 1e-9
ORACLE_TOLERANCE = 1e-10


def _num(value: RealLike) -> Fraction | float:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    return float(value)


# ----------------------------------------------------------------------
# Operators
# ----------------------------------------------------------------------
def P_operator(m: FourierSeries, k: int, spec: CocycleSpec, max_freq: int) -> OperatorMatrix:
    """``P(m) = dX_k(m) ∘ K``.

    Raises:
        BandwidthError: If ``m`` or ``m0`` does not fit in the window.
        DimensionMismatchError: If ``m`` and ``m0`` use different scalar modes.
    """
    if m.bandwidth > max_freq or spec.m0.bandwidth > max_freq:
        raise BandwidthError(
            f"window {max_freq} cannot hold m (bandwidth {m.bandwidth}) and m0 (bandwidth {spec.m0.bandwidth})"
        )
    if m.mode is not spec.mode:
        raise DimensionMismatchError(f"m is {m.mode.value} but m0 is {spec.mode.value}")
    return compose(dX_k_operator(m, k, max_freq), op_K(spec, max_freq))


# ----------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------
def pairing_closed_form(
    k: int,
    alpha: RealLike,
    beta: RealLike,
    a: int,
    b: int,
    c: int,
) -> tuple[Fraction | float, Fraction | float]:
    """``(<P(m)M, N>, <M, P(m)N>) / 2π`` for constant ``m0 = alpha / 2``.

    Exact Fractions when ``alpha`` and ``beta`` are rational. Both values are
    zero unless ``a + b + c == 0``.
    """
    alpha_, beta_ = _num(alpha), _num(beta)
    if a + b + c != 0:
        zero = alpha_ * 0 + beta_ * 0
        return zero, zero

    def half(p: int) -> Fraction | float:
        ratio = Fraction(f_k(k, a), f_k(k, p))
        first = (2 * a * p**3 + p**4) * beta_ - (2 * a * p + p**2) * alpha_
        second = (a * p**3 + 2 * p**4) * beta_ - (a * p + 2 * p**2) * alpha_
        return first + second * ratio

    return half(b), half(c)


def defect_n(k: int, alpha: RealLike, beta: RealLike, n: int) -> Fraction | float:
    """``<M, P N> - <P M, N>`` at ``(a, b, c) = (n, -2n, n)``.

    Equals ``(6n⁴β - 6n²α) - (24n⁴β - 6n²α) f_k(n) / f_k(2n)``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    lhs, rhs = pairing_closed_form(k, alpha, beta, n, -2 * n, n)
    return rhs - lhs


def defect_row(k: int, n: int) -> tuple[Fraction, Fraction]:
    """Coefficients of ``(alpha, beta)`` in :func:`defect_n`."""
    ratio = Fraction(f_k(k, n), f_k(k, 2 * n))
    return 6 * n**2 * (ratio - 1), 6 * n**4 * (1 - 4 * ratio)


def leading_ratio(k: int, n: int) -> float:
    """``defect_n(k, 0, 1, n) / n⁴``."""
    return float(defect_n(k, 0, 1, n) / Fraction(n**4))


def asymptotic_limit(k: int) -> float:
    """Limit of :func:`leading_ratio` as ``n`` grows: ``6 (1 - 4 · 2^(-2k))``."""
    return 6.0 * (1.0 - 4.0 * 2.0 ** (-2 * k))


# ----------------------------------------------------------------------
# Classification
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Witness:
    n: int
    alpha: Fraction | float
    beta: Fraction | float
    defect: Fraction | float

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "alpha": _jsonable(self.alpha), "beta": _jsonable(self.beta), "defect": _jsonable(self.defect)}


@dataclass(frozen=True)
class ClassificationResult:
    """Kernel of ``(alpha, beta) -> (defect_n)_{n=1..n_max}`` for one ``k``."""

    k: int
    n_max: int
    kind: KernelKind
    equation: str
    basis: tuple[tuple[Fraction | float, Fraction | float], ...] = ()
    witnesses: tuple[Witness, ...] = field(default_factory=tuple)

    @property
    def is_bi_hamiltonian(self) -> bool:
        return self.kind is not KernelKind.POINT

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "n_max": self.n_max,
            "kernel": {
                "type": self.kind.value,
                "equation": self.equation,
                "basis": [[_jsonable(a), _jsonable(b)] for a, b in self.basis],
            },
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _jsonable(value: Fraction | float) -> str | float:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else float(value.numerator)
    return float(value)


def _format_coefficient(value: Fraction | float) -> str:
    if isinstance(value, float):
        nearest = round(value)
        if abs(value - nearest) < 1e-9:
            return str(int(nearest))
        return f"{value:.12g}"
    return str(value)


def format_equation(p: Fraction | float, q: Fraction | float) -> str:
    """Render ``p alpha + q beta = 0`` scaled so the leading coefficient is 1."""
    lead = p if p != 0 else q
    p, q = p / lead, q / lead
    terms: list[str] = []
    for coefficient, name in ((p, "alpha"), (q, "beta")):
        if coefficient == 0:
            continue
        text = _format_coefficient(abs(coefficient))
        body = name if text == "1" else f"{text}*{name}"
        if not terms:
            terms.append(body if coefficient > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if coefficient > 0 else f"- {body}")
    return " ".join(terms) + " = 0"


def _kernel_exact(rows: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    matrix = sympy.Matrix(
        [[sympy.Rational(a.numerator, a.denominator), sympy.Rational(b.numerator, b.denominator)] for a, b in rows]
    )
    return [(to_fraction(v[0]), to_fraction(v[1])) for v in matrix.nullspace()]


def _kernel_float(rows: list[tuple[float, float]]) -> list[tuple[float, float]]:
    matrix = np.asarray(rows, dtype=float)
    norms = np.linalg.norm(matrix, axis=1)
    matrix = matrix[norms > 0] / norms[norms > 0, None]
    if matrix.size == 0:
        return [(1.0, 0.0), (0.0, 1.0)]
    _, singular, vh = linalg.svd(matrix)
    rank = int(np.sum(singular > SVD_THRESHOLD))
    cleaned = np.where(np.abs(vh[rank:]) < SVD_THRESHOLD, 0.0, vh[rank:])
    return [(float(v[0]), float(v[1])) for v in cleaned]


def classify_k(
    k: int,
    n_max: int,
    *,
    mode: ModeLike = ArithmeticMode.RATIONAL,
    probes: Sequence[tuple[RealLike, RealLike]] = ((1, 0), (0, 1), (-1, 1)),
) -> ClassificationResult:
    """Admissible ``(alpha, beta)`` for ``X_k`` from the defects at ``n = 1..n_max``.

    Rational mode computes the kernel exactly with sympy; float mode uses an
    SVD of the row-normalised system with threshold ``1e-9``.

    Examples:
        >>> classify_k(1, 6).equation
        'alpha + beta = 0'
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    resolved = coerce_mode(mode)
    exact_rows = [defect_row(k, n) for n in range(1, n_max + 1)]
    if resolved is ArithmeticMode.RATIONAL:
        basis: list[tuple[Any, Any]] = _kernel_exact(exact_rows)
    else:
        basis = _kernel_float([(float(a), float(b)) for a, b in exact_rows])

    if len(basis) >= 2:
        kind, equation = KernelKind.PLANE, "any alpha, beta"
    elif len(basis) == 1:
        va, vb = basis[0]
        kind, equation = KernelKind.LINE, format_equation(vb, -va)
    else:
        kind, equation = KernelKind.POINT, "alpha = 0, beta = 0"

    witnesses = tuple(
        Witness(n, _num(alpha), _num(beta), defect_n(k, alpha, beta, n))
        for n in range(1, n_max + 1)
        for alpha, beta in probes
    )
    logger.info("k=%d: kernel %s (%s)", k, kind.value, equation)
    return ClassificationResult(k, n_max, kind, equation, tuple(basis), witnesses)


def classify_range(ks: Iterable[int], n_max: int, *, mode: ModeLike = ArithmeticMode.RATIONAL) -> list[ClassificationResult]:
    return [classify_k(k, n_max, mode=mode) for k in ks]


# ----------------------------------------------------------------------
# Matrix oracle
# ----------------------------------------------------------------------
def _exact_or_complex(value: Any, mode: ArithmeticMode) -> Fraction | complex:
    if mode is ArithmeticMode.RATIONAL and not imag_part(value):
        return real_part(value)
    return to_complex(value)


def oracle_window(a: int, b: int, c: int, spec: CocycleSpec) -> int:
    """Smallest window for which :func:`crosscheck_matrix` is exact."""
    return max(abs(a), abs(b), abs(c)) + spec.m0.bandwidth


def crosscheck_matrix(
    k: int,
    spec: CocycleSpec,
    a: int,
    b: int,
    c: int,
    max_freq: int | None = None,
) -> tuple[Fraction | complex, Fraction | complex]:
    """Both pairings computed from the assembled ``P(m)`` with ``m = A_k e^{iax}``.

    Returns ``(<P M, N>, <M, P N>) / 2π``; exact Fractions in rational mode.

    Raises:
        BandwidthError: If ``max_freq`` is below :func:`oracle_window`.
    """
    needed = oracle_window(a, b, c, spec)
    window = needed + 2 if max_freq is None else max_freq
    if window < needed:
        raise BandwidthError(f"window {window} is below the {needed} required for ({a}, {b}, {c})")
    mode = spec.mode
    m = FourierSeries.exponential(a, f_k(k, a), mode=mode)
    big_m = FourierSeries.exponential(b, 1, mode=mode)
    big_n = FourierSeries.exponential(c, 1, mode=mode)
    p = P_operator(m, k, spec, window)
    lhs = mean_pair(p.apply(big_m), big_n)
    rhs = mean_pair(big_m, p.apply(big_n))
    return _exact_or_complex(lhs, mode), _exact_or_complex(rhs, mode)


def discrepancy(closed: tuple[Any, Any], oracle: tuple[Any, Any]) -> float:
    """Relative gap ``max|closed - oracle| / max(1, |closed|)``."""
    gaps = [abs(complex(x) - complex(y)) for x, y in zip(closed, oracle)]
    scale = max([1.0] + [abs(complex(x)) for x in closed])
    return max(gaps) / scale


@dataclass(frozen=True)
class ScanRow:
    k: int
    n: int
    alpha: Fraction | float
    beta: Fraction | float
    lhs: Fraction | float
    rhs: Fraction | float
    defect: Fraction | float
    discrepancy: float

    def as_csv(self) -> list[Any]:
        return [self.k, self.n, self.alpha, self.beta, self.lhs, self.rhs, self.defect]


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]

    @property
    def max_discrepancy(self) -> float:
        return max((row.discrepancy for row in self.rows), default=0.0)

    def check(self, tol: float = ORACLE_TOLERANCE) -> None:
        """Raise :class:`OracleMismatchError` when any cell exceeds ``tol``."""
        if self.max_discrepancy > tol:
            worst = max(self.rows, key=lambda row: row.discrepancy)
            raise OracleMismatchError(
                f"closed form and matrix oracle disagree by {worst.discrepancy:.3e} at "
                f"k={worst.k}, n={worst.n}, alpha={worst.alpha}, beta={worst.beta}"
            )


SCAN_HEADER = ("k", "n", "alpha", "beta", "lhs", "rhs", "defect")


def _scan_cell(k: int, n: int, alpha: RealLike, beta: RealLike, mode: ArithmeticMode) -> ScanRow:
    lhs, rhs = pairing_closed_form(k, alpha, beta, n, -2 * n, n)
    spec = CocycleSpec.from_alpha_beta(alpha, beta, mode=mode)
    oracle = crosscheck_matrix(k, spec, n, -2 * n, n)
    gap = discrepancy((lhs, rhs), oracle)
    logger.debug("scan k=%d n=%d alpha=%s beta=%s gap=%.2e", k, n, alpha, beta, gap)
    return ScanRow(k, n, _num(alpha), _num(beta), lhs, rhs, rhs - lhs, gap)


def scan(
    ks: Sequence[int],
    ns: Sequence[int],
    alpha_betas: Sequence[tuple[RealLike, RealLike]],
    *,
    mode: ModeLike | None = None,
    workers: int | None = None,
) -> ScanResult:
    """Compare closed forms and the matrix oracle over a ``(k, n, alpha, beta)`` grid.

    Cells are independent and evaluated on a thread pool; rows keep grid order.
    """
    resolved = coerce_mode(mode)
    cells = [(k, n, alpha, beta) for k in ks for n in ns for alpha, beta in alpha_betas]
    if not cells:
        raise ValueError("scan grid is empty")
    with ThreadPoolExecutor(max_workers=workers or worker_count()) as pool:
        rows = list(pool.map(lambda cell: _scan_cell(*cell, resolved), cells))
    result = ScanResult(tuple(rows))
    logger.info("Scanned %d cells, max discrepancy %.3e", len(rows), result.max_discrepancy)
    return result


# ----------------------------------------------------------------------
# Nonconstant m0
# ----------------------------------------------------------------------
def expected_leading_term(k: int, m0: FourierSeries, x: float) -> tuple[int, complex]:
    """Predicted ``(degree, coefficient)`` of the polynomial fitted by :func:`m0_leading_term`.

    ``(4k + 1, 2i m0'(x))`` for ``k >= 1``. At ``k = 0`` the commutator with
    ``D`` contributes at the same degree, giving ``(1, 6i m0'(x))``.
    """
    slope = complex(differentiate(m0.as_float()).evaluate(x))
    factor = 6j if k == 0 else 2j
    return 4 * k + 1, factor * slope


def _interpolate_exact(points: Sequence[int], values: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients (lowest degree first) of the interpolating polynomial."""
    vandermonde = sympy.Matrix([[sympy.Integer(r) ** d for d in range(len(points))] for r in points])
    rhs = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in values])
    return [to_fraction(c) for c in vandermonde.LUsolve(rhs)]


def m0_leading_term(
    k: int,
    m0: FourierSeries,
    x: float,
    r_list: Sequence[int],
) -> tuple[int, complex]:
    """Degree and top coefficient in ``r`` of ``[A_k (P(1) - P(1)*) A_k e^{irx}] e^{-irx}`` at ``x``.

    ``P(1)`` is built with ``K = m0 D + D m0`` (``beta = 0``) in exact
    arithmetic. Each Fourier component of the expression is a polynomial in
    ``r`` and is interpolated exactly over ``r_list``; the components are then
    summed at ``x``. A constant ``m0`` yields the zero polynomial, reported as
    ``(-1, 0)``.

    Raises:
        DegenerateFitError: If ``r_list`` has fewer than ``4k + 3`` distinct
            values or the fitted degree uses every available degree of freedom.
    """
    points = sorted(set(int(r) for r in r_list))
    needed = 4 * k + 3
    if len(points) < needed:
        raise DegenerateFitError(f"need {needed} distinct r values for k={k}, got {len(points)}")

    exact_m0 = m0.as_exact()
    spread = exact_m0.bandwidth
    window = max(abs(r) for r in points) + spread + 1
    spec = CocycleSpec.coboundary(exact_m0)
    one = FourierSeries.constant(1, mode=ArithmeticMode.RATIONAL)
    p_one = P_operator(one, k, spec, window)
    q = p_one - bilinear_adjoint(p_one)

    combined = np.zeros(len(points), dtype=complex)
    for s in range(-spread, spread + 1):
        re_values: list[Fraction] = []
        im_values: list[Fraction] = []
        for r in points:
            weight = f_k(k, r) * f_k(k, r + s)
            value = q.entry(r + s, r) * weight
            re_values.append(real_part(value))
            im_values.append(imag_part(value))
        re_coeffs = _interpolate_exact(points, re_values)
        im_coeffs = _interpolate_exact(points, im_values)
        phase = np.exp(1j * s * x)
        combined += phase * np.array(
            [complex(float(re), float(im)) for re, im in zip(re_coeffs, im_coeffs)]
        )

    scale = float(np.max(np.abs(combined))) if combined.size else 0.0
    nonzero = np.nonzero(np.abs(combined) > 1e-12 * max(scale, 1.0))[0]
    if nonzero.size == 0:
        return -1, 0j
    degree = int(nonzero[-1])
    if degree >= len(points) - 1:
        raise DegenerateFitError(
            f"fitted degree {degree} uses all {len(points)} points; add more r values"
        )
    return degree, complex(combined[degree])
