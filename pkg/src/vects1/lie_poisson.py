"""Lie-Poisson structures on the regular dual of the vector-field algebra.

The Lie algebra of smooth vector fields on the circle carries the bracket
``[u, v] = u v_x - u_x v``. Its regular dual is modelled by densities ``m``
paired through ``<m, u> = ∫ m u dx``. This module provides the canonical
structure ``J(m) = mD + Dm``, the cocycle operators
``K = m0 D + D m0 + beta D^3`` that modify it, cocycle verification, and the
Poisson bracket and Hamiltonian vector field of a regular functional.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .exceptions import BandwidthError
from .fourier import FourierSeries, differentiate, integrate, l2_pair, lie_bracket_product, multiply
from .operators import OperatorMatrix, combine, compose, derivative_operator, op_mult
from .types import ArithmeticMode, ModeLike, RealLike, SeriesMap, SupportsStructure, ValueMap, coerce_mode
from .utils.scalars import as_scalar, i_power, magnitude, rational_or_float, real_part

logger = logging.getLogger(__name__)

DEFAULT_FD_STEP = 1e-5


@dataclass(frozen=True)
class CocycleSpec:
    """A modified-structure datum: real density ``m0`` and real ``beta``.

    Represents ``K = m0 D + D m0 + beta D^3``. For constant ``m0`` the
    conventional parameter is ``alpha = 2 m0``.
    """

    m0: FourierSeries
    beta: RealLike = 0

    def __post_init__(self) -> None:
        if not self.m0.real_flag:
            raise ValueError("m0 must be a real-valued density")

    @classmethod
    def from_alpha_beta(cls, alpha: RealLike, beta: RealLike, *, mode: ModeLike | None = None) -> "CocycleSpec":
        """Constant ``m0 = alpha / 2``."""
        half = Fraction(alpha) / 2 if isinstance(alpha, (int, Fraction)) else alpha / 2
        return cls(FourierSeries.constant(half, mode=mode), beta)

    @classmethod
    def coboundary(cls, m0: FourierSeries) -> "CocycleSpec":
        """The trivial cocycle ``m0 D + D m0`` (``beta = 0``)."""
        return cls(m0, 0)

    @property
    def mode(self) -> ArithmeticMode:
        return self.m0.mode

    @property
    def is_constant(self) -> bool:
        return self.m0.bandwidth == 0

    @property
    def alpha(self) -> Fraction | float | None:
        """``2 m0`` when ``m0`` is constant, else ``None``."""
        if not self.is_constant:
            return None
        value = 2 * rational_or_float(real_part(self.m0.coeff(0)))
        return value

    def to_json(self) -> dict[str, Any]:
        return {
            "m0": self.m0.to_json(),
            "beta": str(self.beta) if isinstance(self.beta, Fraction) else self.beta,
            "alpha": None if self.alpha is None else str(self.alpha),
        }


@dataclass(frozen=True)
class RegularFunctional:
    """A functional on the regular dual with its declared L² gradient.

    ``value`` maps a density to a real number. ``gradient`` maps it to the
    density ``δf(m)`` satisfying ``df(m) M = ∫ M δf(m) dx``.
    """

    value: ValueMap
    gradient: SeriesMap
    name: str = field(default="f")

    def __call__(self, m: FourierSeries) -> float:
        return self.value(m)

    @classmethod
    def linear(cls, u: FourierSeries, *, name: str | None = None) -> "RegularFunctional":
        """``f_u(m) = ∫ u m dx`` with constant gradient ``u``."""

        def value(m: FourierSeries) -> float:
            return float(l2_pair(u.to_mode(m.mode), m).real)

        def gradient(m: FourierSeries) -> FourierSeries:
            return u.to_mode(m.mode)

        return cls(value, gradient, name or "linear")


# ----------------------------------------------------------------------
# Bracket and structures
# ----------------------------------------------------------------------
def lie_bracket(u: FourierSeries, v: FourierSeries) -> FourierSeries:
    """``[u, v] = u v_x - u_x v`` at full bandwidth."""
    return lie_bracket_product(u, v)


def op_J(m: FourierSeries, max_freq: int) -> OperatorMatrix:
    """Canonical Lie-Poisson operator ``J(m) = mD + Dm``.

    Its action is ``J(m) v = 2 m v_x + m_x v``.
    """
    mult = op_mult(m, max_freq)
    d = derivative_operator(max_freq, mode=m.mode)
    return combine([(1, compose(mult, d)), (1, compose(d, mult))])


def op_K(spec: CocycleSpec, max_freq: int) -> OperatorMatrix:
    """Cocycle operator ``K = m0 D + D m0 + beta D^3``."""
    d3 = derivative_operator(max_freq, 3, mode=spec.mode)
    return combine([(1, op_J(spec.m0, max_freq)), (spec.beta, d3)])


def canonical_structure(max_freq: int) -> SupportsStructure:
    """``m -> J(m)`` on the window ``|j| <= max_freq``."""

    def structure_at(m: FourierSeries) -> OperatorMatrix:
        return op_J(m, max_freq)

    return structure_at


def frozen_structure(spec: CocycleSpec, max_freq: int) -> SupportsStructure:
    """The constant structure ``m -> K``."""
    k_op = op_K(spec, max_freq)

    def structure_at(m: FourierSeries) -> OperatorMatrix:
        return k_op.to_mode(m.mode)

    return structure_at


def modified_structure(spec: CocycleSpec, max_freq: int) -> SupportsStructure:
    """The modified Lie-Poisson structure ``m -> J(m) + K``."""
    k_op = op_K(spec, max_freq)

    def structure_at(m: FourierSeries) -> OperatorMatrix:
        return op_J(m, max_freq) + k_op.to_mode(m.mode)

    return structure_at


def jacobi_defect(k_op: OperatorMatrix, a: int, b: int, c: int) -> Any:
    """Cyclic cocycle sum on ``u = e^{iax}, v = e^{ibx}, w = e^{icx}``, divided by 2π.

    Returns ``<[u,v], Kw> + <[v,w], Ku> + <[w,u], Kv>`` in the operator's
    scalar type; zero for every 2-cocycle.

    Raises:
        BandwidthError: If any of ``a, b, c`` or their pairwise sums leaves the window.
    """
    n = k_op.max_freq
    if max(abs(a), abs(b), abs(c), abs(a + b), abs(b + c), abs(c + a)) > n:
        raise BandwidthError(f"triple ({a}, {b}, {c}) does not fit in window {n}")
    mode = k_op.mode
    i = i_power(1, 1, mode)

    def term(p: int, q: int, r: int) -> Any:
        # [e^{ipx}, e^{iqx}] = i(q - p) e^{i(p+q)x}; pairing picks K[-(p+q), r]
        return i * as_scalar(q - p, mode) * k_op.entry(-(p + q), r)

    return term(a, b, c) + term(b, c, a) + term(c, a, b)


@dataclass(frozen=True)
class CocycleReport:
    """Outcome of :func:`cocycle_report`."""

    spec: CocycleSpec
    max_freq: int
    max_defect: float
    triples_checked: int
    worst_triple: tuple[int, int, int] | None = None

    @property
    def passed(self) -> bool:
        return self.max_defect <= 1e-12

    def to_json(self) -> dict[str, Any]:
        return {
            "spec": self.spec.to_json(),
            "N": self.max_freq,
            "max_defect": self.max_defect,
            "triples_checked": self.triples_checked,
            "worst_triple": list(self.worst_triple) if self.worst_triple else None,
        }


def cocycle_report(spec: CocycleSpec, bound: int = 6, max_freq: int | None = None) -> CocycleReport:
    """Evaluate :func:`jacobi_defect` over every triple with ``|a|, |b|, |c| <= bound``."""
    window = 2 * bound if max_freq is None else max_freq
    k_op = op_K(spec, window)
    worst = 0.0
    worst_triple = None
    count = 0
    for a, b, c in itertools.product(range(-bound, bound + 1), repeat=3):
        defect = magnitude(jacobi_defect(k_op, a, b, c))
        count += 1
        if defect > worst:
            worst, worst_triple = defect, (a, b, c)
    logger.info("Cocycle check over %d triples: max defect %.3e", count, worst)
    return CocycleReport(spec, window, worst, count, worst_triple)


# ----------------------------------------------------------------------
# Brackets of functionals
# ----------------------------------------------------------------------
def poisson_bracket(
    f: RegularFunctional,
    g: RegularFunctional,
    m: FourierSeries,
    structure: OperatorMatrix,
) -> float:
    """``{f, g}(m) = ∫ δf(m) · structure δg(m) dx``."""
    image = structure.apply(g.gradient(m).to_mode(structure.mode))
    return float(l2_pair(f.gradient(m).to_mode(structure.mode), image).real)


def hamiltonian_field(
    f: RegularFunctional,
    structure_at: SupportsStructure | Callable[[FourierSeries], OperatorMatrix],
    m: FourierSeries,
) -> FourierSeries:
    """``X_f(m) = structure(m) δf(m)``."""
    op = structure_at(m)
    return op.apply(f.gradient(m).to_mode(op.mode))


# ----------------------------------------------------------------------
# Finite-difference audits
# ----------------------------------------------------------------------
def default_directions(*, mode: ModeLike | None = None) -> list[FourierSeries]:
    """``1, sin x, cos x, sin 2x, cos 2x``."""
    resolved = coerce_mode(mode)
    return [
        FourierSeries.constant(1, mode=resolved),
        FourierSeries.sin(1, mode=resolved),
        FourierSeries.cos(1, mode=resolved),
        FourierSeries.sin(2, mode=resolved),
        FourierSeries.cos(2, mode=resolved),
    ]


def relative_error(approx: float, exact: float) -> float:
    """``|approx - exact| / max(|exact|, 1)``."""
    return abs(approx - exact) / max(abs(exact), 1.0)


def directional_derivative(
    f: RegularFunctional,
    m: FourierSeries,
    direction: FourierSeries,
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Central difference ``(f(m + εM) - f(m - εM)) / 2ε`` in float arithmetic."""
    if step <= 0:
        raise ValueError("step must be positive")
    base = m.as_float()
    d = direction.as_float()
    return (f(base + d * step) - f(base - d * step)) / (2.0 * step)


def gradient_audit(
    f: RegularFunctional,
    m: FourierSeries,
    dirs: Sequence[FourierSeries] | None = None,
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Largest relative gap between finite differences and ``<M, δf(m)>``."""
    directions = list(dirs) if dirs is not None else default_directions()
    base = m.as_float()
    grad = f.gradient(base)
    worst = 0.0
    for direction in directions:
        fd = directional_derivative(f, base, direction, step)
        declared = float(l2_pair(direction.as_float(), grad).real)
        worst = max(worst, relative_error(fd, declared))
    logger.debug("Gradient audit of %s: worst relative error %.3e", f.name, worst)
    return worst


def gradient_symmetry_check(
    f: RegularFunctional,
    m: FourierSeries,
    dirs: Sequence[FourierSeries] | None = None,
    step: float = DEFAULT_FD_STEP,
) -> float:
    """Max over direction pairs of ``|<dδf M, N> - <dδf N, M>|``.

    ``dδf`` is approximated by central differences of the gradient map. A
    large value shows the declared gradient cannot come from a functional.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    directions = [d.as_float() for d in (dirs if dirs is not None else default_directions())]
    base = m.as_float()
    derivs = [
        (f.gradient(base + d * step) - f.gradient(base - d * step)) / (2.0 * step)
        for d in directions
    ]
    worst = 0.0
    for (i, di), (j, dj) in itertools.combinations(enumerate(derivs), 2):
        gap = abs(l2_pair(di, directions[j]) - l2_pair(dj, directions[i]))
        worst = max(worst, gap)
    return worst


def cubic_example_functional() -> RegularFunctional:
    """``f(m) = ∫ (m² + m m_x²) dx`` with gradient ``2m - m_x² - 2 m m_xx``."""

    def value(m: FourierSeries) -> float:
        mx = differentiate(m)
        density = multiply(m, m) + multiply(m, multiply(mx, mx))
        return integrate(density)

    def gradient(m: FourierSeries) -> FourierSeries:
        mx = differentiate(m)
        mxx = differentiate(m, 2)
        return m * 2 - multiply(mx, mx) - multiply(m, mxx) * 2

    return RegularFunctional(value, gradient, "cubic_example")


def _canonical_action(m: FourierSeries, v: FourierSeries) -> FourierSeries:
    """``J(m) v = 2 m v_x + m_x v`` at full bandwidth."""
    return multiply(m, differentiate(v)) * 2 + multiply(differentiate(m), v)


def _second_variation(f: RegularFunctional, m: FourierSeries, w: FourierSeries, step: float) -> FourierSeries:
    return (f.gradient(m + w * step) - f.gradient(m - w * step)) / (2.0 * step)


def canonical_bracket_functional(
    f: RegularFunctional,
    g: RegularFunctional,
    step: float = 1e-3,
) -> RegularFunctional:
    """``{f, g}`` for ``J(m) = mD + Dm`` as a functional with its gradient.

    The value is ``∫ m [δf, δg] dx``. The gradient is

        δ{f, g} = dδf(J δg) - dδg(J δf) + δf δg_x - δg δf_x

    with ``dδf`` taken by central differences of the gradient map, which is
    exact when the gradient is at most quadratic in ``m``.
    """
    if step <= 0:
        raise ValueError("step must be positive")

    def value(m: FourierSeries) -> float:
        return integrate(multiply(m, lie_bracket(f.gradient(m), g.gradient(m))))

    def gradient(m: FourierSeries) -> FourierSeries:
        base = m.as_float()
        df = f.gradient(base).as_float()
        dg = g.gradient(base).as_float()
        return (
            _second_variation(f, base, _canonical_action(base, dg), step)
            - _second_variation(g, base, _canonical_action(base, df), step)
            + lie_bracket(df, dg)
        )

    return RegularFunctional(value, gradient, f"{{{f.name}, {g.name}}}")
