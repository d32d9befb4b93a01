from __future__ import annotations

from fractions import Fraction

import pytest

from vects1 import ArithmeticMode, FourierSeries
from vects1.exceptions import BandwidthError
from vects1.fourier import differentiate, mean_pair, multiply, random_trig_polynomial
from vects1.lie_poisson import (
    CocycleSpec,
    RegularFunctional,
    canonical_bracket_functional,
    cocycle_report,
    cubic_example_functional,
    directional_derivative,
    gradient_audit,
    gradient_symmetry_check,
    jacobi_defect,
    lie_bracket,
    modified_structure,
    op_J,
    op_K,
    poisson_bracket,
    relative_error,
)
from vects1.operators import bilinear_adjoint, derivative_operator, is_symmetric, symmetry_defect
from vects1.sobolev import h_k_functional, h_tilde_functional


def test_canonical_operator_action(cos_density: FourierSeries, small_density: FourierSeries) -> None:
    n = 5
    expected = multiply(cos_density, differentiate(small_density)) * 2 + multiply(
        differentiate(cos_density), small_density
    )

    assert op_J(cos_density, n).apply(small_density).allclose(expected.resized(n))


def test_canonical_operator_is_antisymmetric(small_density: FourierSeries) -> None:
    j = op_J(small_density, 6)

    assert symmetry_defect(j) > 0
    assert (j + bilinear_adjoint(j)).max_abs() < 1e-14


def test_cocycle_spec_from_alpha_beta() -> None:
    spec = CocycleSpec.from_alpha_beta(3, 1)

    assert spec.is_constant
    assert spec.alpha == pytest.approx(3.0)
    assert CocycleSpec.from_alpha_beta(Fraction(3), 1, mode=ArithmeticMode.RATIONAL).alpha == Fraction(3)
    assert CocycleSpec.coboundary(FourierSeries.cos(1)).alpha is None


def test_cocycle_spec_rejects_complex_density() -> None:
    with pytest.raises(ValueError):
        CocycleSpec(FourierSeries.exponential(1, 1))


def test_constant_cocycle_operator() -> None:
    spec = CocycleSpec.from_alpha_beta(2, 5)
    k_op = op_K(spec, 3)

    # K = alpha D + beta D^3 has symbol 2ij - 5ij^3
    assert k_op.entry(2, 2) == pytest.approx(2 * 2j - 5 * 8j)
    assert k_op.is_diagonal


@pytest.mark.parametrize(
    "spec",
    [
        CocycleSpec.from_alpha_beta(2, 1),
        CocycleSpec.from_alpha_beta(0, -3),
        CocycleSpec(FourierSeries.cos(1) + FourierSeries.sin(2, 0.5), 1.5),
    ],
)
def test_cocycle_identity_holds(spec: CocycleSpec) -> None:
    report = cocycle_report(spec, bound=3)

    assert report.passed
    assert report.triples_checked == 7**3
    assert report.to_json()["N"] == 6


def test_cocycle_identity_is_exact_in_rational_mode(exact_cos: FourierSeries) -> None:
    report = cocycle_report(CocycleSpec(exact_cos, Fraction(1, 3)), bound=2)

    assert report.max_defect == 0.0
    assert report.worst_triple is None


def test_non_cocycle_is_detected() -> None:
    # D^2 is symmetric, so it cannot define a 2-cocycle
    defect = jacobi_defect(derivative_operator(4, 2), 1, 2, -3)

    assert abs(defect) == pytest.approx(20.0)


def test_jacobi_defect_checks_window() -> None:
    with pytest.raises(BandwidthError):
        jacobi_defect(derivative_operator(2, 3), 2, 2, -1)


def test_lie_bracket_of_exponentials() -> None:
    u = FourierSeries.exponential(1, 1, max_freq=1)
    v = FourierSeries.exponential(2, 1, max_freq=2)

    # [e^{ix}, e^{2ix}] = i(2 - 1) e^{3ix}
    assert lie_bracket(u, v).coeff(3) == pytest.approx(1j)


def test_poisson_bracket_is_antisymmetric(small_density: FourierSeries) -> None:
    f = RegularFunctional.linear(FourierSeries.cos(1))
    g = RegularFunctional.linear(FourierSeries.sin(2, 0.5))
    structure = modified_structure(CocycleSpec.from_alpha_beta(1, -1), 6)(small_density)

    fg = poisson_bracket(f, g, small_density, structure)
    gf = poisson_bracket(g, f, small_density, structure)
    assert fg == pytest.approx(-gf, abs=1e-12)
    assert poisson_bracket(f, f, small_density, structure) == pytest.approx(0.0, abs=1e-12)


def test_modified_structure_is_antisymmetric(small_density: FourierSeries) -> None:
    structure = modified_structure(CocycleSpec(FourierSeries.cos(2), 0.5), 6)

    op = structure(small_density)
    assert not is_symmetric(op)
    assert (op + bilinear_adjoint(op)).max_abs() < 1e-12


def test_gradient_audit_accepts_declared_gradient(small_density: FourierSeries) -> None:
    assert gradient_audit(cubic_example_functional(), small_density) < 1e-6
    assert gradient_symmetry_check(cubic_example_functional(), small_density) < 1e-6


def test_gradient_audit_rejects_wrong_gradient(small_density: FourierSeries) -> None:
    honest = cubic_example_functional()
    wrong = RegularFunctional(honest.value, lambda m: m * 2, "wrong")

    assert gradient_audit(wrong, small_density) > 1e-3


def test_planted_non_gradient_is_asymmetric(small_density: FourierSeries) -> None:
    planted = RegularFunctional(lambda m: 0.0, differentiate, "planted")

    assert gradient_symmetry_check(planted, small_density) > 1.0


def test_directional_derivative_of_linear_functional(small_density: FourierSeries) -> None:
    u = FourierSeries.cos(1)
    f = RegularFunctional.linear(u)

    assert directional_derivative(f, small_density, u) == pytest.approx(3.141592653589793, rel=1e-9)
    with pytest.raises(ValueError):
        directional_derivative(f, small_density, u, step=0.0)


def test_relative_error_floor() -> None:
    assert relative_error(1e-9, 0.0) == pytest.approx(1e-9)
    assert relative_error(11.0, 10.0) == pytest.approx(0.1)


@pytest.mark.parametrize(
    "spec",
    [
        CocycleSpec.from_alpha_beta(2, 0, mode=ArithmeticMode.RATIONAL),
        CocycleSpec.from_alpha_beta(0, 1, mode=ArithmeticMode.RATIONAL),
        CocycleSpec.from_alpha_beta(1, -1, mode=ArithmeticMode.RATIONAL),
        CocycleSpec.coboundary(FourierSeries.cos(1, mode=ArithmeticMode.RATIONAL)),
        CocycleSpec.coboundary(
            FourierSeries.constant(1, mode=ArithmeticMode.RATIONAL)
            + FourierSeries.sin(2, Fraction(1, 2), mode=ArithmeticMode.RATIONAL)
        ),
    ],
    ids=["D", "D3", "D-D3", "cos", "1+sin2x/2"],
)
def test_cocycle_suite_exact(spec: CocycleSpec) -> None:
    assert cocycle_report(spec, bound=6).max_defect == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_lie_bracket_satisfies_jacobi_exactly(seed: int) -> None:
    u, v, w = (
        random_trig_polynomial(2, seed=3 * seed + offset, mode=ArithmeticMode.RATIONAL) for offset in range(3)
    )

    cyclic = lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u)) + lie_bracket(w, lie_bracket(u, v))
    assert cyclic.is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_canonical_bracket_of_linear_functionals(seed: int) -> None:
    u, v, m = (
        random_trig_polynomial(2, seed=3 * seed + offset, mode=ArithmeticMode.RATIONAL) for offset in range(3)
    )
    j = op_J(m, 6)

    # {f_u, f_v}(m) = f_[u,v](m)
    assert mean_pair(u, j.apply(v)) == mean_pair(lie_bracket(u, v), m)
    expected = RegularFunctional.linear(lie_bracket(u, v))(m)
    bracket = poisson_bracket(RegularFunctional.linear(u), RegularFunctional.linear(v), m, j)
    assert bracket == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_bracket_functional_matches_structure(small_density: FourierSeries) -> None:
    f = cubic_example_functional()
    g = h_k_functional(1)
    bracket = canonical_bracket_functional(f, g)

    assert bracket(small_density) == pytest.approx(
        poisson_bracket(f, g, small_density, op_J(small_density, 8)), rel=1e-10, abs=1e-12
    )
    assert canonical_bracket_functional(g, f)(small_density) == pytest.approx(-bracket(small_density), abs=1e-12)


@pytest.mark.parametrize(
    "g",
    [RegularFunctional.linear(FourierSeries.sin(2, 0.5)), h_k_functional(1), h_tilde_functional(0)],
    ids=["linear", "h_1", "h_tilde_0"],
)
def test_bracket_functional_gradient_passes_audit(g: RegularFunctional, small_density: FourierSeries) -> None:
    bracket = canonical_bracket_functional(cubic_example_functional(), g)

    assert gradient_audit(bracket, small_density) < 1e-6
    assert gradient_symmetry_check(bracket, small_density) < 1e-6


def test_bracket_functional_rejects_bad_step() -> None:
    with pytest.raises(ValueError):
        canonical_bracket_functional(cubic_example_functional(), h_k_functional(0), step=0.0)
