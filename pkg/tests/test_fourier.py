from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from vects1 import ArithmeticMode, FourierSeries
from vects1.exceptions import DimensionMismatchError, ResolutionError, SingularSymbolError
from vects1.fourier import (
    differentiate,
    grid_transform,
    integrate,
    inverse_grid_transform,
    l2_pair,
    lie_bracket_product,
    mean_pair,
    multiply,
    random_trig_polynomial,
    trig_sum,
)
from vects1.utils.scalars import real_part


def test_cos_and_sin_coefficients() -> None:
    c = FourierSeries.cos(1)
    s = FourierSeries.sin(1)

    assert c.coeff(1) == pytest.approx(0.5)
    assert c.coeff(-1) == pytest.approx(0.5)
    assert s.coeff(1) == pytest.approx(-0.5j)
    assert s.coeff(-1) == pytest.approx(0.5j)
    assert c.real_flag and s.real_flag
    assert c.coeff(7) == 0


def test_product_of_cosines(cos_density: FourierSeries) -> None:
    square = multiply(cos_density, cos_density)

    assert square.max_freq == 2
    assert square.coeff(0) == pytest.approx(0.5)
    assert square.coeff(2) == pytest.approx(0.25)
    assert multiply(cos_density, cos_density, out_max_freq=1).coeff(2) == 0


def test_derivative_of_sine_is_cosine() -> None:
    assert differentiate(FourierSeries.sin(1)).allclose(FourierSeries.cos(1))
    assert differentiate(FourierSeries.cos(2), 2).allclose(FourierSeries.cos(2, -4))


def test_pairings_use_period_two_pi(cos_density: FourierSeries) -> None:
    assert mean_pair(cos_density, cos_density) == pytest.approx(0.5)
    assert l2_pair(cos_density, cos_density) == pytest.approx(math.pi)
    assert l2_pair(cos_density, FourierSeries.sin(1)) == pytest.approx(0.0)
    assert integrate(FourierSeries.constant(3.0)) == pytest.approx(6 * math.pi)


def test_rational_arithmetic_is_exact(exact_cos: FourierSeries) -> None:
    square = multiply(exact_cos, exact_cos)

    assert square.is_exact
    assert real_part(square.coeff(0)) == Fraction(1, 2)
    assert real_part(mean_pair(exact_cos, exact_cos)) == Fraction(1, 2)
    assert square == multiply(exact_cos, exact_cos)


def test_mixing_modes_is_rejected(cos_density: FourierSeries, exact_cos: FourierSeries) -> None:
    with pytest.raises(DimensionMismatchError):
        cos_density + exact_cos
    with pytest.raises(DimensionMismatchError):
        multiply(cos_density, exact_cos)


def test_lie_bracket_product_is_antisymmetric(small_density: FourierSeries) -> None:
    v = FourierSeries.sin(2, 0.7)
    forward = lie_bracket_product(small_density, v)
    backward = lie_bracket_product(v, small_density)

    assert (forward + backward).is_zero(tol=1e-14)
    assert lie_bracket_product(v, v).is_zero(tol=1e-14)


def test_evaluate_matches_pointwise_values() -> None:
    f = trig_sum([("const", 0, 1.0), ("cos", 2, 3.0), ("sin", 1, -2.0)])
    x = np.linspace(0.0, 2 * math.pi, 7)

    expected = 1.0 + 3.0 * np.cos(2 * x) - 2.0 * np.sin(x)
    np.testing.assert_allclose(f.evaluate(x), expected, atol=1e-12)
    assert f.evaluate(0.0) == pytest.approx(4.0)


def test_grid_transform_recovers_coefficients(small_density: FourierSeries) -> None:
    samples = grid_transform(small_density, 8)

    assert samples.dtype == float
    recovered = inverse_grid_transform(samples, small_density.max_freq)
    assert recovered.allclose(small_density, atol=1e-13)


def test_grid_transform_rejects_coarse_grids() -> None:
    f = FourierSeries.cos(3)
    with pytest.raises(ResolutionError):
        grid_transform(f, 6)
    with pytest.raises(ResolutionError):
        inverse_grid_transform(np.zeros(4), 3)
    # aliased sampling is allowed when inversion is not needed
    assert grid_transform(f, 4, invertible=False).shape == (4,)


def test_inverting_a_vanishing_symbol_fails(cos_density: FourierSeries) -> None:
    with pytest.raises(SingularSymbolError):
        cos_density.apply_symbol(lambda j: j, inverse=True)
    assert cos_density.apply_symbol(lambda j: 1 + j * j, inverse=True).allclose(cos_density * 0.5)


def test_json_keeps_exact_values(exact_cos: FourierSeries) -> None:
    payload = exact_cos.to_json()

    assert payload["N"] == 1
    assert payload["mode"] == "rational"
    assert payload["coeffs"][0] == ["1/2", "0"]
    assert FourierSeries.from_json(payload) == exact_cos


def test_random_trig_polynomial_is_deterministic() -> None:
    a = random_trig_polynomial(3, seed=11)
    b = random_trig_polynomial(3, seed=11)

    assert a == b
    assert a.real_flag
    assert random_trig_polynomial(3, seed=11, mode=ArithmeticMode.RATIONAL).is_exact


def test_odd_length_is_required() -> None:
    with pytest.raises(ValueError):
        FourierSeries([1.0, 2.0])


def test_bandwidth_ignores_zero_padding(cos_density: FourierSeries) -> None:
    padded = cos_density.resized(5)

    assert padded.max_freq == 5
    assert padded.bandwidth == 1
    assert FourierSeries.constant(2.0).bandwidth == 0


@pytest.mark.parametrize("seed", range(10))
def test_leibniz_rule_exact(seed: int) -> None:
    f = random_trig_polynomial(3, seed=seed, mode=ArithmeticMode.RATIONAL, real=False)
    g = random_trig_polynomial(2, seed=seed + 100, mode=ArithmeticMode.RATIONAL, real=False)

    lhs = differentiate(multiply(f, g))
    assert lhs == multiply(differentiate(f), g) + multiply(f, differentiate(g))


@pytest.mark.parametrize("seed", range(10))
def test_integration_by_parts_exact(seed: int) -> None:
    f = random_trig_polynomial(4, seed=seed, mode=ArithmeticMode.RATIONAL, real=False)
    g = random_trig_polynomial(3, seed=seed + 100, mode=ArithmeticMode.RATIONAL, real=False)

    assert mean_pair(differentiate(f), g) == -mean_pair(f, differentiate(g))
