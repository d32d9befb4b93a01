from __future__ import annotations

import math
from fractions import Fraction

import pytest

from vects1 import ArithmeticMode, FourierSeries, KernelKind
from vects1.exceptions import BandwidthError, DegenerateFitError, OracleMismatchError
from vects1.lie_poisson import CocycleSpec
from vects1.obstruction import (
    P_operator,
    ScanResult,
    ScanRow,
    asymptotic_limit,
    classify_k,
    classify_range,
    crosscheck_matrix,
    defect_n,
    defect_row,
    expected_leading_term,
    format_equation,
    leading_ratio,
    m0_leading_term,
    pairing_closed_form,
    scan,
)
from vects1.operators import symmetry_defect
from vects1.sobolev import apply_A


def test_pairings_vanish_off_resonance() -> None:
    assert pairing_closed_form(1, 1, 1, 1, 1, 1) == (0, 0)
    assert pairing_closed_form(2, 1.0, 0.5, 2, 3, -4) == (0.0, 0.0)


def test_defect_at_unit_frequency() -> None:
    # k=1, n=1: f_1(1)/f_1(2) = 2/5, defect = -18/5 alpha - 18/5 beta
    assert defect_n(1, 1, 0, 1) == Fraction(-18, 5)
    assert defect_row(1, 1) == (Fraction(-18, 5), Fraction(-18, 5))
    assert defect_row(0, 3) == (0, -3 * 6 * 3**4)


@pytest.mark.parametrize("n", range(1, 9))
def test_camassa_holm_line_has_no_defect(n: int) -> None:
    assert defect_n(1, 1, -1, n) == 0
    assert defect_n(0, 7, 0, n) == 0


def test_defect_requires_positive_n() -> None:
    with pytest.raises(ValueError):
        defect_n(1, 1, 0, 0)


def test_classification_exact() -> None:
    burgers, camassa_holm, higher = classify_range([0, 1, 2], 6)

    assert burgers.kind is KernelKind.LINE
    assert burgers.equation == "beta = 0"
    assert camassa_holm.kind is KernelKind.LINE
    assert camassa_holm.equation == "alpha + beta = 0"
    assert higher.kind is KernelKind.POINT
    assert higher.equation == "alpha = 0, beta = 0"
    assert not higher.is_bi_hamiltonian
    assert camassa_holm.is_bi_hamiltonian


@pytest.mark.parametrize("k", range(2, 6))
def test_higher_sobolev_fields_are_not_bi_hamiltonian(k: int) -> None:
    result = classify_k(k, 6)

    assert result.kind is KernelKind.POINT
    assert result.basis == ()
    assert any(w.defect != 0 for w in result.witnesses)


def test_classification_float_matches_exact() -> None:
    for k in range(4):
        exact = classify_k(k, 6)
        approx = classify_k(k, 6, mode=ArithmeticMode.FLOAT)
        assert approx.kind is exact.kind
        assert approx.equation == exact.equation


def test_classification_needs_two_rows() -> None:
    with pytest.raises(ValueError):
        classify_k(1, 1)


def test_classification_json() -> None:
    payload = classify_k(1, 4).to_json()

    assert payload["kernel"]["type"] == "line"
    assert payload["kernel"]["equation"] == "alpha + beta = 0"
    assert len(payload["witnesses"]) == 4 * 3


@pytest.mark.parametrize(
    ("p", "q", "expected"),
    [
        (Fraction(1), Fraction(1), "alpha + beta = 0"),
        (Fraction(0), Fraction(-2), "beta = 0"),
        (Fraction(2), Fraction(-1), "alpha - 1/2*beta = 0"),
        (-3.0, 0.0, "alpha = 0"),
    ],
)
def test_format_equation(p, q, expected: str) -> None:
    assert format_equation(p, q) == expected


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_oracle_agrees_exactly(k: int, n: int) -> None:
    spec = CocycleSpec.from_alpha_beta(Fraction(2), Fraction(-2), mode=ArithmeticMode.RATIONAL)

    oracle = crosscheck_matrix(k, spec, n, -2 * n, n)
    assert oracle == pairing_closed_form(k, 2, -2, n, -2 * n, n)


def test_matrix_oracle_generic_triple() -> None:
    spec = CocycleSpec.from_alpha_beta(Fraction(1, 3), Fraction(5, 7), mode=ArithmeticMode.RATIONAL)

    assert crosscheck_matrix(2, spec, 3, 1, -4) == pairing_closed_form(2, Fraction(1, 3), Fraction(5, 7), 3, 1, -4)


def test_matrix_oracle_rejects_small_window() -> None:
    spec = CocycleSpec.from_alpha_beta(1, 0)
    with pytest.raises(BandwidthError):
        crosscheck_matrix(1, spec, 2, -4, 2, max_freq=3)


def test_scan_float_grid() -> None:
    result = scan([0, 1, 2], [1, 2, 3], [(1, 0), (0, 1), (-1, 1)], workers=2)

    assert len(result.rows) == 27
    assert result.max_discrepancy < 1e-10
    assert [row.k for row in result.rows[:9]] == [0] * 9
    result.check()


def test_scan_rejects_empty_grid() -> None:
    with pytest.raises(ValueError):
        scan([1], [], [(1, 0)])


def test_scan_check_raises_on_mismatch() -> None:
    row = ScanRow(1, 1, 1.0, 0.0, 0.0, 0.0, 0.0, discrepancy=0.5)

    with pytest.raises(OracleMismatchError):
        ScanResult((row,)).check()


def test_defect_ratio_approaches_limit() -> None:
    assert asymptotic_limit(1) == 0.0
    assert leading_ratio(2, 50) == pytest.approx(asymptotic_limit(2), abs=1e-2)
    assert leading_ratio(3, 50) == pytest.approx(6 * (1 - 4 / 64), abs=1e-2)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_leading_term_for_nonconstant_m0(k: int) -> None:
    m0 = FourierSeries.cos(1)
    x = math.pi / 6

    degree, coefficient = m0_leading_term(k, m0, x, range(2, 4 * k + 6))
    expected_degree, expected = expected_leading_term(k, m0, x)

    assert degree == expected_degree == 4 * k + 1
    assert coefficient == pytest.approx(expected, rel=1e-9)


def test_leading_term_values_at_sample_points() -> None:
    m0 = FourierSeries.cos(1)

    # m0'(pi/2) = -1
    assert expected_leading_term(1, m0, math.pi / 2)[1] == pytest.approx(-2j)
    assert expected_leading_term(0, m0, math.pi / 2)[1] == pytest.approx(-6j)


def test_constant_m0_has_no_leading_term() -> None:
    assert m0_leading_term(1, FourierSeries.constant(2.0), 0.3, range(2, 10)) == (-1, 0j)


def test_leading_term_needs_enough_points() -> None:
    with pytest.raises(DegenerateFitError):
        m0_leading_term(1, FourierSeries.cos(1), 0.3, [2, 3, 4])


@pytest.mark.parametrize(("n", "expected"), [(1, 12), (2, 120)])
def test_worked_camassa_holm_cells(n: int, expected: int) -> None:
    assert pairing_closed_form(1, -1, 1, n, -2 * n, n) == (expected, expected)


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_defect_ratio_within_one_percent_at_n_64(k: int) -> None:
    limit = asymptotic_limit(k)

    assert leading_ratio(k, 64) == pytest.approx(limit, rel=1e-2, abs=1e-2)
    if k == 1:
        assert all(defect_n(1, 0, 1, n) != 0 for n in range(1, 5))
        assert limit == 0.0


@pytest.mark.parametrize(
    ("k", "alpha", "beta"),
    [(0, 2, 0), (1, 1, -1)],
    ids=["burgers", "camassa_holm"],
)
@pytest.mark.parametrize(
    "n", [1, 2, 3, 4, pytest.param(5, marks=pytest.mark.slow), pytest.param(6, marks=pytest.mark.slow)]
)
def test_operator_is_symmetric_on_the_kernel_line(k: int, alpha: int, beta: int, n: int) -> None:
    spec = CocycleSpec.from_alpha_beta(Fraction(alpha), Fraction(beta), mode=ArithmeticMode.RATIONAL)
    m = apply_A(FourierSeries.exponential(n, 1, mode=ArithmeticMode.RATIONAL), k)
    window = 4 * n + 8

    p = P_operator(m, k, spec, window)
    assert symmetry_defect(p, window=window - n - 1) == 0.0
