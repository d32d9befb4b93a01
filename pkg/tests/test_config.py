from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from vects1.config import (
    THREADS_ENV,
    Command,
    FlowSettings,
    RunConfig,
    parse_k_range,
    parse_rational,
    worker_count,
)
from vects1.exceptions import InvalidConfigError
from vects1.types import ArithmeticMode


@pytest.mark.parametrize(
    ("text", "expected"),
    [("3", [3]), ("0..5", [0, 1, 2, 3, 4, 5]), ("0,1,3", [0, 1, 3]), (2, [2])],
)
def test_parse_k_range(text, expected: list[int]) -> None:
    assert parse_k_range(text) == expected


def test_parse_k_range_rejects_reversed_range() -> None:
    with pytest.raises(ValueError):
        parse_k_range("5..2")


def test_parse_rational_reads_decimals_exactly() -> None:
    assert parse_rational("0.1") == Fraction(1, 10)
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(0.5) == Fraction(1, 2)


def test_run_config_defaults() -> None:
    config = RunConfig.build(command="classify", k_values="0..5")

    assert config.command is Command.CLASSIFY
    assert config.k_values == [0, 1, 2, 3, 4, 5]
    assert config.mode is ArithmeticMode.FLOAT
    assert config.scan_ns == [1, 2, 3, 4, 5, 6]
    assert config.flow.grid_points == 128


def test_run_config_numbers_follow_mode() -> None:
    exact = RunConfig.build(command="scan", mode="rational", alpha_beta=[("0.5", "-1/3")])
    approx = RunConfig.build(command="scan", alpha_beta=[("0.5", "-1/3")])

    assert exact.scan_grid() == [(Fraction(1, 2), Fraction(-1, 3))]
    assert approx.scan_grid()[0][1] == pytest.approx(-1 / 3)


@pytest.mark.parametrize(
    "values",
    [
        {"command": "classify", "k_values": "99"},
        {"command": "classify", "k_values": ""},
        {"command": "classify", "n_max": 1},
        {"command": "scan", "alpha_beta": [("x", "1")]},
        {"command": "scan", "alpha_beta": []},
        {"command": "scan", "n_values": [0, 1]},
        {"command": "cocycle-check", "beta": "1/0"},
        {"command": "unknown"},
        {"command": "classify", "extra": 1},
    ],
)
def test_invalid_configs_raise(values: dict) -> None:
    with pytest.raises(InvalidConfigError):
        RunConfig.build(**values)


@pytest.mark.parametrize(
    "values",
    [{"grid_points": 100}, {"grid_points": 2}, {"dt": 0.0}, {"T": -1.0}, {"T": float("inf")}],
)
def test_flow_settings_validation(values: dict) -> None:
    with pytest.raises(ValidationError):
        FlowSettings(**values)


def test_worker_count_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(THREADS_ENV, "3")
    assert worker_count() == 3

    monkeypatch.setenv(THREADS_ENV, "zero")
    with pytest.raises(InvalidConfigError):
        worker_count()

    monkeypatch.setenv(THREADS_ENV, "0")
    with pytest.raises(InvalidConfigError):
        worker_count()

    monkeypatch.delenv(THREADS_ENV)
    assert 1 <= worker_count() <= 4


def test_explicit_threads_override_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(THREADS_ENV, "3")

    assert RunConfig.build(command="scan", threads=2).workers() == 2
    assert RunConfig.build(command="scan").workers() == 3
