"""Shared pytest fixtures."""

from __future__ import annotations

import pytest

from vects1 import ArithmeticMode, FourierSeries
from vects1.fourier import random_trig_polynomial


@pytest.fixture
def cos_density() -> FourierSeries:
    return FourierSeries.cos(1)


@pytest.fixture
def exact_cos() -> FourierSeries:
    return FourierSeries.cos(1, mode=ArithmeticMode.RATIONAL)


@pytest.fixture
def small_density() -> FourierSeries:
    """Real trig polynomial of bandwidth 2 with moderate amplitude."""
    return random_trig_polynomial(2, seed=7, scale=0.3)


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path / "out"
