"""
Pytest Fixtures for Kasami-Welch Tests

Provides validated parameter sets and fields for the small cases every
module is checked on exhaustively.
"""

import random

import pytest

from kasami_welch.field_core import make_field, validate_params

# ==================== Parameter Fixtures ====================


@pytest.fixture
def params_5_1():
    """n = 5, k = 1: n/d odd, the smallest sequence-valid odd case."""
    return validate_params(5, 1)


@pytest.fixture
def params_8_1():
    """n = 8, k = 1: n/d even, mu = 1, full five-valued T."""
    return validate_params(8, 1)


@pytest.fixture
def params_7_1():
    """n = 7, k = 1: n/d odd, larger family."""
    return validate_params(7, 1)


@pytest.fixture
def params_6_1():
    """n = 6, k = 1: code-degenerate (short cosets)."""
    return validate_params(6, 1)


# ==================== Field Fixtures ====================


@pytest.fixture
def gf16():
    return make_field(4)


@pytest.fixture
def gf32():
    return make_field(5)


@pytest.fixture
def rng():
    """Seeded generator so sampled checks are reproducible."""
    return random.Random(1234)
