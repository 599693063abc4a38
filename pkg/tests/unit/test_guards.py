"""
Unit Tests for Enumeration Size Guards
"""

import pytest

from kasami_welch.errors import ParameterError, SizeGuardError
from kasami_welch.field_core import validate_params
from kasami_welch.guards import (
    SIZE_GUARDS,
    SizeGuard,
    check_size_guard,
    get_size_guard,
    size_guarded,
)


class TestGetSizeGuard:
    """Test guard lookup."""

    def test_known_guard(self):
        guard = get_size_guard("S", "naive")
        assert guard.name == "S:naive"
        assert guard.max_n == 8

    def test_unknown_strategy_lists_known_ones(self):
        with pytest.raises(ParameterError, match="Unknown strategy 'bogus'") as exc:
            get_size_guard("T", "bogus")
        assert "naive" in str(exc.value)
        assert "walsh" in str(exc.value)

    def test_every_guard_has_a_bound(self):
        for guard in SIZE_GUARDS.values():
            assert guard.max_n is not None or guard.max_work is not None


class TestCheckSizeGuard:
    """Test guard enforcement."""

    def test_within_degree_limit(self):
        check_size_guard(SizeGuard("t", max_n=8), n=8)

    def test_degree_limit_exceeded(self):
        with pytest.raises(SizeGuardError, match="n=9 > 8") as exc:
            check_size_guard(SizeGuard("t", max_n=8), n=9)
        assert exc.value.details == {"guard": "t", "limit": 8, "requested": 9}

    def test_work_limit_exceeded(self):
        with pytest.raises(SizeGuardError, match="work=101 > 100"):
            check_size_guard(SizeGuard("w", max_work=100), n=3, work=101)

    def test_work_unknown_is_not_checked(self):
        check_size_guard(SizeGuard("w", max_work=100), n=3, work=None)

    def test_allow_large_overrides(self, caplog):
        check_size_guard(SizeGuard("t", max_n=8), n=20, allow_large=True)
        assert "exceeded" in caplog.text


class TestSizeGuardedDecorator:
    """Test the decorator form."""

    def test_passes_through_and_blocks(self):
        @size_guarded("S", "naive")
        def count(params, allow_large=False):
            return params.n

        assert count(validate_params(5, 1)) == 5
        with pytest.raises(SizeGuardError):
            count(validate_params(9, 1))
        assert count(validate_params(9, 1), allow_large=True) == 9

    def test_work_estimator(self):
        @size_guarded("corr", "brute", work=lambda p: p.q**4)
        def run(params):
            return "ran"

        assert run(validate_params(5, 1)) == "ran"
        with pytest.raises(SizeGuardError, match="work="):
            run(validate_params(7, 1))

    def test_unknown_pair_fails_at_decoration(self):
        with pytest.raises(ParameterError):
            size_guarded("weights", "direct:C3")
