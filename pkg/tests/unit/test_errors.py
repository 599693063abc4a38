"""
Unit Tests for Exception Hierarchy

Tests the error base class, subclass relations and the exit-code mapping.
"""

import pytest

from kasami_welch.errors import (
    ClosedFormError,
    DegenerateInputError,
    FieldError,
    KasamiWelchError,
    ParameterError,
    ProvenanceMismatchError,
    SequenceParameterError,
    SizeGuardError,
    VerificationError,
    exit_code_for,
)


class TestKasamiWelchError:
    """Test base KasamiWelchError exception."""

    def test_init_with_message_only(self):
        """Test initialization with message only."""
        error = KasamiWelchError("Test error")
        assert str(error) == "Test error"
        assert error.message == "Test error"
        assert error.params is None
        assert error.cause is None
        assert error.details == {}

    def test_init_with_params(self):
        """Test parameter provenance is appended to the message."""
        error = ParameterError("k = n/4 is excluded", params=(8, 2))
        assert str(error) == "k = n/4 is excluded [n=8, k=2]"
        assert error.message == "k = n/4 is excluded"

    def test_init_with_cause(self):
        """Test the wrapped exception is kept and shown."""
        original = ValueError("bad value")
        error = VerificationError("Check failed", cause=original)
        assert error.cause is original
        assert "[Cause: bad value]" in str(error)

    def test_details_are_kept(self):
        """Test structured details survive construction."""
        error = SizeGuardError("too big", details={"limit": 8, "requested": 10})
        assert error.details["limit"] == 8


class TestHierarchy:
    """Test subclass relations."""

    @pytest.mark.parametrize(
        "error_type",
        [
            FieldError,
            ParameterError,
            SequenceParameterError,
            DegenerateInputError,
            SizeGuardError,
            ClosedFormError,
            VerificationError,
            ProvenanceMismatchError,
        ],
    )
    def test_all_inherit_from_base(self, error_type):
        """Test every error is catchable as KasamiWelchError."""
        with pytest.raises(KasamiWelchError):
            raise error_type("boom")

    def test_sequence_error_is_parameter_error(self):
        """Test sequence exclusions are parameter rejections."""
        assert issubclass(SequenceParameterError, ParameterError)


class TestExitCodes:
    """Test error -> exit code mapping."""

    def test_parameter_errors_exit_2(self):
        assert exit_code_for(ParameterError("x")) == 2
        assert exit_code_for(SequenceParameterError("x")) == 2

    def test_size_guard_exits_3(self):
        assert exit_code_for(SizeGuardError("x")) == 3

    def test_verification_exits_1(self):
        assert exit_code_for(VerificationError("x")) == 1

    def test_other_errors_exit_1(self):
        """Test unknown and non-package errors fall back to 1."""
        assert exit_code_for(ClosedFormError("x")) == 1
        assert exit_code_for(RuntimeError("x")) == 1
