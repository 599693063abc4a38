"""
Unified Exception Hierarchy for Kasami-Welch Computations

Purpose: Give every failure mode of field construction, parameter validation,
enumeration budgets and table verification a common base class, so callers
(and the CLI exit-code mapping) can react by category.

Design Principles:
1. Inherit from common base (KasamiWelchError)
2. Preserve parameter provenance ((n, k)) and the underlying cause
3. Carry structured details for reports (guard limits, diff lists)
4. Human-readable error messages
"""

from typing import Any, Optional


class KasamiWelchError(Exception):
    """Base exception for all kasami_welch errors."""

    def __init__(
        self,
        message: str,
        params: Optional[tuple[int, int]] = None,
        cause: Optional[Exception] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> None:
        """Initialize error with context.

        Args:
            message: Human-readable error message
            params: (n, k) the failing computation was run for, if known
            cause: Original exception, if this error wraps another one
            details: Additional structured context (optional)

        Example:
            >>> error = ParameterError("k = n/4 is excluded", params=(8, 2))
            >>> str(error)
            'k = n/4 is excluded [n=8, k=2]'
        """
        super().__init__(message)
        self.message = message
        self.params = params
        self.cause = cause
        self.details = details or {}

    def __str__(self) -> str:
        """Return formatted error message with parameter context."""
        parts = [super().__str__()]
        if self.params is not None:
            parts.append(f"[n={self.params[0]}, k={self.params[1]}]")
        if self.cause is not None:
            parts.append(f"[Cause: {self.cause}]")
        return " ".join(parts)


class FieldError(KasamiWelchError):
    """Field construction or arithmetic misuse (degree range, inverse of zero)."""

    pass


class ParameterError(KasamiWelchError):
    """Rejected (n, k) pair or unsupported option combination.

    Exit code: 2
    """

    pass


class SequenceParameterError(ParameterError):
    """Parameters are valid for sums and codes but excluded for the sequence family."""

    pass


class DegenerateInputError(KasamiWelchError):
    """Operation is undefined for this input, e.g. the rank of the (0, 0) pair."""

    pass


class SizeGuardError(KasamiWelchError):
    """Requested enumeration exceeds its work budget.

    Exit code: 3 (override with --allow-large)
    """

    pass


class ClosedFormError(KasamiWelchError):
    """A closed-form multiplicity did not evaluate to a nonnegative integer."""

    pass


class VerificationError(KasamiWelchError):
    """An empirical/closed-form or cross-strategy comparison failed.

    Exit code: 1
    """

    pass


class ProvenanceMismatchError(KasamiWelchError):
    """Two distributions from different parameter sets or kinds were compared."""

    pass


# Exit codes by error category (checked in order, subclasses first)
EXIT_CODES: tuple[tuple[type, int], ...] = (
    (ParameterError, 2),
    (SizeGuardError, 3),
    (VerificationError, 1),
    (KasamiWelchError, 1),
)


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the process exit code.

    Args:
        error: Exception raised while running a command

    Returns:
        2 for parameter errors, 3 for size guards, 1 for everything else
    """
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return 1
