"""
Enumeration Size Guards

Purpose: Refuse exhaustive enumerations whose work exceeds a per-strategy
budget unless the caller explicitly opts in (allow_large / --allow-large).

Design:
1. SizeGuard dataclass defines the budget (max field degree and/or max work)
2. SIZE_GUARDS maps (operation, strategy) -> guard
3. get_size_guard() looks a guard up, check_size_guard() enforces it
4. size_guarded() decorator applies the check before the guarded call runs
"""

import functools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Optional

from kasami_welch.errors import ParameterError, SizeGuardError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SizeGuard:
    """Work budget for one enumeration strategy.

    Attributes:
        name: "operation:strategy" identifier shown in errors
        max_n: Largest field degree allowed (inclusive), if bounded by degree
        max_work: Largest elementary evaluation count allowed, if bounded by work
        description: What the work count measures
    """

    name: str
    max_n: Optional[int] = None
    max_work: Optional[int] = None
    description: str = ""


# Budgets by (operation, strategy)
SIZE_GUARDS: dict[tuple[str, str], SizeGuard] = {
    ("T", "naive"): SizeGuard("T:naive", max_n=12, description="2^{3n} character products"),
    ("T", "walsh"): SizeGuard("T:walsh", max_n=12, description="2^{2n}-point transform"),
    ("T", "rank_fast"): SizeGuard("T:rank_fast", max_n=16, description="2^{2n} kernel ranks"),
    ("T", "rank_fast:odd"): SizeGuard(
        "T:rank_fast:odd", max_n=12, description="walsh table checked against ranks, n/d odd"
    ),
    ("S", "naive"): SizeGuard("S:naive", max_n=8, description="2^{4n} character products"),
    ("S", "lemma2"): SizeGuard("S:lemma2", max_n=16, description="2^{2n} kernel ranks"),
    ("census", "rank"): SizeGuard("census:rank", max_n=16, description="2^{2n} kernel ranks"),
    ("weights", "direct:C1"): SizeGuard(
        "weights:direct:C1", max_n=10, description="2^{2n} codewords of length 2^n-1"
    ),
    ("weights", "direct:C2"): SizeGuard(
        "weights:direct:C2", max_n=8, description="2^{3n} codewords of length 2^n-1"
    ),
    ("corr", "brute"): SizeGuard(
        "corr:brute", max_work=1 << 26, description="family_size^2 * (q-1) correlations"
    ),
    ("corr", "reduced"): SizeGuard("corr:reduced", max_n=12, description="S table over 2^{3n}"),
    ("moments", "T"): SizeGuard("moments:T", max_n=12, description="T table and M2/M3 counts"),
    ("moments", "S"): SizeGuard("moments:S", max_n=8, description="S histogram and L3 count"),
    ("curve", "brute"): SizeGuard("curve:brute", max_n=16, description="2^n points per curve"),
}


def get_size_guard(operation: str, strategy: str) -> SizeGuard:
    """Get the guard for an (operation, strategy) pair.

    Raises:
        ParameterError: If the strategy is not known for this operation
    """
    try:
        return SIZE_GUARDS[(operation, strategy)]
    except KeyError:
        known = sorted(s for (op, s) in SIZE_GUARDS if op == operation)
        raise ParameterError(
            f"Unknown strategy '{strategy}' for {operation}; expected one of {known}"
        ) from None


def check_size_guard(
    guard: SizeGuard, n: int, work: Optional[int] = None, allow_large: bool = False
) -> None:
    """Enforce a guard.

    Args:
        guard: Guard to enforce
        n: Field degree of the requested run
        work: Estimated elementary evaluations (checked against max_work)
        allow_large: Skip enforcement (logged)

    Raises:
        SizeGuardError: If the request exceeds the guard and allow_large is False
    """
    too_big_n = guard.max_n is not None and n > guard.max_n
    too_much_work = guard.max_work is not None and work is not None and work > guard.max_work
    if not (too_big_n or too_much_work):
        return
    if allow_large:
        logger.warning("Size guard %s exceeded (n=%d, work=%s); continuing", guard.name, n, work)
        return

    if too_big_n:
        limit, requested, what = guard.max_n, n, "n"
    else:
        limit, requested, what = guard.max_work, work, "work"
    raise SizeGuardError(
        f"Size guard {guard.name} exceeded: {what}={requested} > {limit} ({guard.description})",
        details={"guard": guard.name, "limit": limit, "requested": requested},
    )


def size_guarded(
    operation: str,
    strategy: str,
    work: Optional[Callable[[Any], int]] = None,
) -> Callable:
    """Decorator enforcing a size guard on a function taking `params` first.

    The wrapped function must accept `params` (a ParamSet) as its first
    argument; an `allow_large` keyword, if passed, is consumed by the check and
    forwarded unchanged.

    Usage:
        @size_guarded("S", "naive")
        def s_naive_distribution(params, allow_large=False):
            ...

    Args:
        operation: Guard operation key
        strategy: Guard strategy key
        work: Optional estimator params -> work count

    Returns:
        Decorator
    """
    guard = get_size_guard(operation, strategy)

    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(params: Any, *args: Any, **kwargs: Any) -> Any:
            estimate = work(params) if work is not None else None
            check_size_guard(guard, params.n, estimate, kwargs.get("allow_large", False))
            return func(params, *args, **kwargs)

        return wrapper

    return decorator
