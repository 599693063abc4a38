"""
Value Distributions: Closed-Form Tables, Enumerations and Comparison

Purpose: Evaluate the closed-form multiplicity tables for T and S exactly
(fractions.Fraction, every division checked), enumerate the same multisets
by brute force or by rank census, and diff the two.

Key types:
- ValueDistribution: exact value -> count multiset with provenance
- RankCensus: number of nonzero pairs per rank s - i
- DistributionReport: closed vs empirical diff with PASS / FAIL / UNCERTIFIED
"""

import logging
from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional

import numpy as np

from kasami_welch.errors import (
    ClosedFormError,
    ParameterError,
    ProvenanceMismatchError,
    VerificationError,
)
from kasami_welch.exp_sums import (
    gamma_histogram,
    kernel_census,
    s_lemma2_histogram,
    s_naive_histogram,
    t_histogram,
    t_table,
)
from kasami_welch.field_core import ParamSet
from kasami_welch.guards import check_size_guard, get_size_guard
from kasami_welch.linearized import batch_ranks

logger = logging.getLogger(__name__)

Origin = Literal["closed_form", "empirical"]
Kind = Literal["T", "S", "weight", "correlation"]
Status = Literal["PASS", "FAIL", "UNCERTIFIED", "ERRATA"]


@dataclass
class ValueDistribution:
    """Exact multiset of integer values.

    Attributes:
        params: Parameter set the multiset belongs to
        kind: What was counted (T, S, weight, correlation)
        origin: closed_form or empirical
        entries: value -> count, ascending by value
        unreliable: Set when the closed forms do not apply to params
    """

    params: ParamSet
    kind: Kind
    origin: Origin
    entries: dict[int, int]
    unreliable: bool = False

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.entries.values()):
            raise ClosedFormError("Negative count in distribution", params=self.params.as_tuple())
        self.entries = {v: c for v, c in sorted(self.entries.items()) if c != 0}

    @classmethod
    def from_counts(
        cls,
        params: ParamSet,
        kind: Kind,
        origin: Origin,
        counts: Mapping[int, int],
        unreliable: bool = False,
    ) -> "ValueDistribution":
        return cls(
            params=params,
            kind=kind,
            origin=origin,
            entries={int(v): int(c) for v, c in counts.items()},
            unreliable=unreliable,
        )

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def get(self, value: int) -> int:
        return self.entries.get(value, 0)

    def moment(self, order: int) -> int:
        return sum(c * v**order for v, c in self.entries.items())

    def items(self) -> list[tuple[int, int]]:
        return list(self.entries.items())


@dataclass
class RankCensus:
    """Counts n_i of nonzero pairs with rank s - i.

    Attributes:
        params: Parameter set
        counts: i -> n_i
        signed: (sign of T, i) -> count; filled for n/d odd when requested
        origin: empirical (enumerated) or closed_form (solved from moments)
    """

    params: ParamSet
    counts: dict[int, int]
    signed: dict[tuple[int, int], int] = field(default_factory=dict)
    origin: Origin = "empirical"

    def n(self, i: int) -> int:
        return self.counts.get(i, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.n(i) for i in census_indices(self.params))


@dataclass(frozen=True)
class Erratum:
    """A closed-form row that disagrees with exact enumeration."""

    source: str
    value: int
    closed: Optional[int]
    empirical: Optional[int]
    note: str = ""


@dataclass
class DistributionReport:
    """Closed-form vs empirical comparison."""

    params: ParamSet
    kind: Kind
    closed: ValueDistribution
    empirical: ValueDistribution
    diffs: list[tuple[int, int, int]]
    checks: dict[str, bool]
    errata: list[Erratum] = field(default_factory=list)
    status: Status = "PASS"

    @property
    def passed(self) -> bool:
        return self.status in ("PASS", "ERRATA")


# ==================== Exact Arithmetic ====================


def _p(e: int) -> Fraction:
    return Fraction(2) ** e


def exact_count(value: Fraction, label: str, params: ParamSet) -> int:
    """Assert a closed-form multiplicity is a nonnegative integer.

    Raises:
        ClosedFormError: On a nonzero remainder or a negative count
    """
    if value.denominator != 1:
        raise ClosedFormError(
            f"{label} is not an integer: {value}", params=params.as_tuple()
        )
    if value < 0:
        raise ClosedFormError(f"{label} is negative: {value}", params=params.as_tuple())
    return int(value)


def _half(numerator: int, label: str, params: ParamSet) -> int:
    if numerator % 2:
        raise ClosedFormError(f"{label}: odd exponent {numerator}", params=params.as_tuple())
    return numerator // 2


def _build(params: ParamSet, kind: Kind, rows: Iterable[tuple[int, Fraction, str]]) -> ValueDistribution:
    entries: Counter = Counter()
    for value, count, label in rows:
        entries[value] += exact_count(count, label, params)
    return ValueDistribution.from_counts(
        params, kind, "closed_form", entries, unreliable=params.code_degenerate
    )


def _even_factors(params: ParamSet) -> dict[str, Fraction]:
    """Shared numerators/denominators of the n/d even tables."""
    n, d = params.n, params.d
    m, mu = params.m, params.mu
    assert m is not None and mu is not None
    return {
        "A": _p(n + 6 * d) - _p(n + 4 * d) - _p(n + d) + mu * _p(m + 5 * d) - mu * _p(m + 4 * d)
        + _p(6 * d),
        "DA": (_p(d) + 1) * (_p(2 * d) - 1) * (_p(3 * d) + 1),
        "B": _p(n + 3 * d) + _p(n + 2 * d) - _p(n) - _p(n - d) - _p(n - 2 * d)
        - mu * _p(m + 3 * d) + mu * _p(m) + _p(3 * d),
        "DB": (_p(d) + 1) ** 2 * (_p(2 * d) - 1),
        "C": (_p(m - d) + mu) * (_p(m + d) + _p(m) - _p(m - 2 * d) - mu * _p(d)),
        "DC": (_p(d) + 1) ** 3 * (_p(d) - 1),
        "E": (_p(m - 2 * d) - mu) * (_p(m - d) + mu),
    }


# ==================== Closed-Form Tables ====================


def theorem1_table(params: ParamSet) -> ValueDistribution:
    """Closed-form multiset of T(alpha, beta) over all q^2 pairs.

    n/d odd:  +-2^{(n+d)/2}, 0, 2^n
    n/d even: mu 2^m, -mu 2^{m+d}, mu 2^{m+2d}, -mu 2^{m+3d}, 2^n

    Raises:
        ClosedFormError: If a multiplicity is not a nonnegative integer
    """
    n, d = params.n, params.d
    q1 = _p(n) - 1
    if not params.s_even:
        a = _half(n + d, "T value exponent", params)
        b = _half(n - d - 2, "T count exponent", params)
        rows = [
            (1 << a, (_p(n - d - 1) + _p(b)) * q1, "T +2^{(n+d)/2}"),
            (-(1 << a), (_p(n - d - 1) - _p(b)) * q1, "T -2^{(n+d)/2}"),
            (0, (_p(n) - _p(n - d) + 1) * q1, "T 0"),
            (1 << n, Fraction(1), "T 2^n"),
        ]
        return _build(params, "T", rows)

    f = _even_factors(params)
    m, mu = params.m, params.mu
    assert m is not None and mu is not None
    rows = [
        (mu * (1 << m), q1 * f["A"] / f["DA"], "T mu 2^m"),
        (-mu * (1 << (m + d)), q1 * f["B"] / f["DB"], "T -mu 2^{m+d}"),
        (mu * (1 << (m + 2 * d)), f["C"] * q1 / f["DC"], "T mu 2^{m+2d}"),
        (-mu * (1 << (m + 3 * d)), f["E"] * q1 / f["DA"], "T -mu 2^{m+3d}"),
        (1 << n, Fraction(1), "T 2^n"),
    ]
    return _build(params, "T", rows)


def xi(params: ParamSet) -> int:
    """Closed-form number of triples with S(alpha, beta, gamma) = 0.

    For n/d even the sign symbol is taken to be mu.
    """
    n, d = params.n, params.d
    q1 = _p(n) - 1
    if not params.s_even:
        value = q1 * (
            _p(2 * n) - _p(2 * n - d) + _p(2 * n - 4 * d) + _p(n) - _p(n - d) - _p(n - 3 * d) + 1
        )
        return exact_count(value, "xi", params)
    m, eps = params.m, params.mu
    assert m is not None and eps is not None
    signed = (
        _p(3 * m) - _p(3 * m - d) - _p(3 * m - 3 * d) + _p(3 * m - 5 * d) + _p(3 * m - 7 * d)
        - _p(3 * m - 8 * d)
    )
    inner = (
        _p(2 * n) + _p(2 * n - 9 * d) - eps * signed + _p(n) - _p(n - d) - _p(n - 4 * d)
        - _p(n - 6 * d) + _p(d) + 1
    )
    return exact_count(q1 * inner / (_p(d) + 1), "xi", params)


def theorem2_table(params: ParamSet) -> ValueDistribution:
    """Closed-form multiset of S(alpha, beta, gamma) over all q^3 triples.

    Raises:
        ClosedFormError: If a multiplicity is not a nonnegative integer
    """
    n, d = params.n, params.d
    q1 = _p(n) - 1
    zero = Fraction(xi(params))
    if not params.s_even:
        a = _half(n + d, "S value exponent", params)
        b = _half(n + 3 * d, "S value exponent", params)
        ea = _half(n - d - 2, "S count exponent", params)
        eb = _half(n - 3 * d - 2, "S count exponent", params)
        x = _p(n + 2 * d) - _p(n) - _p(n - d) + _p(2 * d)
        den = _p(2 * d) - 1
        rows = [
            (1 << a, (_p(n - d - 1) + _p(ea)) * q1 * x / den, "S +2^{(n+d)/2}"),
            (-(1 << a), (_p(n - d - 1) - _p(ea)) * q1 * x / den, "S -2^{(n+d)/2}"),
            (1 << b, (_p(n - 3 * d - 1) + _p(eb)) * (_p(n - d) - 1) * q1 / den, "S +2^{(n+3d)/2}"),
            (-(1 << b), (_p(n - 3 * d - 1) - _p(eb)) * (_p(n - d) - 1) * q1 / den, "S -2^{(n+3d)/2}"),
            (0, zero, "S 0"),
            (1 << n, Fraction(1), "S 2^n"),
        ]
        return _build(params, "S", rows)

    f = _even_factors(params)
    m = params.m
    assert m is not None
    classes = [
        (0, q1 * f["A"] / f["DA"]),
        (1, q1 * f["B"] / f["DB"]),
        (2, f["C"] * q1 / f["DC"]),
        (3, f["E"] * q1 / f["DA"]),
    ]
    rows = []
    for j, class_count in classes:
        value = 1 << (m + j * d)
        plus = _p(n - 2 * j * d - 1) + _p(m - j * d - 1)
        minus = _p(n - 2 * j * d - 1) - _p(m - j * d - 1)
        rows.append((value, plus * class_count, f"S +2^(m+{j}d)"))
        rows.append((-value, minus * class_count, f"S -2^(m+{j}d)"))
    rows.append((0, zero, "S 0"))
    rows.append((1 << n, Fraction(1), "S 2^n"))
    return _build(params, "S", rows)


# ==================== Enumerations ====================


def empirical_T_distribution(
    params: ParamSet, strategy: str = "naive", threads: int = 1, allow_large: bool = False
) -> ValueDistribution:
    """Multiset of T over all q^2 pairs by enumeration.

    Args:
        strategy: "naive" (2^{3n}), "walsh" or "rank_fast" (kernel ranks)
    """
    if strategy == "fast":
        strategy = "rank_fast"
    counts = t_histogram(params, strategy, threads=threads, allow_large=allow_large)
    return ValueDistribution.from_counts(params, "T", "empirical", counts)


def empirical_S_distribution(
    params: ParamSet, strategy: str = "naive", threads: int = 1, allow_large: bool = False
) -> ValueDistribution:
    """Multiset of S over all q^3 triples by enumeration ("naive" or "lemma2")."""
    if strategy == "naive":
        counts = s_naive_histogram(params, threads=threads, allow_large=allow_large)
    elif strategy == "lemma2":
        counts = s_lemma2_histogram(params, threads=threads, allow_large=allow_large)
    else:
        raise ParameterError(f"Unknown S strategy '{strategy}'; expected naive or lemma2")
    return ValueDistribution.from_counts(params, "S", "empirical", counts)


def census_indices(params: ParamSet) -> tuple[int, ...]:
    return (0, 2, 4, 6) if params.s_even else (1, 3)


def census_equations(params: ParamSet) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Linear system the census satisfies (rows over census_indices order)."""
    n, d = params.n, params.d
    q1 = _p(n) - 1
    if params.s_even:
        m, mu = params.m, params.mu
        assert m is not None and mu is not None
        matrix = [
            [Fraction(1), Fraction(1), Fraction(1), Fraction(1)],
            [Fraction(1), -_p(d), _p(2 * d), -_p(3 * d)],
            [Fraction(1), _p(2 * d), _p(4 * d), _p(6 * d)],
            [Fraction(1), -_p(3 * d), _p(6 * d), -_p(9 * d)],
        ]
        rhs = [
            _p(2 * n) - 1,
            mu * _p(m) * q1,
            _p(n) * (_p(d) + 1) * q1,
            mu * _p(m + 3 * d) * q1,
        ]
        return matrix, rhs
    matrix = [[Fraction(1), Fraction(1)], [Fraction(1), _p(2 * d)]]
    rhs = [_p(2 * n) - 1, _p(n - d) * (_p(d) + 1) * q1]
    return matrix, rhs


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rhs)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = next(i for i in range(col, size) if rows[i][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [x / lead for x in rows[col]]
        for i in range(size):
            if i != col and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[col])]
    return [rows[i][size] for i in range(size)]


def census_from_moments(params: ParamSet) -> RankCensus:
    """Solve the moment system for the rank census exactly.

    Raises:
        ClosedFormError: If a solution is not a nonnegative integer
    """
    matrix, rhs = census_equations(params)
    solution = _solve_exact(matrix, rhs)
    counts = {
        i: exact_count(value, f"n_{i}", params)
        for i, value in zip(census_indices(params), solution)
    }
    return RankCensus(params=params, counts=counts, origin="closed_form")


def census_satisfies_equations(census: RankCensus) -> bool:
    matrix, rhs = census_equations(census.params)
    values = [Fraction(census.n(i)) for i in census_indices(census.params)]
    if sum(census.counts.values()) != sum(values):
        return False
    return all(sum(a * x for a, x in zip(row, values)) == b for row, b in zip(matrix, rhs))


def rank_census(params: ParamSet, threads: int = 1, allow_large: bool = False) -> RankCensus:
    """Enumerate r_{alpha,beta} over all nonzero pairs and check the moment system.

    Raises:
        SizeGuardError: Beyond the census guard
        VerificationError: If the counts violate the moment system (non-degenerate params)
    """
    check_size_guard(get_size_guard("census", "rank"), params.n, allow_large=allow_large)
    logger.info("Rank census n=%d k=%d threads=%d", params.n, params.k, threads)
    kernels = kernel_census(params, threads)
    counts: Counter = Counter()
    for kd, count in kernels.items():
        if kd % params.d:
            raise VerificationError(
                f"Kernel dimension {kd} not a multiple of d", params=params.as_tuple()
            )
        counts[kd // params.d] += count
    census = RankCensus(params=params, counts=dict(sorted(counts.items())))
    if not census_satisfies_equations(census):
        if params.code_degenerate:
            logger.warning("Census for %s violates the moment system", params.label)
        else:
            raise VerificationError(
                f"Census {census.counts} violates the moment system", params=params.as_tuple()
            )
    return census


def signed_census(params: ParamSet, allow_large: bool = False) -> dict[tuple[int, int], int]:
    """Counts of nonzero pairs by (sign of T, i) with rank s - i; sign 0 for T = 0."""
    table = t_table(params, "walsh", allow_large=allow_large)
    signed: Counter = Counter()
    for alpha in range(params.q):
        i = params.s - batch_ranks(params, alpha)
        signs = np.sign(table[alpha])
        if alpha == 0:
            i, signs = i[1:], signs[1:]
        for (sg, ii), c in Counter(zip(signs.tolist(), i.tolist())).items():
            signed[(int(sg), int(ii))] += c
    return dict(sorted(signed.items()))


def s_from_census(params: ParamSet, census: RankCensus) -> ValueDistribution:
    """S multiset obtained by pushing each rank class through its gamma histogram."""
    totals: Counter = Counter({params.q: 1, 0: params.q - 1})
    for i, count in census.counts.items():
        for value, c in gamma_histogram(params, i * params.d).items():
            totals[value] += c * count
    return ValueDistribution.from_counts(
        params, "S", census.origin, totals, unreliable=params.code_degenerate
    )


# ==================== Comparison ====================


def expected_total(params: ParamSet, kind: Kind) -> Optional[int]:
    if kind == "T":
        return params.q**2
    if kind == "S":
        return params.q**3
    return None


def compare(closed: ValueDistribution, empirical: ValueDistribution) -> DistributionReport:
    """Diff two distributions of the same kind and parameters.

    Raises:
        ProvenanceMismatchError: Different (n, k) or different kinds
    """
    if closed.params.as_tuple() != empirical.params.as_tuple():
        raise ProvenanceMismatchError(
            f"Cannot compare {closed.params.label} with {empirical.params.label}"
        )
    if closed.kind != empirical.kind:
        raise ProvenanceMismatchError(f"Cannot compare {closed.kind} with {empirical.kind}")

    params = closed.params
    diffs = [
        (v, closed.get(v), empirical.get(v))
        for v in sorted(set(closed.entries) | set(empirical.entries))
        if closed.get(v) != empirical.get(v)
    ]
    checks = {"totals_match": closed.total == empirical.total}
    target = expected_total(params, closed.kind)
    if target is not None:
        checks["total_is_full_enumeration"] = empirical.total == target
    if closed.kind == "T":
        checks["first_moment"] = empirical.moment(1) == params.q**2

    if params.code_degenerate or closed.unreliable or empirical.unreliable:
        status: Status = "UNCERTIFIED"
        logger.warning("%s table for %s not certified (degenerate parameters)", closed.kind, params.label)
    elif diffs or not all(checks.values()):
        status = "FAIL"
    else:
        status = "PASS"
    return DistributionReport(
        params=params,
        kind=closed.kind,
        closed=closed,
        empirical=empirical,
        diffs=diffs,
        checks=checks,
        status=status,
    )
