"""
Sequence Family and Correlation Distribution

Purpose: Materialize the binary sequences of period 2^n - 1

    F1:           Tr(alpha pi^{l e1} + beta pi^{l e2} + pi^l)
    F2 (n/d odd): Tr(alpha pi^{l e1} + pi^{l e2})  and the singleton Tr(pi^{l e1})

and count their correlation values over all ordered pairs and shifts, either
by brute force (+-1 matrix products per shift) or through the exact T and S
histograms (every (pair, shift) class maps bijectively onto one slice of S or
T). The two strategies must agree; the printed multiplicity tables are
compared afterwards and disagreements become errata.
"""

import functools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal, Optional

import numpy as np

from kasami_welch.cyclic_codes import coefficient_words
from kasami_welch.distributions import (
    DistributionReport,
    Erratum,
    ValueDistribution,
    compare,
    exact_count,
)
from kasami_welch.errors import (
    ClosedFormError,
    ParameterError,
    SequenceParameterError,
    VerificationError,
)
from kasami_welch.exp_sums import (
    s_gamma_table,
    s_lemma2_histogram,
    s_naive,
    t_table,
    table_histogram,
)
from kasami_welch.field_core import FieldElement, ParamSet, field_for, mul, power, trace_sequence
from kasami_welch.guards import check_size_guard, get_size_guard
from kasami_welch.parallel import map_reduce_histograms, split_range

logger = logging.getLogger(__name__)

SeqKind = Literal["F1", "F2", "F2_singleton"]


@dataclass(frozen=True)
class SeqId:
    """One member of the family.

    F1 carries (alpha, beta); F2 carries alpha; the singleton carries nothing.
    """

    kind: SeqKind
    alpha: FieldElement = 0
    beta: FieldElement = 0

    @property
    def coefficients(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        """Coefficients of (x^{e1}, x^{e2}, x) in the defining trace."""
        if self.kind == "F1":
            return (self.alpha, self.beta, 1)
        if self.kind == "F2":
            return (self.alpha, 1, 0)
        return (1, 0, 0)


@dataclass
class CorrelationDistribution:
    """Correlation value -> count over all ordered pairs and shifts 0..q-2."""

    params: ParamSet
    family_size: int
    entries: dict[int, int]
    strategy: str

    def __post_init__(self) -> None:
        self.entries = {v: c for v, c in sorted(self.entries.items()) if c}

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    @property
    def expected_total(self) -> int:
        return self.family_size**2 * (self.params.q - 1)

    def as_value_distribution(self) -> ValueDistribution:
        return ValueDistribution.from_counts(
            self.params, "correlation", "empirical", self.entries
        )


@dataclass
class CorrelationBookkeeping:
    """Value histograms (keyed by value - 1) behind the reduced count.

    s: S over all triples; s1: S with gamma = 1; t: T over all pairs;
    t0: T(alpha, 0); t1: T(alpha, 1).
    """

    params: ParamSet
    s: Counter
    s1: Counter
    t: Counter
    t0: Counter
    t1: Counter


@dataclass(frozen=True)
class Table1Row:
    """Reference row for a low-correlation family (static metadata)."""

    name: str
    parity: Literal["odd", "even"]
    period: Callable[[int], int]
    family_size: Callable[..., int]
    cmax: Callable[..., int]
    condition: str = ""


TABLE1_REFERENCE: tuple[Table1Row, ...] = (
    Table1Row(
        "Gold", "odd", lambda n: (1 << n) - 1, lambda n: (1 << n) + 1,
        lambda n: (1 << ((n + 1) // 2)) + 1,
    ),
    Table1Row(
        "Rothaus", "even", lambda n: (1 << n) - 1, lambda n: (1 << (2 * n)) + (1 << n) + 1,
        lambda n: (1 << ((n + 3) // 2)) + 1,
    ),
    Table1Row(
        "Yu-Gong", "odd", lambda n: (1 << n) - 1, lambda n, rho=2: 1 << (n * rho),
        lambda n, rho=2: (1 << ((n + 2 * rho - 1) // 2)) + 1, condition="1 < rho <= (n-1)/2",
    ),
    Table1Row(
        "Generalized Kasami (large set)", "even", lambda n: (1 << n) - 1,
        lambda n: (1 << (3 * n // 2)) + 1, lambda n: 1 << ((n + 2) // 2),
    ),
    Table1Row(
        "This family, d = 1", "odd", lambda n: (1 << n) - 1,
        lambda n: (1 << (2 * n)) + (1 << n) + 1, lambda n: (1 << ((n + 3) // 2)) + 1,
    ),
)


# ==================== Family ====================


def _require_sequences(params: ParamSet) -> None:
    if not params.sequence_valid:
        raise SequenceParameterError(
            "Sequence family needs k not in {n/6, 5n/6}", params=params.as_tuple()
        )


def family_size(params: ParamSet) -> int:
    q = params.q
    return q * q if params.s_even else q * q + q + 1


def family(params: ParamSet) -> list[SeqId]:
    """F1, plus F2 and its singleton when n/d is odd.

    Raises:
        SequenceParameterError: k in {n/6, 5n/6}
    """
    _require_sequences(params)
    q = params.q
    ids = [SeqId("F1", a, b) for a in range(q) for b in range(q)]
    if not params.s_even:
        ids += [SeqId("F2", a) for a in range(q)]
        ids.append(SeqId("F2_singleton"))
    return ids


def _check_kind(params: ParamSet, seq: SeqId) -> None:
    if seq.kind != "F1" and params.s_even:
        raise SequenceParameterError(
            "F2 sequences exist only for n/d odd", params=params.as_tuple()
        )


def sequence_bits(params: ParamSet, seq: SeqId) -> np.ndarray:
    """Bits for lambda = 0 .. q-2 (uint8)."""
    _check_kind(params, seq)
    return trace_sequence(field_for(params), seq.coefficients, (params.e1, params.e2, 1))


# ==================== Single Correlations ====================


def reduced_coefficients(
    params: ParamSet, a: SeqId, b: SeqId, tau: int
) -> tuple[FieldElement, FieldElement, FieldElement]:
    """(alpha', beta', gamma') with correlation = S(alpha', beta', gamma') - 1."""
    f = field_for(params)
    a1, b1, c1 = a.coefficients
    a2, b2, c2 = b.coefficients
    return (
        a1 ^ mul(f, a2, power(f, f.pi, tau * params.e1)),
        b1 ^ mul(f, b2, power(f, f.pi, tau * params.e2)),
        c1 ^ mul(f, c2, power(f, f.pi, tau)),
    )


def correlation(params: ParamSet, a: SeqId, b: SeqId, tau: int) -> int:
    """sum_l (-1)^{a(l) + b(l + tau)}, checked against its exponential-sum form.

    Raises:
        ParameterError: tau outside [0, q-2]
        VerificationError: If the bit-level sum and the reduced form disagree
    """
    if not 0 <= tau <= params.q - 2:
        raise ParameterError(f"Shift {tau} outside [0, {params.q - 2}]", params=params.as_tuple())
    bits_a = sequence_bits(params, a)
    bits_b = np.roll(sequence_bits(params, b), -tau)
    direct = int(params.q - 1 - 2 * np.count_nonzero(bits_a ^ bits_b))
    reduced = s_naive(params, *reduced_coefficients(params, a, b, tau)).value - 1
    if direct != reduced:
        raise VerificationError(
            f"Correlation {a} x {b} at tau={tau}: direct {direct} != reduced {reduced}",
            params=params.as_tuple(),
        )
    return direct


# ==================== Distributions ====================


@functools.lru_cache(maxsize=2)
def _signed_family(params: ParamSet) -> np.ndarray:
    """family_size x (q-1) float64 matrix of (-1)^bit, rows in family() order."""
    a_words = coefficient_words(params, params.e1)
    b_words = coefficient_words(params, params.e2)
    linear = coefficient_words(params, 1)[1]
    rows = (a_words[:, None, :] ^ b_words[None, :, :] ^ linear).reshape(params.q**2, -1)
    if not params.s_even:
        rows = np.concatenate([rows, a_words ^ b_words[1], a_words[1][None, :]])
    signed = 1.0 - 2.0 * rows.astype(np.float64)
    signed.setflags(write=False)
    return signed


def brute_correlation_chunk(params: ParamSet, bounds: tuple[int, int]) -> Counter:
    """Correlation histogram over all ordered pairs for shifts in [start, stop)."""
    signed = _signed_family(params)
    counts: Counter = Counter()
    for tau in range(*bounds):
        values = np.rint(signed @ np.roll(signed, -tau, axis=1).T).astype(np.int64)
        counts.update(table_histogram(values))
    return counts


def _keyed_by_correlation(histogram: Counter) -> Counter:
    return Counter({v - 1: c for v, c in histogram.items()})


def bookkeeping(
    params: ParamSet, threads: int = 1, allow_large: bool = False
) -> CorrelationBookkeeping:
    """Exact histograms of S, S(., ., 1), T, T(., 0), T(., 1), keyed by value - 1.

    Raises:
        VerificationError: If the gamma = 1 slice differs from (s - t) / (q - 1)
    """
    table = t_table(params, "walsh", allow_large=allow_large)
    s = _keyed_by_correlation(s_lemma2_histogram(params, threads=threads, allow_large=allow_large))
    s1 = _keyed_by_correlation(table_histogram(s_gamma_table(params, 1)))
    t = _keyed_by_correlation(table_histogram(table))
    record = CorrelationBookkeeping(
        params=params,
        s=s,
        s1=s1,
        t=t,
        t0=_keyed_by_correlation(table_histogram(table[:, 0])),
        t1=_keyed_by_correlation(table_histogram(table[:, 1])),
    )
    order = params.q - 1
    for kappa in set(s) | set(t) | set(s1):
        if (s[kappa] - t[kappa]) != order * s1[kappa]:
            raise VerificationError(
                f"gamma = 1 slice at {kappa} is not (s - t) / (q - 1)", params=params.as_tuple()
            )
    return record


def reduced_histogram(params: ParamSet, books: CorrelationBookkeeping) -> Counter:
    """Correlation histogram from the bookkeeping histograms."""
    q = params.q
    counts: Counter = Counter()
    # F1 x F1: every shift tau covers gamma' = 1 + pi^tau, i.e. all gamma except 1
    for kappa, c in books.s.items():
        counts[kappa] += q * q * (c - books.s1[kappa])
    if params.s_even:
        return +counts
    # F1 x F2 and F2 x F1 (singleton included): one gamma = 1 slice per shift
    for kappa, c in books.s1.items():
        counts[kappa] += 2 * (q + 1) * (q - 1) * c
    # F2 x F2 without the singleton, then singleton crosses, then singleton with itself
    for kappa, c in books.t.items():
        counts[kappa] += q * (c - books.t1[kappa])
    for kappa, c in books.t1.items():
        counts[kappa] += 2 * (q - 1) * c
    t0 = Counter(books.t0)
    t0[t_value_at(params, 1, 0) - 1] -= 1
    counts.update(t0)
    return +counts


def t_value_at(params: ParamSet, alpha: FieldElement, beta: FieldElement) -> int:
    return int(t_table(params, "walsh")[alpha, beta])


def correlation_distribution(
    params: ParamSet, strategy: str = "reduced", threads: int = 1, allow_large: bool = False
) -> CorrelationDistribution:
    """Histogram of correlation values over all ordered pairs and all shifts.

    Raises:
        SequenceParameterError: k in {n/6, 5n/6}
        SizeGuardError: Beyond the strategy's guard
    """
    _require_sequences(params)
    size = family_size(params)
    if strategy == "brute":
        work = size * size * (params.q - 1)
        check_size_guard(get_size_guard("corr", "brute"), params.n, work, allow_large)
        logger.info("Brute correlations n=%d k=%d family=%d work=%d", params.n, params.k, size, work)
        worker = functools.partial(brute_correlation_chunk, params)
        counts = map_reduce_histograms(worker, split_range(params.q - 1, 4 * max(1, threads)), threads)
    elif strategy == "reduced":
        check_size_guard(get_size_guard("corr", "reduced"), params.n, allow_large=allow_large)
        counts = reduced_histogram(params, bookkeeping(params, threads, allow_large))
    else:
        raise ParameterError(f"Unknown correlation strategy '{strategy}'; expected brute or reduced")

    dist = CorrelationDistribution(params, size, dict(counts), strategy)
    if dist.total != dist.expected_total:
        raise VerificationError(
            f"Correlation total {dist.total} != {dist.expected_total}", params=params.as_tuple()
        )
    return dist


def cmax(
    params: ParamSet,
    distribution: Optional[CorrelationDistribution] = None,
    strategy: str = "reduced",
    threads: int = 1,
) -> int:
    """Largest |correlation| once each sequence's own shift-0 term is removed."""
    if distribution is None:
        distribution = correlation_distribution(params, strategy, threads)
    entries = dict(distribution.entries)
    trivial = params.q - 1
    entries[trivial] = entries.get(trivial, 0) - distribution.family_size
    return max((abs(v) for v, c in entries.items() if c > 0), default=0)


# ==================== Closed-Form Table ====================


def _p(e: int) -> Fraction:
    return Fraction(2) ** e


def _odd_rows(params: ParamSet) -> list[tuple[int, Fraction, str]]:
    n, d = params.n, params.d
    tail = _p(3 * n) - _p(n + 1)
    x = _p(n + 2 * d) - _p(n) - _p(n - d) + _p(2 * d)
    den = _p(2 * d) - 1
    a, b = (n + d) // 2, (n + 3 * d) // 2
    ea, eb = (n - d - 2) // 2, (n - 3 * d - 2) // 2
    zero = (
        _p(2 * n) - _p(2 * n - d) + _p(2 * n - 4 * d) + _p(n) - _p(n - d) - _p(n - 3 * d) + 1
    ) * tail + _p(n)
    return [
        ((1 << a) - 1, (_p(n - d - 1) + _p(ea)) * x * tail / den, "+2^{(n+d)/2}-1"),
        (-(1 << a) - 1, (_p(n - d - 1) - _p(ea)) * x * tail / den, "-2^{(n+d)/2}-1"),
        ((1 << b) - 1, (_p(n - 3 * d - 1) + _p(eb)) * (_p(n - d) - 1) * tail / den, "+2^{(n+3d)/2}-1"),
        (-(1 << b) - 1, (_p(n - 3 * d - 1) - _p(eb)) * (_p(n - d) - 1) * tail / den, "-2^{(n+3d)/2}-1"),
        (-1, zero, "-1"),
        ((1 << n) - 1, _p(2 * n) + _p(n), "2^n-1"),
    ]


def _even_rows(params: ParamSet) -> list[tuple[int, Fraction, str]]:
    n, d = params.n, params.d
    m, mu = params.m, params.mu
    assert m is not None and mu is not None
    q2, qm2 = _p(2 * n), _p(n) - 2
    da = (_p(d) + 1) * (_p(2 * d) - 1) * (_p(3 * d) + 1)
    db = (_p(d) + 1) ** 2 * (_p(2 * d) - 1)
    dc = (_p(d) + 1) ** 3 * (_p(d) - 1)
    a = _p(n + 6 * d) - _p(n + 4 * d) - _p(n + d) + mu * (_p(m + 5 * d) - _p(m + 4 * d)) + _p(6 * d)
    b = _p(n + 3 * d) + _p(n + 2 * d) - _p(n) - _p(n - d) - _p(n - 2 * d) - mu * (_p(m + 3 * d) - _p(m)) + _p(3 * d)
    c = (_p(m - d) + mu) * (_p(m + d) + _p(m) - _p(m - 2 * d) - mu * _p(d))
    e = (_p(m - 2 * d) - mu) * (_p(m - d) + mu)

    def big(j: int, sign: int) -> Fraction:
        return (
            _p(2 * n - 2 * j * d - 1) + sign * _p(3 * m - j * d - 1) - _p(n - 2 * j * d)
            - sign * _p(m - j * d) + 1
        )

    def small(j: int, sign: int) -> Fraction:
        return (_p(n - 2 * j * d - 1) + sign * _p(m - j * d - 1)) * qm2

    v = [1 << (m + j * d) for j in range(4)]
    zero_inner = (
        _p(2 * n) + _p(2 * n - 9 * d)
        - mu * (_p(3 * m) - _p(3 * m - d) - _p(3 * m - 3 * d) + _p(3 * m - 5 * d) + _p(3 * m - 7 * d) - _p(3 * m - 8 * d))
        + _p(n) - _p(n - d) - _p(n - 4 * d) - _p(n - 6 * d) + _p(d) + 1
    )
    return [
        (mu * v[0] - 1, q2 * a * big(0, mu) / da, "mu 2^m-1"),
        (-mu * v[0] - 1, q2 * small(0, -mu) * a / da, "-mu 2^m-1"),
        (mu * v[1] - 1, q2 * small(1, mu) * b / db, "mu 2^{m+d}-1"),
        (-mu * v[1] - 1, q2 * b * big(1, -mu) / db, "-mu 2^{m+d}-1"),
        (mu * v[2] - 1, q2 * c * big(2, mu) / dc, "mu 2^{m+2d}-1"),
        (-mu * v[2] - 1, q2 * c * small(2, -mu) / dc, "-mu 2^{m+2d}-1"),
        (mu * v[3] - 1, q2 * e * small(3, mu) / da, "mu 2^{m+3d}-1"),
        (-mu * v[3] - 1, q2 * e * big(3, -1) / da, "-mu 2^{m+3d}-1"),
        (-1, q2 * qm2 * zero_inner / (_p(d) + 1), "-1"),
        ((1 << n) - 1, q2, "2^n-1"),
    ]


def theorem3_table(params: ParamSet) -> tuple[ValueDistribution, list[Erratum]]:
    """Closed-form correlation multiplicities (n/d odd, n/d = 0 mod 4, n/d = 2 mod 4).

    Rows that do not evaluate to a nonnegative integer are left out and
    returned as errata.
    """
    _require_sequences(params)
    rows = _even_rows(params) if params.s_even else _odd_rows(params)
    entries: Counter = Counter()
    errata: list[Erratum] = []
    for value, count, label in rows:
        try:
            entries[value] += exact_count(count, f"correlation row {label}", params)
        except ClosedFormError as e:
            logger.warning("Dropping correlation row %s: %s", label, e.message)
            errata.append(Erratum("correlation table", value, None, None, e.message))
    table = ValueDistribution.from_counts(
        params, "correlation", "closed_form", entries, unreliable=params.code_degenerate
    )
    return table, errata


def compare_correlations(
    params: ParamSet, empirical: CorrelationDistribution
) -> DistributionReport:
    """Diff the closed-form table against an exact distribution.

    Row mismatches become errata; the report FAILs only if the empirical
    distribution itself is incomplete.
    """
    closed, errata = theorem3_table(params)
    report = compare(closed, empirical.as_value_distribution())
    report.checks.pop("totals_match", None)
    report.checks["total_is_full_enumeration"] = empirical.total == empirical.expected_total
    report.checks["autocorrelations_present"] = (
        empirical.entries.get(params.q - 1, 0) >= empirical.family_size
    )
    for value, closed_count, empirical_count in report.diffs:
        logger.warning(
            "Correlation %d: table %d, enumerated %d", value, closed_count, empirical_count
        )
        errata.append(
            Erratum("correlation table", value, closed_count, empirical_count, "row mismatch")
        )
    report.errata = errata
    if report.status != "UNCERTIFIED":
        if not all(report.checks.values()):
            report.status = "FAIL"
        elif errata:
            report.status = "ERRATA"
        else:
            report.status = "PASS"
    return report
