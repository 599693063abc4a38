"""
Kasami-Welch Toolkit

Purpose: One object per parameter set exposing every table, enumeration and
check with a strategy keyword, plus the full verification run.

Usage Examples:
    # Approach 1: parameter string (quick)
    kit = Toolkit("5/1")
    report = kit.t_report("naive")
    print(report.status)

    # Approach 2: pre-validated parameters
    params = validate_params(8, 1)
    kit = Toolkit(params=params, threads=8)
    summary = kit.verify()
    raise SystemExit(summary.exit_code)
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from kasami_welch.cyclic_codes import (
    WeightDistribution,
    punctured_C1_weights,
    weight_distribution,
    weight_table_rows,
)
from kasami_welch.distributions import (
    DistributionReport,
    RankCensus,
    ValueDistribution,
    census_from_moments,
    compare,
    empirical_S_distribution,
    empirical_T_distribution,
    rank_census,
    theorem1_table,
    theorem2_table,
)
from kasami_welch.errors import (
    ClosedFormError,
    KasamiWelchError,
    ParameterError,
    SizeGuardError,
)
from kasami_welch.exp_sums import (
    MomentReport,
    artin_schreier_count,
    moment_check,
    s_gamma_table,
    t_table,
    table_histogram,
)
from kasami_welch.field_core import FieldSpec, ParamSet, field_for, validate_params
from kasami_welch.sequences import (
    TABLE1_REFERENCE,
    CorrelationDistribution,
    cmax,
    compare_correlations,
    correlation_distribution,
)

logger = logging.getLogger(__name__)

CheckStatus = str  # PASS | FAIL | UNCERTIFIED | ERRATA | SKIPPED


@dataclass(frozen=True)
class CurveSample:
    alpha: int
    beta: int
    brute: int
    formula: Optional[int]
    character: int


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass
class VerificationSummary:
    """Outcome of Toolkit.verify().

    Attributes:
        params: Parameter set
        checks: One entry per check, in run order
    """

    params: ParamSet
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return not self.params.code_degenerate

    @property
    def exit_code(self) -> int:
        bad = {"FAIL", "UNCERTIFIED"}
        if not self.certified or any(c.status in bad for c in self.checks):
            return 1
        return 0

    def status_of(self, name: str) -> Optional[CheckStatus]:
        return next((c.status for c in self.checks if c.name == name), None)


class Toolkit:
    """Exact tables and checks for one (n, k).

    Supports two initialization patterns:
    1. Parameter string: "n/k" (e.g., "8/1")
    2. ParamSet: a validated parameter set

    Attributes:
        params: Validated parameters
        field: The field GF(2^n)
        threads: Worker processes for enumerations
        allow_large: Bypass size guards
    """

    def __init__(
        self,
        spec: Optional[str] = None,
        params: Optional[ParamSet] = None,
        threads: int = 1,
        allow_large: bool = False,
    ) -> None:
        """Initialize the toolkit.

        Raises:
            ParameterError: If neither spec nor params is given, or spec is malformed
        """
        if params is not None:
            self.params = params
        elif spec is not None:
            self.params = self._params_from_string(spec)
        else:
            raise ParameterError("Must specify either 'spec' or 'params'")
        self.threads = max(1, threads)
        self.allow_large = allow_large
        self.field: FieldSpec = field_for(self.params)

    @staticmethod
    def _params_from_string(spec: str) -> ParamSet:
        if "/" not in spec:
            raise ParameterError(
                f"Invalid parameter string '{spec}'. Expected format: 'n/k' (e.g., '8/1')"
            )
        n_text, k_text = spec.split("/", 1)
        try:
            n, k = int(n_text), int(k_text)
        except ValueError:
            raise ParameterError(f"Non-integer parameter string '{spec}'") from None
        return validate_params(n, k)

    def __repr__(self) -> str:
        return f"Toolkit(params={self.params.label}, threads={self.threads})"

    # ==================== Distributions ====================

    def t_distribution(self, strategy: str = "naive") -> ValueDistribution:
        return empirical_T_distribution(self.params, strategy, self.threads, self.allow_large)

    def t_report(self, strategy: str = "naive") -> DistributionReport:
        return compare(theorem1_table(self.params), self.t_distribution(strategy))

    def s_distribution(self, strategy: str = "lemma2") -> ValueDistribution:
        return empirical_S_distribution(self.params, strategy, self.threads, self.allow_large)

    def s_report(self, strategy: str = "lemma2") -> DistributionReport:
        return compare(theorem2_table(self.params), self.s_distribution(strategy))

    def census(self) -> RankCensus:
        return rank_census(self.params, self.threads, self.allow_large)

    def moments(self) -> list[MomentReport]:
        """T orders 1-3 and the third S moment."""
        reports = [
            moment_check(self.params, order, "T", allow_large=self.allow_large)
            for order in (1, 2, 3)
        ]
        s_strategy = "naive" if self.params.n <= 6 else "lemma2"
        reports.append(
            moment_check(
                self.params, 3, "S", s_strategy, threads=self.threads, allow_large=self.allow_large
            )
        )
        return reports

    # ==================== Codes and Sequences ====================

    def weights(self, code: str = "C1", strategy: str = "via_sums") -> WeightDistribution:
        return weight_distribution(
            self.params, code, strategy, self.threads, self.allow_large  # type: ignore[arg-type]
        )

    def punctured_weights(self, strategy: str = "reindex") -> WeightDistribution:
        return punctured_C1_weights(self.params, strategy, self.allow_large)

    def correlations(self, strategy: str = "reduced") -> CorrelationDistribution:
        return correlation_distribution(self.params, strategy, self.threads, self.allow_large)

    def correlation_report(self, strategy: str = "reduced") -> DistributionReport:
        return compare_correlations(self.params, self.correlations(strategy))

    def curve_samples(self, count: int = 200, seed: int = 0) -> list[CurveSample]:
        """Point counts for `count` random nonzero pairs, plus the (0, 0) curve first."""
        rng = random.Random(seed)
        q = self.params.q
        pairs = [(0, 0)]
        while len(pairs) < count + 1:
            a, b = rng.randrange(q), rng.randrange(q)
            if a or b:
                pairs.append((a, b))
        samples = []
        for a, b in pairs:
            formula = (
                artin_schreier_count(self.params, a, b, "formula") if self.params.s_even else None
            )
            samples.append(
                CurveSample(
                    alpha=a,
                    beta=b,
                    brute=artin_schreier_count(self.params, a, b, "brute", self.allow_large),
                    formula=formula,
                    character=artin_schreier_count(self.params, a, b, "character"),
                )
            )
        return samples

    # ==================== Verification ====================

    def _run(self, summary: VerificationSummary, name: str, check: Callable[[], CheckResult]) -> None:
        try:
            result = check()
        except SizeGuardError as e:
            result = CheckResult(name, "SKIPPED", e.message)
        except ClosedFormError as e:
            status = "UNCERTIFIED" if self.params.code_degenerate else "FAIL"
            result = CheckResult(name, status, e.message)
        except KasamiWelchError as e:
            result = CheckResult(name, "FAIL", str(e))
        logger.info("%s: %s %s", name, result.status, result.detail)
        summary.checks.append(result)

    @staticmethod
    def _from_report(name: str, report: DistributionReport) -> CheckResult:
        detail = f"{len(report.diffs)} diffs" if report.diffs else ""
        if report.errata:
            detail = f"{len(report.errata)} errata"
        return CheckResult(name, report.status, detail)

    @staticmethod
    def _verdict(name: str, ok: bool, detail: str = "") -> CheckResult:
        return CheckResult(name, "PASS" if ok else "FAIL", detail)

    def _check_t(self) -> CheckResult:
        strategy = "naive" if self.params.n <= 9 else "rank_fast"
        result = self._from_report("T distribution", self.t_report(strategy))
        return CheckResult(result.name, result.status, f"{strategy} {result.detail}".strip())

    def _check_sign_law(self) -> CheckResult:
        p = self.params
        if not p.s_even:
            return CheckResult("sign law", "SKIPPED", "n/d odd")
        if p.code_degenerate:
            return CheckResult("sign law", "UNCERTIFIED", "degenerate parameters")
        exact = t_table(p, "walsh", self.allow_large)
        by_rank = t_table(p, "rank_fast", self.allow_large)
        nonzero = np.ones_like(exact, dtype=bool)
        nonzero[0, 0] = False
        congruent = bool(np.all((exact[nonzero] - 1) % ((1 << p.d) + 1) == 0))
        return self._verdict("sign law", congruent and np.array_equal(exact, by_rank))

    def _check_moments(self) -> CheckResult:
        failed = [f"{r.which}{r.order}" for r in self.moments() if not r.passed]
        if failed and self.params.code_degenerate:
            return CheckResult("moments", "UNCERTIFIED", ", ".join(failed))
        return self._verdict("moments", not failed, ", ".join(failed))

    def _check_s(self) -> CheckResult:
        report = self.s_report("lemma2")
        if self.params.n <= 6 and report.status == "PASS":
            naive = self.s_distribution("naive")
            if naive.entries != report.empirical.entries:
                return CheckResult("S distribution", "FAIL", "naive != lemma2")
        return self._from_report("S distribution", report)

    def _check_gamma_slices(self) -> CheckResult:
        p = self.params
        gammas = list(range(1, p.q))
        if len(gammas) > 32:
            gammas = random.Random(0).sample(gammas, 32)
        reference = table_histogram(s_gamma_table(p, 1))
        same = all(table_histogram(s_gamma_table(p, g)) == reference for g in gammas)
        return self._verdict("gamma slices", same, f"{len(gammas)} slices")

    def _check_census(self) -> CheckResult:
        census = self.census()
        if self.params.code_degenerate:
            return CheckResult("rank census", "UNCERTIFIED", str(census.counts))
        solved = census_from_moments(self.params)
        return self._verdict("rank census", census.counts == solved.counts, str(census.counts))

    def _check_curves(self) -> CheckResult:
        samples = self.curve_samples(count=20, seed=0)
        bad = [
            (s.alpha, s.beta)
            for s in samples
            if s.brute != s.character or (s.formula is not None and s.brute != s.formula)
        ]
        return self._verdict("curve counts", not bad, f"mismatches at {bad}" if bad else "")

    def _check_weights(self, code: str) -> CheckResult:
        name = f"weights {code}"
        direct = self.weights(code, "direct")
        via_sums = self.weights(code, "via_sums")
        if self.params.code_degenerate:
            return CheckResult(name, "UNCERTIFIED", f"dimension {direct.dimension}")
        table: dict[int, int] = {}
        for _, weight, count in weight_table_rows(self.params, code):  # type: ignore[arg-type]
            table[weight] = table.get(weight, 0) + count
        ok = direct.entries == via_sums.entries == table and direct.get(0) == 1
        return self._verdict(name, ok, f"length {direct.length}, dimension {direct.dimension}")

    def _check_punctured(self) -> CheckResult:
        if not self.params.s_even:
            return CheckResult("punctured C1", "SKIPPED", "n/d odd")
        reindexed = self.punctured_weights("reindex")
        direct = self.punctured_weights("direct")
        return self._verdict(
            "punctured C1", reindexed.entries == direct.entries, f"length {direct.length}"
        )

    def _check_correlations(self) -> CheckResult:
        p = self.params
        if not p.sequence_valid:
            return CheckResult("correlations", "SKIPPED", "k in {n/6, 5n/6}")
        reduced = self.correlations("reduced")
        try:
            brute = self.correlations("brute")
        except SizeGuardError:
            brute = None
        if brute is not None and brute.entries != reduced.entries:
            return CheckResult("correlations", "FAIL", "brute != reduced")
        report = compare_correlations(p, reduced)
        value = cmax(p, reduced)
        detail = f"cmax {value}"
        if p.d == 1 and p.n % 2 == 1:
            expected = TABLE1_REFERENCE[-1].cmax(p.n)
            if value != expected:
                return CheckResult("correlations", "FAIL", f"cmax {value} != {expected}")
        if report.errata:
            detail += f", {len(report.errata)} errata"
        return CheckResult("correlations", report.status, detail)

    def verify(self) -> VerificationSummary:
        """Run every check that fits the size guards.

        Checks beyond a guard are SKIPPED; degenerate parameters report
        UNCERTIFIED table checks and never certify.
        """
        summary = VerificationSummary(params=self.params)
        logger.info("Verifying n=%d k=%d", self.params.n, self.params.k)
        self._run(summary, "T distribution", self._check_t)
        self._run(summary, "sign law", self._check_sign_law)
        self._run(summary, "moments", self._check_moments)
        self._run(summary, "S distribution", self._check_s)
        self._run(summary, "gamma slices", self._check_gamma_slices)
        self._run(summary, "rank census", self._check_census)
        self._run(summary, "curve counts", self._check_curves)
        self._run(summary, "weights C1", lambda: self._check_weights("C1"))
        self._run(summary, "weights C2", lambda: self._check_weights("C2"))
        self._run(summary, "punctured C1", self._check_punctured)
        self._run(summary, "correlations", self._check_correlations)
        if not summary.certified:
            logger.warning("Parameters %s are code-degenerate; tables not certified", self.params.label)
        return summary
