"""
Report Payloads and Canonical Serialization

pydantic models for every emitted document. JSON is canonical (declaration
key order, entries ascending, no whitespace, trailing newline); CSV is a
"key,count" convenience view without the params header.
"""

import csv
import io
from collections.abc import Mapping
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

from kasami_welch.cyclic_codes import WeightDistribution
from kasami_welch.distributions import DistributionReport, Erratum, RankCensus, ValueDistribution
from kasami_welch.exp_sums import MomentReport
from kasami_welch.field_core import ParamSet
from kasami_welch.sequences import CorrelationDistribution
from kasami_welch.toolkit import CurveSample, VerificationSummary


class Payload(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ParamsPayload(Payload):
    n: int
    k: int
    d: int
    s: int
    mu: Optional[int]

    @classmethod
    def of(cls, params: ParamSet) -> "ParamsPayload":
        return cls(n=params.n, k=params.k, d=params.d, s=params.s, mu=params.mu)


class ParamSetPayload(Payload):
    """Everything derived from (n, k), for the params command."""

    n: int
    k: int
    d: int
    q0: int
    s: int
    d_prime: int
    m: Optional[int]
    mu: Optional[int]
    e1: int
    e2: int
    sequence_valid: bool
    code_degenerate: bool

    @classmethod
    def of(cls, params: ParamSet) -> "ParamSetPayload":
        return cls(
            n=params.n,
            k=params.k,
            d=params.d,
            q0=params.q0,
            s=params.s,
            d_prime=params.d_prime,
            m=params.m,
            mu=params.mu,
            e1=params.e1,
            e2=params.e2,
            sequence_valid=params.sequence_valid,
            code_degenerate=params.code_degenerate,
        )


class EntryPayload(Payload):
    value: int
    count: int


class WeightEntryPayload(Payload):
    weight: int
    count: int


class DistributionPayload(Payload):
    params: ParamsPayload
    origin: Literal["closed_form", "empirical"]
    entries: list[EntryPayload]
    total: int


class WeightPayload(Payload):
    params: ParamsPayload
    code: str
    length: int
    dimension: int
    entries: list[WeightEntryPayload]
    total: int


class WeightsReportPayload(Payload):
    full: WeightPayload
    punctured: Optional[WeightPayload]


class CorrelationPayload(Payload):
    params: ParamsPayload
    family_size: int
    entries: list[EntryPayload]
    total: int
    cmax: int


class DiffPayload(Payload):
    value: int
    closed: int
    empirical: int


class ErratumPayload(Payload):
    source: str
    value: int
    closed: Optional[int]
    empirical: Optional[int]
    note: str


class ReportPayload(Payload):
    params: ParamsPayload
    kind: str
    status: Literal["PASS", "FAIL", "UNCERTIFIED", "ERRATA"]
    closed: DistributionPayload
    empirical: DistributionPayload
    diffs: list[DiffPayload]
    checks: dict[str, bool]
    errata: list[ErratumPayload]


class CensusEntryPayload(Payload):
    i: int
    rank: int
    count: int


class CensusPayload(Payload):
    params: ParamsPayload
    origin: Literal["closed_form", "empirical"]
    entries: list[CensusEntryPayload]
    total: int


class MomentPayload(Payload):
    which: str
    order: int
    lhs: int
    rhs: Optional[int]
    counts: dict[str, int]
    targets: dict[str, int]
    passed: bool


class CurveSamplePayload(Payload):
    alpha: int
    beta: int
    brute: int
    formula: Optional[int]
    character: int


class CurvePayload(Payload):
    params: ParamsPayload
    samples: list[CurveSamplePayload]


class CheckPayload(Payload):
    name: str
    status: str
    detail: str


class VerificationPayload(Payload):
    params: ParamsPayload
    certified: bool
    exit_code: int
    checks: list[CheckPayload]


# ==================== Builders ====================


def _entries(entries: Mapping[int, int]) -> list[EntryPayload]:
    return [EntryPayload(value=v, count=c) for v, c in sorted(entries.items())]


def distribution_payload(dist: ValueDistribution) -> DistributionPayload:
    return DistributionPayload(
        params=ParamsPayload.of(dist.params),
        origin=dist.origin,
        entries=_entries(dist.entries),
        total=dist.total,
    )


def weight_payload(weights: WeightDistribution) -> WeightPayload:
    return WeightPayload(
        params=ParamsPayload.of(weights.params),
        code=weights.code,
        length=weights.length,
        dimension=weights.dimension,
        entries=[WeightEntryPayload(weight=w, count=c) for w, c in weights.entries.items()],
        total=weights.total,
    )


def weights_report_payload(
    full: WeightDistribution, punctured: Optional[WeightDistribution] = None
) -> WeightsReportPayload:
    return WeightsReportPayload(
        full=weight_payload(full),
        punctured=weight_payload(punctured) if punctured is not None else None,
    )


def correlation_payload(dist: CorrelationDistribution, cmax: int) -> CorrelationPayload:
    return CorrelationPayload(
        params=ParamsPayload.of(dist.params),
        family_size=dist.family_size,
        entries=_entries(dist.entries),
        total=dist.total,
        cmax=cmax,
    )


def erratum_payload(erratum: Erratum) -> ErratumPayload:
    return ErratumPayload(
        source=erratum.source,
        value=erratum.value,
        closed=erratum.closed,
        empirical=erratum.empirical,
        note=erratum.note,
    )


def report_payload(report: DistributionReport) -> ReportPayload:
    return ReportPayload(
        params=ParamsPayload.of(report.params),
        kind=report.kind,
        status=report.status,
        closed=distribution_payload(report.closed),
        empirical=distribution_payload(report.empirical),
        diffs=[DiffPayload(value=v, closed=c, empirical=e) for v, c, e in report.diffs],
        checks=dict(sorted(report.checks.items())),
        errata=[erratum_payload(e) for e in report.errata],
    )


def census_payload(census: RankCensus) -> CensusPayload:
    return CensusPayload(
        params=ParamsPayload.of(census.params),
        origin=census.origin,
        entries=[
            CensusEntryPayload(i=i, rank=census.params.s - i, count=c)
            for i, c in sorted(census.counts.items())
        ],
        total=census.total,
    )


def moment_payload(report: MomentReport) -> MomentPayload:
    return MomentPayload(
        which=report.which,
        order=report.order,
        lhs=report.lhs,
        rhs=report.rhs,
        counts=dict(sorted(report.counts.items())),
        targets=dict(sorted(report.targets.items())),
        passed=report.passed,
    )


def curve_payload(params: ParamSet, samples: list[CurveSample]) -> CurvePayload:
    return CurvePayload(
        params=ParamsPayload.of(params),
        samples=[
            CurveSamplePayload(
                alpha=s.alpha, beta=s.beta, brute=s.brute, formula=s.formula, character=s.character
            )
            for s in samples
        ],
    )


def verification_payload(summary: VerificationSummary) -> VerificationPayload:
    return VerificationPayload(
        params=ParamsPayload.of(summary.params),
        certified=summary.certified,
        exit_code=summary.exit_code,
        checks=[CheckPayload(name=c.name, status=c.status, detail=c.detail) for c in summary.checks],
    )


# ==================== Output ====================


def to_json(payload: BaseModel) -> str:
    return payload.model_dump_json() + "\n"


def to_csv(entries: Mapping[int, int], key: str = "value") -> str:
    """Rows "key,count" ascending by key, with a header line."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([key, "count"])
    for value, count in sorted(entries.items()):
        writer.writerow([value, count])
    return buffer.getvalue()


def curve_csv(samples: list[CurveSample]) -> str:
    """Rows "alpha,beta,brute,formula,character" in sample order; formula blank when n/d is odd."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["alpha", "beta", "brute", "formula", "character"])
    for s in samples:
        formula = "" if s.formula is None else s.formula
        writer.writerow([s.alpha, s.beta, s.brute, formula, s.character])
    return buffer.getvalue()
