"""
Unit Tests for Report Payloads and Serialization
"""

import json

import pytest
from pydantic import ValidationError

from kasami_welch.cyclic_codes import punctured_C1_weights, weight_distribution
from kasami_welch.distributions import (
    census_from_moments,
    compare,
    empirical_T_distribution,
    theorem1_table,
)
from kasami_welch.exp_sums import moment_check
from kasami_welch.reports import (
    EntryPayload,
    ParamSetPayload,
    ParamsPayload,
    census_payload,
    distribution_payload,
    moment_payload,
    report_payload,
    curve_csv,
    to_csv,
    to_json,
    weight_payload,
    weights_report_payload,
)
from kasami_welch.toolkit import CurveSample


class TestParamsPayload:
    """Test parameter payloads."""

    def test_short_form(self, params_8_1):
        assert ParamsPayload.of(params_8_1).model_dump() == {
            "n": 8, "k": 1, "d": 1, "s": 8, "mu": 1,
        }

    def test_full_form(self, params_5_1):
        payload = ParamSetPayload.of(params_5_1)
        assert payload.e1 == 9
        assert payload.m is None
        assert payload.sequence_valid
        assert not payload.code_degenerate

    def test_extra_fields_rejected(self):
        with pytest.raises(ValidationError):
            EntryPayload(value=1, count=2, weight=3)

    def test_frozen(self):
        entry = EntryPayload(value=1, count=2)
        with pytest.raises(ValidationError):
            entry.count = 5


class TestPayloadBuilders:
    """Test conversion of results into payloads."""

    def test_distribution(self, params_5_1):
        payload = distribution_payload(theorem1_table(params_5_1))
        assert payload.origin == "closed_form"
        assert [e.value for e in payload.entries] == [-8, 0, 8, 32]
        assert payload.total == 1024

    def test_weights_report_is_one_document(self, params_8_1):
        full = weight_distribution(params_8_1, "C1")
        punctured = punctured_C1_weights(params_8_1)
        data = json.loads(to_json(weights_report_payload(full, punctured)))
        assert list(data) == ["full", "punctured"]
        assert data["punctured"]["length"] == 85

    def test_weights_report_without_punctured(self, params_5_1):
        payload = weights_report_payload(weight_distribution(params_5_1, "C1"))
        assert payload.punctured is None

    def test_report(self, params_5_1):
        report = compare(theorem1_table(params_5_1), empirical_T_distribution(params_5_1))
        payload = report_payload(report)
        assert payload.status == "PASS"
        assert payload.diffs == []
        assert list(payload.checks) == sorted(payload.checks)

    def test_weights(self, params_5_1):
        payload = weight_payload(weight_distribution(params_5_1, "C1"))
        assert payload.code == "C1"
        assert payload.entries[0].weight == 0
        assert payload.total == 1024

    def test_census(self, params_5_1):
        payload = census_payload(census_from_moments(params_5_1))
        assert [(e.i, e.rank, e.count) for e in payload.entries] == [(1, 4, 868), (3, 2, 155)]

    def test_moment(self, params_5_1):
        payload = moment_payload(moment_check(params_5_1, 1, "T"))
        assert payload.passed
        assert payload.lhs == payload.rhs == 1024


class TestSerialization:
    """Test canonical JSON and CSV output."""

    def test_json_is_compact_with_newline(self, params_5_1):
        text = to_json(ParamsPayload.of(params_5_1))
        assert text == '{"n":5,"k":1,"d":1,"s":5,"mu":null}\n'

    def test_json_round_trips(self, params_5_1):
        text = to_json(distribution_payload(theorem1_table(params_5_1)))
        data = json.loads(text)
        assert data["entries"][0] == {"value": -8, "count": 186}
        assert list(data) == ["params", "origin", "entries", "total"]

    def test_csv(self):
        text = to_csv({8: 310, -8: 186}, key="value")
        assert text == "value,count\n-8,186\n8,310\n"

    def test_csv_weight_key(self):
        assert to_csv({0: 1}, key="weight").startswith("weight,count\n")

    def test_curve_csv(self):
        samples = [
            CurveSample(alpha=0, beta=0, brute=512, formula=512, character=512),
            CurveSample(alpha=3, beta=7, brute=32, formula=None, character=32),
        ]
        assert curve_csv(samples) == (
            "alpha,beta,brute,formula,character\n0,0,512,512,512\n3,7,32,,32\n"
        )
