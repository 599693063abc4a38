"""
Unit Tests for Closed-Form Tables, Rank Census and Comparison
"""

from fractions import Fraction

import pytest

from kasami_welch.distributions import (
    RankCensus,
    ValueDistribution,
    census_from_moments,
    census_satisfies_equations,
    compare,
    empirical_S_distribution,
    empirical_T_distribution,
    exact_count,
    expected_total,
    rank_census,
    s_from_census,
    signed_census,
    theorem1_table,
    theorem2_table,
    xi,
)
from kasami_welch.errors import ClosedFormError, ParameterError, ProvenanceMismatchError
from kasami_welch.field_core import validate_params

T_5_1 = {-8: 186, 0: 527, 8: 310, 32: 1}
T_8_1 = {-128: 85, -32: 23800, 16: 38080, 64: 3570, 256: 1}
S_5_1 = {-16: 155, -8: 5208, 0: 18259, 8: 8680, 16: 465, 32: 1}


class TestValueDistribution:
    """Test the exact multiset type."""

    def test_sorted_and_zero_counts_dropped(self, params_5_1):
        dist = ValueDistribution(params_5_1, "T", "empirical", {8: 2, -8: 1, 0: 0})
        assert list(dist.entries) == [-8, 8]
        assert dist.total == 3
        assert dist.get(0) == 0

    def test_negative_count_raises(self, params_5_1):
        with pytest.raises(ClosedFormError, match="Negative"):
            ValueDistribution(params_5_1, "T", "closed_form", {8: -1})

    def test_moment(self, params_5_1):
        dist = ValueDistribution.from_counts(params_5_1, "T", "closed_form", T_5_1)
        assert dist.moment(1) == 1024
        assert dist.items()[0] == (-8, 186)


class TestExactCount:
    """Test the integrality checks."""

    def test_integer_passes(self, params_5_1):
        assert exact_count(Fraction(12, 3), "x", params_5_1) == 4

    def test_fraction_raises(self, params_5_1):
        with pytest.raises(ClosedFormError, match="not an integer"):
            exact_count(Fraction(3, 2), "x", params_5_1)

    def test_negative_raises(self, params_5_1):
        with pytest.raises(ClosedFormError, match="negative"):
            exact_count(Fraction(-2), "x", params_5_1)


class TestClosedTables:
    """Test the closed-form tables against known multisets."""

    def test_theorem1_odd(self, params_5_1):
        table = theorem1_table(params_5_1)
        assert table.entries == T_5_1
        assert table.origin == "closed_form"
        assert not table.unreliable

    def test_theorem1_even(self, params_8_1):
        assert theorem1_table(params_8_1).entries == T_8_1

    @pytest.mark.parametrize("n,k", [(7, 1), (7, 2), (9, 1), (10, 1), (11, 3)])
    def test_theorem1_totals(self, n, k):
        params = validate_params(n, k)
        table = theorem1_table(params)
        assert table.total == params.q**2
        assert table.moment(1) == params.q**2

    def test_xi(self, params_5_1, params_8_1):
        assert xi(params_5_1) == 18259
        assert xi(params_8_1) == 5448075

    def test_theorem2_odd(self, params_5_1):
        assert theorem2_table(params_5_1).entries == S_5_1

    def test_theorem2_even_total(self, params_8_1):
        table = theorem2_table(params_8_1)
        assert table.total == 2**24
        assert table.get(0) == 5448075


class TestEmpirical:
    """Test enumeration wrappers."""

    @pytest.mark.parametrize("strategy", ["naive", "walsh", "fast", "rank_fast"])
    def test_t_strategies(self, params_5_1, strategy):
        dist = empirical_T_distribution(params_5_1, strategy)
        assert dist.entries == T_5_1
        assert dist.origin == "empirical"

    def test_s_unknown_strategy(self, params_5_1):
        with pytest.raises(ParameterError, match="Unknown S strategy"):
            empirical_S_distribution(params_5_1, "walsh")

    @pytest.mark.parametrize("strategy", ["naive", "lemma2"])
    def test_s_strategies(self, params_5_1, strategy):
        assert empirical_S_distribution(params_5_1, strategy).entries == S_5_1


class TestRankCensus:
    """Test the census and its moment system."""

    def test_odd_census(self, params_5_1):
        census = rank_census(params_5_1)
        assert census.counts == {1: 868, 3: 155}
        assert census.as_tuple() == (868, 155)
        assert census.total == 32**2 - 1

    def test_even_census(self, params_8_1):
        census = rank_census(params_8_1)
        assert census.as_tuple() == (38080, 23800, 3570, 85)
        assert census_satisfies_equations(census)

    @pytest.mark.parametrize("fixture", ["params_5_1", "params_8_1"])
    def test_solved_census_matches_enumeration(self, fixture, request):
        params = request.getfixturevalue(fixture)
        solved = census_from_moments(params)
        assert solved.origin == "closed_form"
        assert solved.counts == rank_census(params).counts

    def test_broken_census_fails_equations(self, params_5_1):
        assert not census_satisfies_equations(RankCensus(params_5_1, {1: 867, 3: 156}))

    def test_signed_census_odd(self, params_5_1):
        signed = signed_census(params_5_1)
        assert signed == {(-1, 1): 186, (0, 1): 372, (0, 3): 155, (1, 1): 310}

    def test_s_from_census(self, params_5_1):
        census = census_from_moments(params_5_1)
        dist = s_from_census(params_5_1, census)
        assert dist.entries == S_5_1
        assert dist.origin == "closed_form"


class TestCompare:
    """Test closed vs empirical comparison."""

    def test_pass(self, params_5_1):
        report = compare(theorem1_table(params_5_1), empirical_T_distribution(params_5_1))
        assert report.status == "PASS"
        assert report.passed
        assert report.diffs == []
        assert all(report.checks.values())

    def test_fail_lists_diffs(self, params_5_1):
        closed = theorem1_table(params_5_1)
        wrong = dict(T_5_1)
        wrong[8] -= 1
        wrong[0] += 1
        empirical = ValueDistribution(params_5_1, "T", "empirical", wrong)
        report = compare(closed, empirical)
        assert report.status == "FAIL"
        assert not report.passed
        assert report.diffs == [(0, 527, 528), (8, 310, 309)]
        assert report.checks["totals_match"]
        assert not report.checks["first_moment"]

    def test_unreliable_is_uncertified(self, params_5_1):
        closed = ValueDistribution(params_5_1, "T", "closed_form", T_5_1, unreliable=True)
        report = compare(closed, empirical_T_distribution(params_5_1))
        assert report.status == "UNCERTIFIED"

    def test_params_mismatch(self, params_5_1, params_7_1):
        with pytest.raises(ProvenanceMismatchError):
            compare(theorem1_table(params_5_1), theorem1_table(params_7_1))

    def test_kind_mismatch(self, params_5_1):
        with pytest.raises(ProvenanceMismatchError):
            compare(theorem1_table(params_5_1), theorem2_table(params_5_1))

    def test_expected_total(self, params_5_1):
        assert expected_total(params_5_1, "T") == 1024
        assert expected_total(params_5_1, "S") == 32768
        assert expected_total(params_5_1, "weight") is None
