"""
Unit Tests for the Exponential Sums T and S

Exhaustive over GF(2^5) and GF(2^8); values are exact integers.
"""

from collections import Counter

import numpy as np
import pytest

from kasami_welch.errors import DegenerateInputError, ParameterError, SizeGuardError, VerificationError
from kasami_welch.exp_sums import (
    artin_schreier_count,
    closed_form_t,
    closed_solution_counts,
    gamma_histogram,
    kernel_census,
    moment_check,
    s_gamma_table,
    s_lemma2_histogram,
    s_naive,
    s_naive_histogram,
    scaling_invariance_check,
    solution_counts,
    t_fast,
    t_histogram,
    t_naive,
    t_table,
    table_histogram,
    walsh_hadamard,
)
from kasami_welch.field_core import validate_params
from kasami_welch.guards import get_size_guard

T_5_1 = {8: 310, -8: 186, 0: 527, 32: 1}
T_8_1 = {16: 38080, -32: 23800, 64: 3570, -128: 85, 256: 1}
S_5_1 = {8: 8680, -8: 5208, 16: 465, -16: 155, 0: 18259, 32: 1}


class TestWalshHadamard:
    """Test the integer transform."""

    def test_delta_transforms_to_ones(self):
        delta = np.zeros(8, dtype=np.int64)
        delta[0] = 1
        assert walsh_hadamard(delta).tolist() == [1] * 8

    def test_involution_up_to_scale(self):
        values = np.array([3, -1, 4, 1, -5, 9, 2, 6])
        twice = walsh_hadamard(walsh_hadamard(values))
        assert (twice == 8 * values).all()

    def test_length_must_be_power_of_two(self):
        with pytest.raises(ParameterError, match="not a power of two"):
            walsh_hadamard(np.zeros(6))


class TestSingleSums:
    """Test pointwise evaluation."""

    def test_t_at_zero_is_q(self, params_5_1):
        assert t_naive(params_5_1, 0, 0).value == 32

    def test_s_with_zero_gamma_is_t(self, params_5_1, rng):
        for _ in range(20):
            a, b = rng.randrange(32), rng.randrange(32)
            assert s_naive(params_5_1, a, b, 0).value == t_naive(params_5_1, a, b).value

    def test_s_with_only_gamma_vanishes(self, params_5_1):
        """Test sum_x (-1)^Tr(gamma x) = 0 for gamma != 0."""
        assert s_naive(params_5_1, 0, 0, 7).value == 0

    @pytest.mark.parametrize("fixture", ["params_5_1", "params_8_1"])
    def test_fast_matches_naive(self, fixture, request, rng):
        params = request.getfixturevalue(fixture)
        for _ in range(40):
            a, b = rng.randrange(params.q), rng.randrange(params.q)
            if a or b:
                fast = t_fast(params, a, b)
                assert fast.value == t_naive(params, a, b).value
                assert fast.method == "rank_fast"

    def test_alpha_one_beta_zero_at_8_1(self, params_8_1):
        """Test the kernel-GF(4) pair: rank 6 gives T = -32 by both routes."""
        fast = t_fast(params_8_1, 1, 0)
        assert fast.value == t_naive(params_8_1, 1, 0).value == -32
        assert fast.method == "rank_fast"

    def test_fast_at_zero_raises(self, params_8_1):
        with pytest.raises(DegenerateInputError):
            t_fast(params_8_1, 0, 0)

    def test_closed_form_values(self, params_8_1):
        assert [closed_form_t(params_8_1, i) for i in (0, 2, 4, 6)] == [16, -32, 64, -128]

    def test_closed_form_needs_even_s(self, params_5_1):
        with pytest.raises(ParameterError, match="n/d even"):
            closed_form_t(params_5_1, 1)


class TestTables:
    """Test whole-table strategies."""

    @pytest.mark.parametrize("strategy", ["naive", "walsh", "rank_fast"])
    def test_t_histogram_5_1(self, params_5_1, strategy):
        assert t_histogram(params_5_1, strategy) == Counter(T_5_1)

    @pytest.mark.parametrize("strategy", ["walsh", "rank_fast"])
    def test_t_histogram_8_1(self, params_8_1, strategy):
        assert t_histogram(params_8_1, strategy) == Counter(T_8_1)

    def test_rank_fast_threads_do_not_change_counts(self, params_8_1):
        assert t_histogram(params_8_1, "rank_fast", threads=2) == Counter(T_8_1)

    def test_tables_agree_entrywise(self, params_5_1):
        naive = t_table(params_5_1, "naive")
        assert np.array_equal(naive, t_table(params_5_1, "walsh"))
        assert np.array_equal(naive, t_table(params_5_1, "rank_fast"))
        assert naive[0, 0] == 32
        assert naive[3, 7] == t_naive(params_5_1, 3, 7).value

    def test_rank_fast_odd_is_capped_like_walsh(self):
        with pytest.raises(SizeGuardError, match="T:rank_fast:odd") as exc:
            t_table(validate_params(13, 1), "rank_fast")
        assert exc.value.details["limit"] == 12

    def test_rank_fast_even_allows_beyond_walsh(self):
        assert get_size_guard("T", "rank_fast").max_n == 16
        with pytest.raises(SizeGuardError, match="T:walsh"):
            t_table(validate_params(14, 1), "walsh")

    def test_guard_blocks_large_naive(self):
        with pytest.raises(SizeGuardError):
            t_table(validate_params(13, 1), "naive")

    def test_unknown_strategy(self, params_5_1):
        with pytest.raises(ParameterError, match="Unknown strategy"):
            t_table(params_5_1, "fourier")

    def test_table_histogram(self):
        assert table_histogram(np.array([[1, -1], [1, 4]])) == Counter({1: 2, -1: 1, 4: 1})

    def test_gamma_slices(self, params_5_1):
        assert np.array_equal(s_gamma_table(params_5_1, 0), t_table(params_5_1, "walsh"))
        assert s_gamma_table(params_5_1, 5)[3, 7] == s_naive(params_5_1, 3, 7, 5).value
        reference = table_histogram(s_gamma_table(params_5_1, 1))
        for gamma in (2, 9, 31):
            assert table_histogram(s_gamma_table(params_5_1, gamma)) == reference


class TestSEnumerations:
    """Test the S multiset strategies."""

    def test_gamma_histogram(self, params_5_1):
        assert gamma_histogram(params_5_1, 1) == Counter({8: 10, -8: 6, 0: 16})
        assert gamma_histogram(params_5_1, 3) == Counter({16: 3, -16: 1, 0: 28})

    def test_gamma_histogram_odd_form_rank_raises(self, params_5_1):
        with pytest.raises(VerificationError, match="odd"):
            gamma_histogram(params_5_1, 2)

    def test_kernel_census(self, params_5_1):
        assert kernel_census(params_5_1) == Counter({1: 868, 3: 155})

    def test_lemma2(self, params_5_1):
        assert s_lemma2_histogram(params_5_1) == Counter(S_5_1)

    def test_naive(self, params_5_1):
        assert s_naive_histogram(params_5_1) == Counter(S_5_1)

    def test_naive_guard(self):
        with pytest.raises(SizeGuardError):
            s_naive_histogram(validate_params(9, 1))

    def test_lemma2_zero_count_8_1(self, params_8_1):
        assert s_lemma2_histogram(params_8_1)[0] == 5448075


class TestMoments:
    """Test power moments and solution counts."""

    def test_solution_counts_odd(self, params_5_1):
        m2, m3, l3 = solution_counts(params_5_1)
        closed = closed_solution_counts(params_5_1)
        assert m2 == closed["M2"] == 32
        assert l3 == closed["L3"] == 94
        assert m3 > 0

    def test_solution_counts_even(self, params_8_1):
        m2, m3, l3 = solution_counts(params_8_1)
        closed = closed_solution_counts(params_8_1)
        assert (m2, m3, l3) == (closed["M2"], closed["M3"], closed["L3"])

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_t_moments_even(self, params_8_1, order):
        report = moment_check(params_8_1, order, "T")
        assert report.passed
        assert report.lhs == report.rhs

    def test_t_second_moment_odd(self, params_5_1):
        report = moment_check(params_5_1, 2, "T")
        assert report.passed
        assert report.lhs == 32 * 32**2

    def test_t_third_moment_odd_has_no_closed_form(self, params_5_1):
        report = moment_check(params_5_1, 3, "T")
        assert report.rhs is None
        assert report.targets == {}
        assert report.passed

    @pytest.mark.parametrize("strategy", ["naive", "lemma2"])
    def test_s_third_moment(self, params_5_1, strategy):
        report = moment_check(params_5_1, 3, "S", strategy)
        assert report.lhs == report.rhs == 94 * 2**15
        assert report.passed

    def test_unsupported_orders(self, params_5_1):
        with pytest.raises(ParameterError):
            moment_check(params_5_1, 4, "T")
        with pytest.raises(ParameterError):
            moment_check(params_5_1, 2, "S")
        with pytest.raises(ParameterError, match="Unknown sum"):
            moment_check(params_5_1, 1, "U")


class TestCurves:
    """Test Artin-Schreier point counts."""

    def test_zero_curve(self, params_5_1):
        assert artin_schreier_count(params_5_1, 0, 0, "brute") == 64
        assert artin_schreier_count(params_5_1, 0, 0, "character") == 64

    def test_character_matches_brute_odd(self, params_5_1, rng):
        for _ in range(20):
            a, b = rng.randrange(32), rng.randrange(32)
            assert artin_schreier_count(params_5_1, a, b, "brute") == artin_schreier_count(
                params_5_1, a, b, "character"
            )

    def test_all_modes_agree_even(self, params_8_1, rng):
        for _ in range(20):
            a, b = rng.randrange(256), rng.randrange(256)
            counts = {
                mode: artin_schreier_count(params_8_1, a, b, mode)
                for mode in ("brute", "formula", "character")
            }
            assert len(set(counts.values())) == 1

    def test_formula_needs_even_s(self, params_5_1):
        with pytest.raises(ParameterError, match="n/d even"):
            artin_schreier_count(params_5_1, 1, 1, "formula")

    def test_unknown_mode(self, params_5_1):
        with pytest.raises(ParameterError, match="Unknown curve count mode"):
            artin_schreier_count(params_5_1, 1, 1, "magic")

    def test_scaling_invariance(self, params_8_1):
        assert scaling_invariance_check(params_8_1, 12, 34)

    def test_scaling_invariance_needs_even_s(self, params_5_1):
        with pytest.raises(ParameterError):
            scaling_invariance_check(params_5_1, 1, 2)
