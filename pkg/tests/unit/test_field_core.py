"""
Unit Tests for GF(2^n) Arithmetic and Parameter Validation
"""

import numpy as np
import pytest

from kasami_welch.errors import FieldError, ParameterError
from kasami_welch.field_core import (
    coset_representative,
    coset_size,
    dual_table,
    element_to_poly,
    frob,
    inv,
    make_field,
    mul,
    mul_array,
    parity,
    power,
    power_table,
    subfield,
    trace,
    trace_mask,
    trace_sequence,
    validate_params,
)


class TestMakeField:
    """Test field construction."""

    @pytest.mark.parametrize(
        "n,modulus",
        [(4, 0b10011), (5, 0b100101), (8, 0b100011101)],
    )
    def test_modulus_is_smallest_primitive(self, n, modulus):
        """Test the modulus is the smallest primitive polynomial of degree n."""
        assert make_field(n).modulus == modulus

    def test_exp_table_is_a_permutation(self, gf32):
        """Test pi generates the whole multiplicative group."""
        assert sorted(gf32.exp_table.tolist()) == list(range(1, 32))

    def test_log_inverts_exp(self, gf16):
        for i in range(gf16.order):
            assert gf16.log_table[gf16.exp_table[i]] == i
        assert gf16.log_table[0] == -1

    def test_field_is_cached(self):
        assert make_field(6) is make_field(6)

    @pytest.mark.parametrize("n", [0, 25, -1])
    def test_degree_out_of_range_raises(self, n):
        with pytest.raises(FieldError, match="Extension degree"):
            make_field(n)

    def test_repr_shows_modulus(self, gf16):
        assert repr(gf16) == "FieldSpec(n=4, modulus=x^4 + x + 1)"


class TestScalarArithmetic:
    """Test mul, power, inv, frob and trace."""

    def test_mul_matches_polynomial_product(self, gf16):
        """Test x * x^3 = x^4 = x + 1 modulo x^4 + x + 1."""
        assert mul(gf16, 0b0010, 0b1000) == 0b0011

    def test_mul_by_zero(self, gf16):
        assert mul(gf16, 0, 7) == 0
        assert mul(gf16, 7, 0) == 0

    def test_every_nonzero_element_has_inverse(self, gf32):
        for a in range(1, 32):
            assert mul(gf32, a, inv(gf32, a)) == 1

    def test_inverse_of_zero_raises(self, gf16):
        with pytest.raises(FieldError, match="Inverse of zero"):
            inv(gf16, 0)

    def test_zero_to_negative_power_raises(self, gf16):
        with pytest.raises(FieldError):
            power(gf16, 0, -3)

    def test_zero_powers(self, gf16):
        assert power(gf16, 0, 0) == 1
        assert power(gf16, 0, 5) == 0

    def test_fermat(self, gf32):
        """Test a^(2^n) = a for every element."""
        for a in range(32):
            assert power(gf32, a, 32) == a

    def test_primitive_element_order(self, gf32):
        assert power(gf32, gf32.pi, 31) == 1
        assert all(power(gf32, gf32.pi, i) != 1 for i in range(1, 31))

    def test_frobenius_is_additive(self, gf16):
        for a in range(16):
            for b in range(16):
                assert frob(gf16, a ^ b, 1) == frob(gf16, a, 1) ^ frob(gf16, b, 1)

    def test_element_out_of_range_raises(self, gf16):
        with pytest.raises(FieldError, match="not in GF"):
            mul(gf16, 16, 1)

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_trace_of_one_is_n_mod_2(self, n):
        assert trace(make_field(n), 1) == n % 2

    @pytest.mark.parametrize("n", [4, 5, 8])
    def test_trace_mask_matches_frobenius_sum(self, n):
        field = make_field(n)
        tau = trace_mask(field)
        assert 0 < tau < field.q
        for a in range(field.q):
            total = 0
            for i in range(n):
                total ^= frob(field, a, i)
            assert total == parity(a & tau)

    def test_trace_is_balanced(self, gf32):
        """Test exactly half the elements have trace 1."""
        assert sum(trace(gf32, a) for a in range(32)) == 16

    def test_relative_trace_lands_in_subfield(self):
        field = make_field(6)
        sub = set(subfield(field, 2))
        for a in range(64):
            assert trace(field, a, 2) in sub

    def test_relative_trace_needs_divisor(self, gf32):
        with pytest.raises(FieldError, match="does not divide"):
            trace(gf32, 3, 2)


class TestSubfield:
    """Test subfield enumeration."""

    def test_subfield_size_and_closure(self):
        field = make_field(8)
        sub = subfield(field, 2)
        assert len(sub) == 4
        assert all(power(field, a, 4) == a for a in sub)

    def test_non_divisor_raises(self, gf32):
        with pytest.raises(FieldError, match="not a subfield"):
            subfield(gf32, 2)


class TestVectorized:
    """Test array helpers against the scalar ones."""

    def test_parity(self):
        assert parity(np.array([0, 1, 3, 7, 255])).tolist() == [0, 1, 0, 1, 0]

    def test_mul_array_matches_mul(self, gf16):
        a = np.arange(16)
        out = mul_array(gf16, a[:, None], a[None, :])
        for x in range(16):
            for y in range(16):
                assert out[x, y] == mul(gf16, x, y)

    def test_power_table(self, gf32):
        table = power_table(gf32, 9)
        assert table[0] == 0
        assert all(table[a] == power(gf32, a, 9) for a in range(1, 32))

    def test_power_table_zero_exponent(self, gf16):
        assert power_table(gf16, 0).tolist() == [1] * 16

    def test_power_table_negative_raises(self, gf16):
        with pytest.raises(FieldError):
            power_table(gf16, -1)

    def test_dual_table(self, gf16):
        """Test Tr(a u) = parity(a & w[u]) for all pairs."""
        w = dual_table(gf16)
        for a in range(16):
            for u in range(16):
                assert trace(gf16, mul(gf16, a, u)) == parity(a & int(w[u]))

    def test_trace_sequence_is_balanced(self, gf32):
        """Test an m-sequence has 2^{n-1} ones per period."""
        bits = trace_sequence(gf32, (7,), (1,))
        assert bits.shape == (31,)
        assert int(bits.sum()) == 16

    def test_trace_sequence_zero_coefficients(self, gf16):
        assert trace_sequence(gf16, (0, 0), (9, 3)).sum() == 0


class TestHelpers:
    """Test coset helpers and polynomial rendering."""

    def test_element_to_poly(self):
        assert element_to_poly(0b10011) == "x^4 + x + 1"
        assert element_to_poly(0) == "0"
        assert element_to_poly(0b10) == "x"

    def test_coset_sizes(self):
        assert coset_size(5, 9) == 5
        assert coset_size(6, 9) == 3

    def test_coset_representative(self):
        assert coset_representative(5, 9) == 5
        assert coset_representative(5, 3) == 3


class TestValidateParams:
    """Test (n, k) validation and derived constants."""

    def test_even_case(self):
        p = validate_params(8, 1)
        assert (p.d, p.q0, p.s, p.d_prime, p.m, p.mu) == (1, 2, 8, 2, 4, 1)
        assert p.s_even
        assert (p.e1, p.e2) == (9, 3)
        assert not p.code_degenerate
        assert p.sequence_valid

    def test_negative_mu(self):
        assert validate_params(10, 1).mu == -1

    @pytest.mark.parametrize("n,k", [(6, 2), (10, 2), (12, 4)])
    def test_even_n_odd_s_has_no_mu(self, n, k):
        """Test m/d is fractional here, so mu stays undefined."""
        p = validate_params(n, k)
        assert p.m is not None and not p.s_even
        assert p.m % p.d != 0
        assert p.mu is None

    def test_odd_case(self):
        p = validate_params(5, 1)
        assert (p.d, p.s, p.d_prime, p.m, p.mu) == (1, 5, 1, None, None)
        assert not p.s_even

    def test_non_trivial_gcd(self):
        p = validate_params(12, 2)
        assert (p.d, p.s, p.q0) == (2, 6, 4)

    @pytest.mark.parametrize("n,k", [(8, 2), (8, 4), (8, 6)])
    def test_excluded_fractions(self, n, k):
        with pytest.raises(ParameterError, match="is excluded"):
            validate_params(n, k)

    @pytest.mark.parametrize("n,k", [(5, 0), (5, 5), (25, 1), (0, 0)])
    def test_out_of_range(self, n, k):
        with pytest.raises(ParameterError):
            validate_params(n, k)

    def test_degenerate_and_sequence_flags(self, params_6_1):
        assert params_6_1.code_degenerate
        assert not params_6_1.sequence_valid

    def test_label_and_tuple(self, params_5_1):
        assert params_5_1.label == "5/1"
        assert params_5_1.as_tuple() == (5, 1)
        assert params_5_1.q == 32
