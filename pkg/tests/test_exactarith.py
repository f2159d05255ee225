"""
Tests for utils.exactarith.

Covers 2-adic valuations, truncated series arithmetic and composition,
the Stirling-number shortcut and the independent multinomial oracle.
"""
import random
from fractions import Fraction

import pytest

from utils.errors import ParameterError
from utils.exactarith import (
    INF,
    TruncSeries,
    Val2,
    bm_multinomial_oracle,
    exp_minus_one,
    exp_minus_one_over_x,
    exp_minus_one_power_coeff,
    is_two_integral,
    log1p,
    log1p_over_z,
    log1p_over_z_pow,
    rat_to_str,
    series_compose_subst,
    stirling2_row,
    val2,
)


class TestVal2:
    """Tests for the valuation type and val2."""

    @pytest.mark.parametrize("value, expected", [
        (12, 2),
        (Fraction(3, 8), -3),
        (1, 0),
        (Fraction(-1069, 36), -2),
        (Fraction(1069, 144), -4),
    ])
    def test_examples(self, value, expected):
        assert val2(value) == expected

    def test_zero_is_infinite(self):
        assert val2(0) is INF
        assert val2(0).is_inf

    def test_infinity_dominates_integers(self):
        assert INF > 10 ** 9
        assert INF >= 0
        assert not INF < -5

    def test_infinity_absorbs_addition(self):
        assert INF + 3 is INF
        assert 3 + INF is INF

    def test_subtracting_infinity_rejected(self):
        with pytest.raises(ParameterError):
            Val2(1) - INF

    def test_json_form(self):
        assert INF.to_json() == "inf"
        assert val2(8).to_json() == 3

    def test_non_int_rejected(self):
        with pytest.raises(TypeError):
            Val2(1.5)

    def test_ultrametric_and_multiplicative(self):
        rng = random.Random(20240611)
        for _ in range(500):
            a = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
            b = Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 10 ** 6))
            assert val2(a + b) >= min(val2(a), val2(b))
            if val2(a) != val2(b):
                assert val2(a + b) == min(val2(a), val2(b))
            if a and b:
                assert val2(a * b) == val2(a) + val2(b)

    def test_two_integral(self):
        assert is_two_integral(Fraction(1, 3))
        assert not is_two_integral(Fraction(1, 6))
        assert is_two_integral(0)


class TestRatToStr:
    """Tests for rational serialization."""

    def test_fraction(self):
        assert rat_to_str(Fraction(-1069, 36)) == "-1069/36"

    def test_integer(self):
        assert rat_to_str(Fraction(10, 2)) == "5"


class TestTruncSeries:
    """Tests for truncated series arithmetic."""

    def test_length_must_match_order(self):
        with pytest.raises(ParameterError):
            TruncSeries(2, (1, 2))

    def test_from_coeffs_pads(self):
        s = TruncSeries.from_coeffs([1, 2], 4)
        assert s.coeffs == (1, 2, 0, 0, 0)

    def test_log1p_over_z_coefficients(self):
        assert log1p_over_z(3).coeffs == (1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4))

    def test_log1p_is_shifted_log1p_over_z(self):
        assert log1p(5).coeffs[1:] == log1p_over_z(4).coeffs

    def test_multiplication_truncates_to_smaller_order(self):
        product = exp_minus_one(6) * exp_minus_one(3)
        assert product.order == 3
        assert product.coeffs == (0, 0, 1, 1)

    def test_power_matches_repeated_product(self):
        f = log1p_over_z(8)
        assert f ** 5 == f * f * f * f * f

    def test_power_zero_is_one(self):
        assert log1p_over_z(4) ** 0 == TruncSeries.one(4)

    def test_negative_power_rejected(self):
        with pytest.raises(ParameterError):
            log1p_over_z(4) ** -1

    def test_scalar_multiplication(self):
        assert (log1p_over_z(2) * 6).coeffs == (6, -3, 2)


class TestComposition:
    """Tests for series_compose_subst."""

    def test_log_of_exp_is_identity(self):
        assert series_compose_subst(log1p(10), exp_minus_one(10)) == TruncSeries.variable(10)

    def test_exp_of_log_is_identity(self):
        assert exp_minus_one(9).compose(log1p(9)) == TruncSeries.variable(9)

    def test_square_of_exp_minus_one(self):
        square = TruncSeries.from_coeffs([0, 0, 1], 3)
        assert series_compose_subst(square, exp_minus_one(3)).coeffs == (0, 0, 1, 1)

    def test_nonzero_constant_rejected(self):
        with pytest.raises(ParameterError):
            series_compose_subst(log1p(4), TruncSeries.one(4))


class TestStirling:
    """Tests for the (e^x - 1)^n coefficients."""

    def test_row(self):
        assert stirling2_row(4) == (0, 1, 7, 6, 1)

    @pytest.mark.parametrize("n", [1, 2, 3, 5])
    def test_matches_series_power(self, n):
        power = exp_minus_one(12) ** n
        for j in range(13):
            assert exp_minus_one_power_coeff(n, j) == power[j]

    def test_exp_minus_one_over_x(self):
        assert exp_minus_one_over_x(3).coeffs == (1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))


class TestBmCoefficients:
    """Tests for (ln(1+z)/z)^(4k+1) and the oracle."""

    def test_k1_values(self):
        b = log1p_over_z_pow(1, 4)
        assert b[0] == 1
        assert b[1] == Fraction(-5, 2)
        assert b[2] == Fraction(25, 6)
        assert b[4] == Fraction(1069, 144)

    def test_k0_is_the_base_series(self):
        assert log1p_over_z_pow(0, 6) == log1p_over_z(6)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5, 6])
    def test_oracle_agrees(self, k):
        series = log1p_over_z_pow(k, 4 * k)
        for m in range(min(24, 4 * k) + 1):
            assert bm_multinomial_oracle(k, m) == series[m]

    def test_oracle_range(self):
        with pytest.raises(ParameterError):
            bm_multinomial_oracle(1, 5)

    def test_negative_k_rejected(self):
        with pytest.raises(ParameterError):
            log1p_over_z_pow(-1, 3)
