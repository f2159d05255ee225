"""
Tests for services.valuation_service: b_m lookups and the valuation lemma report.
"""
import pytest

from services.valuation_service import LEMMA_NAMES, bm_coeff, verify_appendix_a
from utils.errors import ParameterError
from utils.exactarith import bm_multinomial_oracle, val2


class TestBmCoeff:
    """Tests for bm_coeff."""

    def test_leading_coefficient(self):
        assert bm_coeff(3, 0) == 1

    def test_matches_oracle(self):
        assert bm_coeff(5, 20) == bm_multinomial_oracle(5, 20)

    @pytest.mark.parametrize("k, m", [(1, 5), (2, -1), (-1, 0)])
    def test_out_of_range(self, k, m):
        with pytest.raises(ParameterError):
            bm_coeff(k, m)

    @pytest.mark.parametrize("k", [1, 2, 3, 6])
    def test_top_valuation(self, k):
        assert val2(bm_coeff(k, 4 * k)) == -4 * k


class TestVerifyAppendixA:
    """Tests for verify_appendix_a."""

    @pytest.mark.parametrize("k", range(2, 13))
    def test_all_lemmas_hold(self, k):
        report = verify_appendix_a(k)
        assert report.passed
        assert [r.lemma for r in report.results] == list(LEMMA_NAMES)

    def test_k1_subset(self):
        report = verify_appendix_a(1)
        assert report.passed
        low = report.result("low_range_bound")
        assert low.vacuous
        assert low.expected == "vacuous"

    def test_k0_only_flags_top_lemma(self):
        report = verify_appendix_a(0)
        assert len(report.results) == 1
        check = report.result("nu_b4k")
        assert check.flagged
        assert check.computed == 0
        assert check.passed

    def test_negative_k_rejected(self):
        with pytest.raises(ParameterError):
            verify_appendix_a(-1)

    def test_rows(self):
        rows = verify_appendix_a(4).to_rows()
        top = next(row for row in rows if row["lemma"] == "nu_b4k")
        assert top == {"k": 4, "lemma": "nu_b4k", "expected": "= -16", "computed": -16, "pass": True}

    def test_odd_difference_is_lower_bound(self):
        check = verify_appendix_a(3).result("nu_b4k2_minus_b4k3")
        assert check.relation == "ge"
        assert check.expected == ">= -7"

    def test_unknown_lemma(self):
        with pytest.raises(KeyError):
            verify_appendix_a(2).result("no_such_lemma")
