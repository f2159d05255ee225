"""
Tests for services.mahowald_service: the Mahowald line, Furuta-Mahowald
existence, Mahowald-invariant degrees and spin geography.
"""
import pytest

from services.mahowald_service import (
    Geography,
    b2_sign_check,
    fm_exists,
    h0,
    h_walk,
    historical_bounds,
    jones_discrepancies,
    mahowald_line,
    mahowald_lower_bound,
    main_theorem_bound,
    minv_degree,
    spin_form_levels,
    spin_geography,
    tau,
)
from services.steenrod_service import cell_exists
from utils.errors import ParameterError
from utils.exactarith import INF, Val2


class TestStaircase:
    """Tests for tau, the lower bound and h_walk."""

    def test_tau(self):
        assert [tau(r) for r in range(8)] == [0, 0, 1, 1, 1, 2, 2, 2]

    def test_tau_out_of_range(self):
        with pytest.raises(ParameterError):
            tau(8)

    @pytest.mark.parametrize("m, expected", [(4, 0), (9, 2), (12, 8), (20, 16)])
    def test_lower_bound(self, m, expected):
        assert mahowald_lower_bound(m) == expected

    def test_lower_bound_starts_at_four(self):
        with pytest.raises(ParameterError):
            mahowald_lower_bound(3)

    def test_h0(self):
        assert h0(12) == 9

    def test_walk_drops_at_empty_cell(self):
        assert h_walk(5, 4, 3) == 2

    def test_walk_accepts_finite_valuation(self):
        assert h_walk(12, 10, Val2(5)) == h_walk(12, 10, 5)
        assert isinstance(h_walk(12, 10, Val2(5)), int)

    def test_walk_infinite(self):
        assert h_walk(9, 2, INF) is INF

    def test_walk_needs_decreasing_columns(self):
        with pytest.raises(ParameterError):
            h_walk(4, 4, 0)


class TestMahowaldLine:
    """Tests for mahowald_line."""

    @pytest.mark.parametrize("m, expected", [
        (0, -1), (1, -1), (2, -1), (3, 0),
        (4, 0), (11, 6), (12, 8), (19, 10), (27, 22), (35, 26),
    ])
    def test_values(self, m, expected):
        assert mahowald_line(m) == expected

    def test_above_lower_bound(self):
        for m in range(4, 200):
            assert mahowald_line(m) >= mahowald_lower_bound(m)

    def test_next_cell_exists(self):
        for m in range(200):
            assert cell_exists(m, mahowald_line(m) + 1)

    def test_negative_rejected(self):
        with pytest.raises(ParameterError):
            mahowald_line(-1)


class TestFurutaMahowald:
    """Tests for fm_exists and the main bound."""

    @pytest.mark.parametrize("p, expected", [(2, 6), (3, 9), (4, 11), (5, 12), (8, 20)])
    def test_main_bound(self, p, expected):
        assert main_theorem_bound(p) == expected

    @pytest.mark.parametrize("p", range(2, 41))
    def test_minimal_q_is_main_bound(self, p):
        q = next(q for q in range(4 * p + 9) if fm_exists(p, q).exists)
        assert q == main_theorem_bound(p)

    def test_existence_is_upward_closed(self):
        for p in range(1, 20):
            flags = [fm_exists(p, q).exists for q in range(4 * p + 9)]
            first = flags.index(True)
            assert all(flags[first:])

    def test_p_zero_rejected(self):
        with pytest.raises(ParameterError):
            fm_exists(0, 0)

    def test_main_bound_needs_p_two(self):
        with pytest.raises(ParameterError):
            main_theorem_bound(1)


class TestMinvDegree:
    """Tests for minv_degree."""

    @pytest.mark.parametrize("q, expected", [(4, 1), (6, 2), (11, 4), (16, 6), (17, 7), (20, 9)])
    def test_values(self, q, expected):
        assert minv_degree(q) == expected

    def test_table_holds(self):
        for q in range(4, 301):
            minv_degree(q)

    def test_small_q_rejected(self):
        with pytest.raises(ParameterError):
            minv_degree(3)


class TestHistoricalBounds:
    """Tests for historical_bounds and jones_discrepancies."""

    def test_p4(self):
        assert historical_bounds(4) == {
            "p": 4,
            "furuta": 9,
            "furuta_kametani": 11,
            "jones_conjecture": 12,
            "main": 11,
        }

    def test_main_never_weaker(self):
        for p in range(2, 100):
            bounds = historical_bounds(p)
            assert bounds["main"] >= bounds["furuta_kametani"] >= bounds["furuta"]

    def test_discrepancies(self):
        assert jones_discrepancies(40) == [4, 12, 20, 28, 36]


class TestGeography:
    """Tests for spin_geography, spin_form_levels and b2_sign_check."""

    def test_k3_levels(self):
        assert spin_form_levels(22, -16) == (1, 3)

    def test_bad_signature(self):
        with pytest.raises(ParameterError):
            spin_form_levels(22, -8)

    def test_b2_too_small(self):
        with pytest.raises(ParameterError):
            spin_form_levels(10, 16)

    @pytest.mark.parametrize("p, q", [(0, 0), (0, 1), (1, 3)])
    def test_exceptional(self, p, q):
        verdict = spin_geography(p, q)
        assert verdict.verdict is Geography.NOT_OBSTRUCTED_HERE
        assert verdict.rule.startswith("exceptional")

    def test_p_zero(self):
        assert spin_geography(0, 5).verdict is Geography.NOT_OBSTRUCTED_HERE

    def test_p_one(self):
        assert spin_geography(1, 2).verdict is Geography.OBSTRUCTED
        assert spin_geography(1, 4).verdict is Geography.NOT_OBSTRUCTED_HERE

    def test_main_rule(self):
        assert spin_geography(4, 10).verdict is Geography.OBSTRUCTED
        verdict = spin_geography(4, 11)
        assert verdict.verdict is Geography.NOT_OBSTRUCTED_HERE
        assert verdict.bound == 11
        assert verdict.rule == "main"

    def test_b2_sign(self):
        assert not b2_sign_check(22, -16)
        assert b2_sign_check(22, -16, exceptional=True)
        assert b2_sign_check(24, -16)
        assert not b2_sign_check(23, 16)
