"""
Tests for services.ahss_service: the differential criterion, e-invariant
classification and both lock pipelines.
"""
import pytest

from services.ahss_service import (
    AHSSVerdict,
    EClassify,
    check_hypotheses,
    cp_bottom_is_eta,
    decide,
    e_classify,
    first_lock,
    imj_exponent,
    iota,
    second_lock,
)
from services.steenrod_service import cp_cell_diagram, z_cell_diagram, zk_cell_diagram
from utils.errors import ParameterError
from utils.exactarith import INF


class TestDecide:
    """Tests for iota and decide."""

    def test_iota(self):
        assert [iota(m) for m in range(1, 6)] == [1, 0, 1, 0, 1]

    def test_even_m_needs_nonnegative_valuation(self):
        assert decide(3, 0, 2).is_permanent
        assert decide(3, -1, 2).target_dim == 7

    def test_odd_m_needs_integral_d(self):
        verdict = decide(7, -1, 3)
        assert verdict.kind == AHSSVerdict.DIFFERENTIAL
        assert verdict.target_dim == 11
        assert decide(7, 1, 3).is_permanent

    def test_zero_d_is_permanent(self):
        assert decide(2, INF, 1).is_permanent

    def test_monotone_in_valuation(self):
        for m in range(1, 8):
            seen_permanent = False
            for nu in range(-6, 6):
                permanent = decide(1, nu, m).is_permanent
                assert permanent or not seen_permanent
                seen_permanent = permanent

    @pytest.mark.parametrize("l, m", [(-1, 1), (0, 0)])
    def test_bad_arguments(self, l, m):
        with pytest.raises(ParameterError):
            decide(l, 0, m)

    def test_differential_target_dimension(self):
        with pytest.raises(ParameterError):
            AHSSVerdict(AHSSVerdict.DIFFERENTIAL, 1, 8)

    def test_to_dict(self):
        assert decide(7, 0, 2).to_dict(1)["kind"] == "PermanentCycle"
        assert decide(3, -2, 1).to_dict(1) == {
            "k": 1,
            "kind": "NontrivialDifferential",
            "exponent": 3,
            "targetDim": 3,
            "targetClass": None,
        }


class TestImageOfJ:
    """Tests for imj_exponent."""

    @pytest.mark.parametrize("k, expected", [(1, 4), (2, 5), (3, 4), (4, 6), (8, 7)])
    def test_exponent(self, k, expected):
        assert imj_exponent(k) == expected

    def test_k_zero_rejected(self):
        with pytest.raises(ParameterError):
            imj_exponent(0)


class TestEClassify:
    """Tests for e_classify."""

    @pytest.mark.parametrize("nu, expected", [
        (0, EClassify.FOUR_PH2),
        (-1, EClassify.TWO_PH2),
        (-2, EClassify.PH2),
        (1, EClassify.ZERO_CLASS),
        (5, EClassify.ZERO_CLASS),
        (INF, EClassify.ZERO_CLASS),
    ])
    def test_buckets(self, nu, expected):
        assert e_classify(nu) is expected

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            e_classify(-3)

    def test_class_names(self):
        assert EClassify.FOUR_PH2.class_name == "{P^{k-1}h_1^3}"
        assert EClassify.PH2.class_name == "{P^{k-1}h_2}"


class TestHypotheses:
    """Tests for the structural hypotheses of the criterion."""

    def test_bottom_eta(self):
        assert cp_bottom_is_eta(5)
        assert not cp_bottom_is_eta(4)

    def test_z_satisfies_hypotheses(self):
        for k in range(1, 5):
            assert check_hypotheses(z_cell_diagram(k), 8 * k, 4 * k + 1).ok

    def test_zk_satisfies_hypotheses(self):
        for k in range(2, 6):
            assert check_hypotheses(zk_cell_diagram(k), 8 * k - 4, 4 * k + 1).ok

    def test_wrong_top_fails(self):
        assert not check_hypotheses(z_cell_diagram(1), 6, 5).ok

    def test_even_bottom_fails(self):
        assert not check_hypotheses(cp_cell_diagram(4, 8), 8, 4).ok

    def test_citation_carried(self):
        assert "ko-injective" in check_hypotheses(z_cell_diagram(1), 8, 5).ko_injective


class TestSecondLock:
    """Tests for second_lock."""

    @pytest.mark.parametrize("k, exponent, target", [(1, 3, 7), (2, 7, 15), (5, 19, 39)])
    def test_differential(self, k, exponent, target):
        verdict = second_lock(k)
        assert verdict.kind == AHSSVerdict.DIFFERENTIAL
        assert verdict.exponent == exponent
        assert verdict.target_dim == target

    def test_k_zero_rejected(self):
        with pytest.raises(ParameterError):
            second_lock(0)


class TestFirstLock:
    """Tests for first_lock."""

    def test_k2_permanent(self):
        verdict = first_lock(2)
        assert verdict.is_permanent
        assert verdict.exponent == 3

    def test_k4_permanent(self):
        verdict = first_lock(4)
        assert verdict.is_permanent
        assert verdict.exponent == 10

    def test_k3_differential(self):
        verdict = first_lock(3)
        assert verdict.kind == AHSSVerdict.DIFFERENTIAL
        assert verdict.target_dim == 19
        assert verdict.target_class == "{P^{k-1}h_1^3}"

    @pytest.mark.parametrize("unit", [1, 3, 5, 7])
    def test_odd_k_independent_of_unit(self, unit):
        assert first_lock(5, unit).target_class == "{P^{k-1}h_1^3}"

    def test_k1_rejected(self):
        with pytest.raises(ParameterError):
            first_lock(1)
