"""
Tests for services.stems_service.
"""
import pytest

from services.stems_service import (
    ETA,
    NU,
    moore_group,
    nu_multiple,
    ph2_multiple_name,
    relation_check,
    relation_citation,
    relation_names,
    stem_group,
    table_is_consistent,
)
from utils.errors import ParameterError


class TestStemTable:
    """Tests for stem_group and moore_group."""

    @pytest.mark.parametrize("n, label", [
        (0, "Z"), (1, "Z/2"), (3, "Z/8"), (4, "0"), (7, "Z/16"), (8, "Z/2 ⊕ Z/2"), (15, "Z/32 ⊕ Z/2"),
    ])
    def test_labels(self, n, label):
        assert stem_group(n).label() == label

    def test_orders(self):
        assert stem_group(0).order is None
        assert stem_group(9).order == 8
        assert stem_group(12).order == 1

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            stem_group(21)

    def test_moore(self):
        assert moore_group(5).is_trivial
        assert moore_group(11).summands == (2, 2)
        with pytest.raises(ParameterError):
            moore_group(7)

    def test_consistent(self):
        assert table_is_consistent()


class TestMultiples:
    """Tests for nu_multiple and ph2_multiple_name."""

    def test_generators(self):
        assert (ETA.degree, ETA.order) == (1, 2)
        assert (NU.degree, NU.order) == (3, 8)

    @pytest.mark.parametrize("c, name, order", [
        (1, "ν", 8), (2, "2ν", 4), (3, "3ν", 8), (4, "η³", 2), (6, "6ν", 4), (8, "0", 1), (-1, "7ν", 8),
    ])
    def test_nu_multiple(self, c, name, order):
        elem = nu_multiple(c)
        assert elem.name == name
        assert elem.order == order

    def test_ph2_names(self):
        assert ph2_multiple_name(4) == "{P^{k-1}h_1^3}"
        with pytest.raises(ParameterError):
            ph2_multiple_name(3)


class TestRelations:
    """Tests for the stored relations."""

    def test_all_hold(self):
        for name in relation_names():
            assert relation_check(name), name

    def test_names_sorted(self):
        names = relation_names()
        assert names == sorted(names)
        assert "eta_cubed_eq_4nu" in names

    def test_citation(self):
        assert relation_citation("eight_nu_zero") == "8ν = 0 in the 2-local π_3"

    def test_unknown(self):
        with pytest.raises(ParameterError):
            relation_check("pi99_zero")

    def test_products_follow_generator_table(self, monkeypatch):
        import services.stems_service as stems

        monkeypatch.setitem(stems._GENERATOR_PRODUCTS, ("η²", "ε"), ("{Ph₁²}", "altered"))
        assert not relation_check("pi2_times_pi8_zero")

    def test_missing_generator_product_fails(self, monkeypatch):
        import services.stems_service as stems

        monkeypatch.delitem(stems._GENERATOR_PRODUCTS, ("η²", "ησ"))
        assert not relation_check("pi2_times_pi8_zero")

    def test_eta_sq_product_lands_in_trivial_stem(self):
        assert stem_group(4).is_trivial
        assert relation_check("pi2_times_eta_sq_zero")

    def test_eta_cubed_needs_cyclic_pi3(self, monkeypatch):
        import services.stems_service as stems

        altered = stems.StemGroup(3, (4, 2), stem_group(3).generators, "altered", stem_group(3).notes)
        monkeypatch.setitem(stems._STEMS, 3, altered)
        assert not relation_check("eta_cubed_eq_4nu")
