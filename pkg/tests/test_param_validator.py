"""
Tests for utils.param_validator.
"""
import pytest

from utils.param_validator import validate_spectrum_label, validate_window


class TestSpectrumLabel:
    """Tests for validate_spectrum_label."""

    @pytest.mark.parametrize("label, m", [("X(11)", 11), ("X( 0 )", 0), ("x(7)", 7)])
    def test_valid(self, label, m):
        assert validate_spectrum_label(label) == (True, m, "")

    @pytest.mark.parametrize("label", ["", "X(-1)", "Y(3)", "X11", "X(1.5)"])
    def test_invalid(self, label):
        is_valid, m, error = validate_spectrum_label(label)
        assert not is_valid
        assert m is None
        assert error


class TestWindow:
    """Tests for validate_window."""

    def test_valid(self):
        assert validate_window("-3", 8) == (True, (-3, 8), "")

    def test_single_cell(self):
        assert validate_window(4, 4)[0]

    def test_reversed(self):
        is_valid, window, error = validate_window(8, -3)
        assert not is_valid
        assert window == (8, -3)
        assert "above" in error

    def test_not_integer(self):
        is_valid, window, _ = validate_window("a", 3)
        assert not is_valid
        assert window is None
