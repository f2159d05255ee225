"""
Tests for the verify.py command-line front end.
"""
import json

import pytest

from verify import EXIT_OK, EXIT_USAGE, build_parser, main


class TestReports:
    """Tests for the suite subcommands."""

    def test_stems(self, capsys):
        assert main(["stems"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["suite"] == "stems"
        assert payload["pass"] is True

    def test_tsv_to_file(self, tmp_path, capsys):
        out = tmp_path / "report.tsv"
        assert main(["mahowald", "--pmax", "6", "--qmax", "16", "--format", "tsv", "--out", str(out)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert out.read_text(encoding="utf-8").startswith("key\texpected")

    def test_negative_range(self, capsys):
        assert main(["ahss", "--kmax", "-1"]) == EXIT_USAGE
        assert "kmax" in capsys.readouterr().err

    def test_verbose_after_subcommand(self):
        args = build_parser().parse_args(["ro", "-vv"])
        assert args.verbose == 2

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            main(["nonsense"])


class TestDiagram:
    """Tests for the diagram subcommand."""

    def test_text(self, capsys):
        assert main(["diagram", "X(11)", "-3", "8"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "3 -[ν]-> 7" in out
        assert out.startswith("# cells:")

    def test_dot(self, capsys):
        assert main(["diagram", "X(11)", "-3", "8", "--dot"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("digraph")

    def test_bad_label(self, capsys):
        assert main(["diagram", "Y(11)", "0", "8"]) == EXIT_USAGE
        assert "Y(11)" in capsys.readouterr().err

    def test_reversed_window(self):
        assert main(["diagram", "X(11)", "8", "0"]) == EXIT_USAGE
