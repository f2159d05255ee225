"""
Tests for services.suite_service: suite dispatch, report shape and rendering.
"""
import json

import pytest

from services.suite_service import (
    SUITES,
    SuiteParams,
    SuiteReport,
    _run_task,
    canonical_json,
    render_json,
    render_tsv,
    run_suite,
)
from utils.errors import ParameterError

SMALL = SuiteParams(kmax=3, mmax=12, pmax=8, qmax=32)


def _fails(arg):
    raise RuntimeError(f"bad argument {arg}")


class TestSuiteParams:
    """Tests for SuiteParams."""

    def test_defaults(self):
        assert SuiteParams().to_dict() == {
            "kmax": 16,
            "mmax": 63,
            "pmax": 64,
            "qmax": 256,
            "deg_bound": "4k+8",
        }

    def test_jobs_not_serialized(self):
        assert "jobs" not in SuiteParams(jobs=3).to_dict()

    @pytest.mark.parametrize("kwargs", [{"jobs": 0}, {"kmax": -1}, {"qmax": -4}, {"deg_bound": -1}])
    def test_rejects(self, kwargs):
        with pytest.raises(ParameterError):
            SuiteParams(**kwargs)


class TestRunSuite:
    """Tests for run_suite."""

    @pytest.mark.parametrize("name", SUITES)
    def test_each_suite_passes(self, name):
        report = run_suite(name, SMALL)
        assert report.passed, report.first_failure()
        assert report.items

    def test_all(self):
        report = run_suite("all", SMALL)
        assert report.passed
        assert report.suite == "all"
        assert report.pass_count == len(report.items)

    def test_all_with_kmax_zero(self):
        assert run_suite("all", SuiteParams(kmax=0, mmax=4, pmax=4, qmax=8)).passed

    def test_unknown_suite(self):
        with pytest.raises(ParameterError):
            run_suite("everything", SMALL)

    def test_independent_of_jobs(self):
        serial = run_suite("mahowald", SuiteParams(pmax=8, qmax=32, jobs=1))
        parallel = run_suite("mahowald", SuiteParams(pmax=8, qmax=32, jobs=2))
        assert render_json(serial) == render_json(parallel)

    def test_stems_keys(self):
        keys = [item["key"] for item in run_suite("stems").items]
        assert "stems eta_cubed_eq_4nu" in keys
        assert keys[-1] == "stems table"


class TestFailures:
    """Tests for failing items."""

    def test_exception_becomes_item(self):
        items = _run_task((_fails, 3))
        assert len(items) == 1
        assert items[0]["pass"] is False
        assert items[0]["error"] == "Failed to run fails: bad argument 3"

    def test_first_failure(self):
        items = [
            {"key": "a", "pass": True},
            {"key": "b", "pass": False},
            {"key": "c", "pass": False},
        ]
        report = SuiteReport("stems", {}, items)
        assert not report.passed
        assert report.fail_count == 2
        assert report.first_failure()["key"] == "b"


class TestRendering:
    """Tests for canonical_json, render_json and render_tsv."""

    def test_canonical_json(self):
        assert canonical_json({"b": 1, "a": [1, "ν"]}) == '{"a":[1,"ν"],"b":1}'

    def test_json_report(self):
        payload = json.loads(render_json(run_suite("stems")))
        assert set(payload) == {"suite", "params", "items", "passCount", "failCount", "pass"}
        assert payload["pass"] is True
        assert payload["failCount"] == 0

    def test_wall_time_not_rendered(self):
        assert "wall" not in render_json(run_suite("stems"))

    def test_tsv(self):
        lines = render_tsv(run_suite("stems")).splitlines()
        assert lines[0] == "key\texpected\tcomputed\tpass\tcitation"
        assert all(len(line.split("\t")) == 5 for line in lines)
        assert lines[1].split("\t")[3] == "true"
