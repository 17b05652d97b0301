import json
import math

import pandas as pd
import pytest

from SPCurve import SPCurve
from cmdline_module import merge_run_parameters
from check_param_module import build_run_config
from stage_modules import cmd_analyze
from stage_modules import cmd_trace
from stage_modules import cmd_verify
from stage_modules import cmd_fixtures
from helper_functions import jsonable
from helper_functions import get_fixture
from data_dicts import fixture_catalog

from custom_types import FixtureError
from custom_types import ParameterError
from custom_types import TimeMapDomainError


def run_for(**cmdline_params):
    return build_run_config(merge_run_parameters(cmdline_params))


## ANALYZE

def test_analysis_report(tmp_path):
    path = tmp_path / "report.json"
    report = cmd_analyze(run_for(fixture="E3", json=str(path)))

    assert report.classification.shape == "MonotoneIncreasing"
    assert report.files == {"json": str(path)}

    content = json.loads(path.read_text())
    assert list(content) == ["input", "landmarks", "conditions", "endpoints", "classification", "warnings", "files"]
    assert content["input"]["parameters"] == {"sigma": 1.0}
    assert content["input"]["F_mode"] == "closed_form"
    assert content["landmarks"]["eta"] == pytest.approx(4.0)
    assert content["endpoints"]["kappa"]["value"] == "inf"
    assert content["classification"]["start"][0] == pytest.approx(2.0 * math.pi ** 2, rel=1e-7)
    assert content["classification"]["end"] == ["inf", "inf"]


def test_report_of_an_infinite_G(tmp_path):
    path = tmp_path / "report.json"
    cmd_analyze(run_for(fixture="E7", json=str(path)))

    content = json.loads(path.read_text())
    assert content["endpoints"]["G"]["value"] == "-inf"
    assert content["endpoints"]["T_prime_eta"] == "-inf"


def test_analysis_of_a_curve_that_does_not_exist(tmp_path):
    path = tmp_path / "report.json"
    report = cmd_analyze(run_for(fixture="appendix-counterexample", json=str(path)))

    assert report.classification.shape == "CurveDoesNotExist"
    assert report.endpoints is None
    assert json.loads(path.read_text())["endpoints"] is None


## TRACE

def test_trace_files(tmp_path):
    csv_path, svg_path = tmp_path / "trace.csv", tmp_path / "trace.svg"
    curve, files = cmd_trace(run_for(fixture="E3", points="8", out=str(csv_path), svg=str(svg_path)))

    assert files == {"csv": str(csv_path), "svg": str(svg_path)}
    assert len(pd.read_csv(csv_path)) == len(curve.points) == 8
    assert svg_path.read_text().startswith("<?xml")


def test_trace_output_is_reproducible(tmp_path):
    outputs = []
    for i in range(2):
        csv_path, svg_path = tmp_path / f"trace_{i}.csv", tmp_path / f"trace_{i}.svg"
        cmd_trace(run_for(fixture="E7", points="12", out=str(csv_path), svg=str(svg_path)))
        outputs.append((csv_path.read_bytes(), svg_path.read_bytes()))

    assert outputs[0] == outputs[1]


def test_trace_without_a_zero_of_F(tmp_path):
    with pytest.raises(TimeMapDomainError):
        cmd_trace(run_for(fixture="appendix-counterexample", points="8", out=str(tmp_path / "trace.csv")))


## VERIFY

def test_verification_of_a_decreasing_curve():
    summary = cmd_verify(run_for(fixture="E2", points="8"))

    assert summary.passed
    assert len(summary.shots) == 8


## FIXTURES

def test_fixture_listing():
    listing = cmd_fixtures()

    assert [entry["name"] for entry in listing] == list(fixture_catalog)
    assert listing[0] == {"name": "E1", "expression": "ln(u)", "parameters": "", "shape": "SubsetShaped",
                          "constants": fixture_catalog["E1"]["constants"]}


def test_unknown_fixture():
    with pytest.raises(FixtureError, match="did you mean 'E3'"):
        get_fixture("E33")


def test_fixture_lookup_returns_a_copy():
    entry = get_fixture("E5")
    entry["parameters"]["a"] = 100.0

    assert fixture_catalog["E5"]["parameters"]["a"] == 1.0


## JSON

def test_jsonable_values():
    assert jsonable({"a": (1.0, math.inf), "b": [math.nan, -math.inf], 2: True}) == {"a": [1.0, "inf"], "b": [None, "-inf"], "2": True}


## ENTRY POINT

def test_entry_point_lists_fixtures(capsys):
    SPCurve(["SPCurve.py", "fixtures"])
    assert "FIXTURE CATALOG" in capsys.readouterr().out


def test_entry_point_analysis(tmp_path):
    path = tmp_path / "E7.json"
    SPCurve(["SPCurve.py", "analyze", "--fixture", "E7", "--json", str(path)])

    assert json.loads(path.read_text())["classification"]["shape"] == "SubsetShaped"


def test_check_only_mode_writes_nothing(tmp_path):
    path = tmp_path / "report.json"
    SPCurve(["SPCurve.py", "analyze", "--fixture", "E3", "--json", str(path), "--check"])

    assert not path.exists()


def test_entry_point_stops_on_bad_parameters():
    with pytest.raises(ParameterError):
        SPCurve(["SPCurve.py", "trace", "ln(u)", "-n", "4", "--spacing", "cubic"])
