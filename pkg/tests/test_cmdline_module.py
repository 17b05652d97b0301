from pathlib import Path

import pytest

from cmdline_module import interpret_cmdline_args
from cmdline_module import merge_run_parameters
from cmdline_module import did_you_mean
from check_param_module import check_run_parameters
from check_param_module import build_run_config
from check_helper_functions import check_Numeric
from check_helper_functions import check_Threads
from check_helper_functions import check_Expression
from check_helper_functions import check_Bindings
from check_helper_functions import check_Assertions
from check_helper_functions import check_Outfilename
from helper_functions import read_control_file
from helper_functions import split_assignments
from helper_functions import overwrite_dict
from helper_functions import format_number
from data_dicts import default_run_parameters

from custom_types import CommandLineError
from custom_types import ParameterError


TEST_DATA = Path(__file__).resolve().parent.parent / "Test_Data"


## COMMAND LINE

def test_flags_and_expression_are_read():
    result = interpret_cmdline_args(["SPCurve.py", "trace", "-(u - a)*(u - b)", "-n", "16",
                                     "--param", "a=1", "--param", "b=4", "--svg", "out.svg"])

    assert result["command"] == "trace"
    assert result["checkonly"] is False
    assert result["mcf"] == "?"
    assert result["params"] == {"expression": "-(u - a)*(u - b)", "points": "16", "parameters": "a=1 b=4", "svg": "out.svg"}


def test_check_only_mode():
    result = interpret_cmdline_args(["SPCurve.py", "analyze", "ln(u)", "--check"])
    assert result["checkonly"] is True
    assert result["params"] == {"expression": "ln(u)"}


def test_negative_number_is_an_expression():
    result = interpret_cmdline_args(["SPCurve.py", "analyze", "-1"])
    assert result["params"] == {"expression": "-1"}


@pytest.mark.parametrize("expression", ["-u", "-e"])
def test_negated_single_letter_is_an_expression(expression):
    result = interpret_cmdline_args(["SPCurve.py", "trace", expression, "-n", "8"])
    assert result["params"] == {"expression": expression, "points": "8"}


def test_unknown_short_option_is_not_a_flag():
    with pytest.raises(CommandLineError, match="MORE THAN ONE EXPRESSION"):
        interpret_cmdline_args(["SPCurve.py", "trace", "ln(u)", "-x", "8"])


@pytest.mark.parametrize("arguments, message", [
    (["SPCurve.py"],                                            "WITHOUT A COMMAND"),
    (["SPCurve.py", "analyse", "ln(u)"],                        "did you mean 'analyze'"),
    (["SPCurve.py", "trace", "ln(u)", "--pointz", "8"],         "did you mean '--points'"),
    (["SPCurve.py", "trace", "ln(u)", "-n", "8", "--points", "16"], "SET MULTIPLE TIMES"),
    (["SPCurve.py", "trace", "ln(u)", "-n"],                    "MISSING ITS VALUE"),
    (["SPCurve.py", "trace", "ln(u)", "exp(u)"],                "MORE THAN ONE EXPRESSION"),
])
def test_malformed_command_lines(arguments, message):
    with pytest.raises(CommandLineError, match=message):
        interpret_cmdline_args(arguments)


def test_did_you_mean():
    assert "fixtures" in did_you_mean("fixture", ["analyze", "fixtures"])
    assert did_you_mean("zzz", ["analyze", "fixtures"]) == ""


## CONTROL FILE AND PRECEDENCE

def test_control_file_is_read():
    params = read_control_file(TEST_DATA / "E5_family.txt")

    assert params["expression"] == "-(u - a)*(u - b)"
    assert params["parameters"] == "a=1 b=4"
    assert params["closed_form_F"] == "u*(-u^2/3 + (a + b)*u/2 - a*b)"
    assert params["u_max"] == "10"
    assert params["json"] == "E5_report.json"
    assert params["points"] == "?"


def test_command_line_overrides_control_file_overrides_defaults():
    param = merge_run_parameters({"u_max": "20"}, str(TEST_DATA / "E5_family.txt"))

    assert param["u_max"] == "20"
    assert param["parameters"] == "a=1 b=4"
    assert param["tol"] == default_run_parameters["tol"]


def test_missing_control_file():
    with pytest.raises(CommandLineError):
        merge_run_parameters({}, str(TEST_DATA / "no_such_file.txt"))


def test_overwrite_dict_keeps_known_values():
    assert overwrite_dict({"a": "1", "b": "2"}, {"a": "?", "b": "3", "c": "4"}) == {"a": "1", "b": "3"}


def test_overwrite_dict_has_a_single_behaviour():
    with pytest.raises(TypeError):
        overwrite_dict({"a": "?"}, {"a": "1"}, ow_to_unknown=True)


## PARAMETER CHECKS

@pytest.mark.parametrize("value, statement, kind, expected", [
    ("16",      "8<=x",             "i",    1),
    ("4",       "8<=x",             "i",    -1),
    ("6.4",     None,               "i",    -1),
    ("abc",     None,               "f",    -1),
    ("?",       "8<=x",             "i",    0),
    ("1e-3",    "1e-14<=x<=1e-3",   "f",    1),
    ("0.5",     "1e-14<=x<=1e-3",   "f",    -1),
    ("2",       "2<x",              "f",    -1),
    ("2.5",     "2<x",              "f",    1),
])
def test_check_numeric(value, statement, kind, expected):
    assert check_Numeric(value, statement, kind) == expected


def test_check_numeric_rejects_bad_statements():
    with pytest.raises(ValueError):
        check_Numeric("1", "x>1")


@pytest.mark.parametrize("threads, expected", [("?", 0), ("1", 1), ("0", -1), ("1.5", -1), ("100000", -2)])
def test_check_threads(threads, expected):
    assert check_Threads(threads) == expected


@pytest.mark.parametrize("expression, fixture, expected", [
    ("?",       "?",    -3),
    ("ln(u)",   "E1",   -2),
    ("ln(",     "?",    -1),
    ("?",       "E1",   0),
    ("ln(u)",   "?",    1),
])
def test_check_expression(expression, fixture, expected):
    assert check_Expression(expression, fixture) == expected


@pytest.mark.parametrize("parameters, expression, fixture, expected", [
    ("a=1 b=4",     "-(u-a)*(u-b)",     "?",    1),
    ("a=1,b=4",     "-(u-a)*(u-b)",     "?",    1),
    ("a=1",         "-(u-a)*(u-b)",     "?",    -2),
    ("?",           "-(u-a)*(u-b)",     "?",    -2),
    ("a=x b=4",     "-(u-a)*(u-b)",     "?",    -1),
    ("?",           "ln(u)",            "?",    0),
    ("sigma=2",     "?",                "E3",   1),
    ("?",           "?",                "E3",   0),
    ("q=1",         "?",                "E3",   -2),
])
def test_check_bindings(parameters, expression, fixture, expected):
    assert check_Bindings(parameters, expression, fixture) == expected


@pytest.mark.parametrize("assertions, expected", [
    ("?",                           0),
    ("g0=zero ginf=pos-finite",     1),
    ("g0",                          -1),
    ("g1=zero",                     -2),
    ("g0=small",                    -3),
])
def test_check_assertions(assertions, expected):
    assert check_Assertions(assertions) == expected


def test_check_output_names(tmp_path):
    assert check_Outfilename("?") == 0
    assert check_Outfilename(str(tmp_path / "trace.csv")) == 1
    assert check_Outfilename(str(tmp_path / "missing" / "trace.csv")) == -1


def test_misspecified_control_file_halts_the_run():
    param = merge_run_parameters({}, str(TEST_DATA / "bad_control.txt"))
    with pytest.raises(ParameterError, match="ERROR"):
        check_run_parameters(param)


def test_valid_parameters_pass(tmp_path):
    param = merge_run_parameters({"fixture": "E3", "json": str(tmp_path / "report.json")})
    par_check = check_run_parameters(param)

    assert par_check["fixture"] == 1
    assert par_check["expression"] == 0
    assert all(code >= 0 for code in par_check.values())


## RUN CONFIGURATION

def test_fixture_run_configuration():
    run = build_run_config(merge_run_parameters({"fixture": "E3", "parameters": "sigma=2"}))

    assert run["expression"] == "sigma - 1/sqrt(u)"
    assert run["bindings"] == {"sigma": 2.0}
    assert run["closed_form_F"] == "sigma*u - 2*sqrt(u)"
    assert run["expected"] is None
    assert run["u_max"] == 50.0
    assert run["points"] == 64
    assert run["tol"] == 1e-10


def test_expression_run_configuration():
    run = build_run_config(merge_run_parameters({"expression": "ln(u)", "u_max": "20",
                                                 "assert_limits": "g0=neg-divergent f0=neg-divergent"}))

    assert run["fixture"] is None
    assert run["bindings"] == {}
    assert run["closed_form_F"] is None
    assert run["u_max"] == 20.0
    assert run["assertions"] == {"g0": "neg-divergent", "f0": "neg-divergent"}
    assert run["out"] is None and run["json"] is None


def test_catalog_expectation_kept_without_overrides():
    run = build_run_config(merge_run_parameters({"fixture": "E7"}))
    assert run["expected"]["shape"] == "SubsetShaped"


## TEXT HELPERS

def test_split_assignments():
    assert split_assignments("a=1, b=4") == {"a": "1", "b": "4"}
    with pytest.raises(ValueError):
        split_assignments("a=1 a=2")
    with pytest.raises(ValueError):
        split_assignments("a")


@pytest.mark.parametrize("value, text", [
    (None,              "?"),
    (float("nan"),      "unresolved"),
    (float("inf"),      "inf"),
    (float("-inf"),     "-inf"),
    (2.0 / 3.0,         "0.666667"),
])
def test_format_number(value, text):
    assert format_number(value) == text
