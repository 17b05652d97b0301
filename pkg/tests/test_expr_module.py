import math

import numpy as np
import pytest

from expr_module import parse
from expr_module import to_text
from expr_module import differentiate
from expr_module import compile_expr
from expr_module import evaluate
from expr_module import tokenize

from custom_types import ExprSyntaxError
from custom_types import ExprUnknownIdentifierError
from custom_types import ExprEvaluationError
from custom_types import ExprDifferentiationError


@pytest.mark.parametrize("text, u, bindings, expected", [
    ("ln(u)",                   math.e,     {},                     1.0),
    ("sigma - 1/sqrt(u)",       4.0,        {"sigma": 1.0},         0.5),
    ("(1 - u^2)*(u - 3)",       2.0,        {},                     3.0),
    ("u**2 + 1",                3.0,        {},                     10.0),
    ("-(u - 1)*(u - 2)",        0.0,        {},                     -2.0),
    ("2^3^2",                   1.0,        {},                     512.0),
    ("-u^2",                    3.0,        {},                     -9.0),
    ("a + b*u - c*exp(-u)",     0.0,        {"a": -1, "b": 1, "c": 2}, -3.0),
    ("log(e) + pi - pi",        7.0,        {},                     1.0),
])
def test_evaluate(text, u, bindings, expected):
    assert evaluate(parse(text), u, bindings) == pytest.approx(expected, rel=1e-14, abs=1e-14)


def test_parameters_are_collected():
    assert set(parse("sigma*u - u^(-p)").parameters) == {"sigma", "p"}
    assert len(parse("ln(u) + pi").parameters) == 0


def test_double_star_is_power():
    assert [token[1] for token in tokenize("u**2")] == ["u", "^", "2", ""]


@pytest.mark.parametrize("text, bindings", [
    ("sigma*u - u^(-p)",                            {"sigma": 1.0, "p": 0.5}),
    ("4 - sqrt(u) - 1/sqrt(u)",                     {}),
    ("-(u - a)*(u - b)",                            {"a": 1.0, "b": 4.0}),
    ("-15*u^4 + 140*u^3 - 450*u^2 + 540*u - 138",   {}),
    ("u/(u - 3)/(u + 1)",                           {}),
    ("(u^2)^0.5 - 2^(u - 1)",                       {}),
    ("-(-u)",                                       {}),
])
def test_printed_text_reparses_to_the_same_function(text, bindings):
    ast = parse(text)
    again = parse(to_text(ast))
    points = np.array([0.5, 1.5, 2.25])

    np.testing.assert_allclose(compile_expr(again, bindings)(points), compile_expr(ast, bindings)(points), rtol=1e-14)
    assert to_text(again) == to_text(ast)


@pytest.mark.parametrize("text, order, bindings, u, expected", [
    ("ln(u)",               1,  {},                             2.0,    0.5),
    ("ln(u)",               2,  {},                             2.0,    -0.25),
    ("sigma - 1/sqrt(u)",   2,  {"sigma": 1.0},                 4.0,    -0.75 * 4.0 ** -2.5),
    ("sigma*u - u^(-p)",    1,  {"sigma": 1.0, "p": 0.5},       4.0,    1.0 + 0.5 * 4.0 ** -1.5),
    ("exp(2*u)",            1,  {},                             0.0,    2.0),
    ("u^3",                 2,  {},                             2.0,    12.0),
    ("2^u",                 1,  {},                             1.0,    2.0 * math.log(2.0)),
    ("u^u",                 1,  {},                             1.0,    1.0),
])
def test_differentiate(text, order, bindings, u, expected):
    assert evaluate(differentiate(parse(text), order), u, bindings) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("text, bindings", [
    ("a + b*u - c*exp(-u)",                 {"a": -1.0, "b": 1.0, "c": 2.0}),
    ("(1 - u^2)*(u - 3)",                   {}),
    ("4 - sqrt(u) - 1/sqrt(u)",             {}),
    ("u*ln(u)/(1 + u^2)",                   {}),
])
def test_derivative_matches_finite_differences(text, bindings):
    ast = parse(text)
    f = compile_expr(ast, bindings)
    df = compile_expr(differentiate(ast, 1), bindings)
    d2f = compile_expr(differentiate(ast, 2), bindings)
    h = 1e-5

    for u in (0.7, 1.3, 2.9):
        assert df(u) == pytest.approx((f(u + h) - f(u - h)) / (2 * h), rel=1e-7, abs=1e-8)
        assert d2f(u) == pytest.approx((df(u + h) - df(u - h)) / (2 * h), rel=1e-7, abs=1e-8)


@pytest.mark.parametrize("text, offset", [
    ("u + $",       4),
    ("(u + 1",      6),
    ("u 2",         2),
    ("",            0),
])
def test_syntax_error_reports_offset(text, offset):
    with pytest.raises(ExprSyntaxError) as error:
        parse(text)
    assert error.value.offset == offset


def test_unknown_identifier_lists_valid_names():
    with pytest.raises(ExprUnknownIdentifierError) as error:
        parse("sigma*u - foo", parameters=["sigma"])
    assert error.value.name == "foo"
    assert "sigma" in error.value.valid_names
    assert "u" in error.value.valid_names


def test_abs_is_not_differentiable():
    with pytest.raises(ExprDifferentiationError):
        differentiate(parse("abs(u - 1)"), 1)


def test_derivative_order_is_checked():
    with pytest.raises(ExprDifferentiationError):
        differentiate(parse("u"), 3)


def test_evaluation_outside_the_domain():
    with pytest.raises(ExprEvaluationError):
        evaluate(parse("ln(u)"), -1.0)
    with pytest.raises(ExprEvaluationError):
        compile_expr(parse("sqrt(u)"))(np.array([-1.0, 1.0]))
    with pytest.raises(ExprEvaluationError):
        evaluate(parse("sigma*u"), 1.0)


def test_array_and_scalar_paths_agree():
    fn = compile_expr(parse("a + b*u - c*exp(-u)"), {"a": 1.0, "b": 0.0, "c": 2.0})
    points = np.linspace(0.1, 5.0, 7)

    np.testing.assert_allclose(fn(points), [fn(float(u)) for u in points], rtol=1e-13)
