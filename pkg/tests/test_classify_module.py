import math

import pytest

from problem_module import check_conditions
from timemap_module import compute_endpoints
from classify_module import classify
from classify_module import empirical_shape
from stage_modules import analyze_problem
from data_dicts import fixture_catalog
from data_dicts import fixture_variants

from custom_types import CurveTrace
from custom_types import TimeMapPoint
from custom_types import EndpointValue
from custom_types import TraceError


RUN = {"assertions": {}, "tol": 1e-10, "tau": 3.0}


def synthetic_trace(T_values):
    points = [TimeMapPoint(alpha=1.0 + i, T=T, lam=T * T) for i, T in enumerate(T_values)]
    return CurveTrace(points=points, alpha_grid_spec="synthetic")


## RULE BASED CLASSIFICATION

@pytest.mark.parametrize("name", sorted(fixture_catalog))
def test_catalog_shapes(catalog_problem, name):
    nl, _ = catalog_problem(name, strict=False)
    _, _, _, summary = analyze_problem(nl, RUN)

    assert summary.shape.shape == fixture_catalog[name]["expected"]["shape"]


@pytest.mark.parametrize("name, overrides, shape", fixture_variants)
def test_parameter_variants(catalog_problem, name, overrides, shape):
    nl, _ = catalog_problem(name, strict=False, **overrides)
    _, _, _, summary = analyze_problem(nl, RUN)

    assert summary.shape.shape == shape


def test_increasing_g_gives_a_decreasing_curve(catalog_problem):
    nl, _ = catalog_problem("E2", strict=False)
    lm, _, ep, summary = analyze_problem(nl, RUN)

    assert summary.shape.rule_fired == "g-increasing"
    assert summary.start == (ep.lambda_hat.value, lm.eta)
    assert math.isinf(summary.end[1])
    assert 0 < summary.end[0] < math.inf


def test_exponential_curve_is_decreasing_by_two_rules(catalog_problem):
    nl, _ = catalog_problem("E6", strict=False)
    _, _, _, summary = analyze_problem(nl, RUN)

    assert summary.shape.shape == "MonotoneDecreasing"
    assert summary.shape.rule_fired == "g-increasing"
    assert "convex-f" in summary.shape.supporting_rules


def test_zero_G_is_on_the_increasing_side(catalog_problem):
    nl, _ = catalog_problem("E3", strict=False)
    lm, _, _, summary = analyze_problem(nl, RUN)

    assert summary.shape.shape == "MonotoneIncreasing"
    assert summary.shape.rule_fired.endswith("+G>=0")
    assert summary.start[0] == pytest.approx(2.0 * math.pi ** 2, rel=1e-7)
    assert summary.start[1] == pytest.approx(4.0, abs=1e-9)
    assert summary.end == (math.inf, math.inf)


def test_bounded_quadratic_is_subset_shaped(catalog_problem):
    nl, _ = catalog_problem("E5", strict=False)
    _, _, _, summary = analyze_problem(nl, RUN)

    assert summary.shape.shape == "SubsetShaped"
    assert summary.end[1] == pytest.approx(4.0, abs=1e-9)
    assert math.isinf(summary.end[0])
    assert "bounded-concave+G<0" in [summary.shape.rule_fired] + summary.shape.supporting_rules


def test_unresolved_G_leaves_the_curve_uncovered(catalog_problem):
    nl, lm = catalog_problem("E4")
    cond = check_conditions(nl, lm)
    ep = compute_endpoints(nl, lm, cond)
    ep.G = EndpointValue(value=math.nan, error=None, branch="unresolved")
    summary = classify(nl, lm, cond, ep)

    assert summary.shape.shape == "NotCovered"
    assert summary.shape.rule_fired == "none"
    assert "G unresolved" in summary.shape.diagnostics


## EMPIRICAL CLASSIFICATION

@pytest.mark.parametrize("T_values, shape", [
    ([5.0, 4.0, 3.0, 2.0, 1.5, 1.2, 1.1, 1.0],      "MonotoneDecreasing"),
    ([1.0, 1.5, 2.0, 4.0, 5.0, 6.0, 8.0, 9.0],      "MonotoneIncreasing"),
    ([3.0, 2.0, 1.5, 1.2, 1.4, 2.5, 4.0, 5.0],      "SubsetShaped"),
    ([1.0, 2.0, 3.0, 4.0, 3.5, 2.0, 1.5, 1.0],      "NotCovered"),
    ([3.0, 2.0, 2.5, 3.0, 2.5, 2.0, 2.5, 3.0],      "NotCovered"),
    ([2.0] * 8,                                     "NotCovered"),
])
def test_empirical_shape(T_values, shape):
    assert empirical_shape(synthetic_trace(T_values)).shape == shape


def test_dead_band_ignores_roundoff_steps():
    T_values = [3.0, 2.0, 2.0 * (1 + 1e-9), 1.5, 1.0, 0.8, 0.6, 0.5]
    assert empirical_shape(synthetic_trace(T_values)).shape == "MonotoneDecreasing"


@pytest.mark.parametrize("T_values", [[2.0], [5.0, 4.0, 3.0, 2.0], [3.0, 2.0, 1.5, 2.5, 4.0, 5.0, 6.0]])
def test_short_traces_are_not_classified(T_values):
    with pytest.raises(TraceError, match="at least 8 points"):
        empirical_shape(synthetic_trace(T_values))
