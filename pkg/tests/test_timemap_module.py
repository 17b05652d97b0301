import math

import numpy as np
import pytest

from expr_module import parse
from problem_module import build_nonlinearity
from problem_module import locate_landmarks
from problem_module import check_conditions
from timemap_module import time_map
from timemap_module import time_map_derivative
from timemap_module import time_map_second_derivative
from timemap_module import lambda_hat
from timemap_module import big_G
from timemap_module import G_certificates
from timemap_module import G_is_negative
from timemap_module import kappa
from timemap_module import compute_endpoints

from custom_types import EndpointValue
from custom_types import TimeMapDomainError


## TIME MAP

def test_time_map_point(catalog_problem):
    nl, lm = catalog_problem("E1")
    point = time_map(nl, lm, 5.0)

    assert point.T > 0
    assert point.lam == point.T * point.T


@pytest.mark.parametrize("alpha", [2.2, 2.5, 2.8])
def test_derivative_matches_finite_differences(catalog_problem, alpha):
    nl, lm = catalog_problem("E7")
    h = 1e-4
    central = (time_map(nl, lm, alpha + h).T - time_map(nl, lm, alpha - h).T) / (2 * h)

    assert time_map_derivative(nl, lm, alpha) == pytest.approx(central, rel=1e-4, abs=1e-6)


def test_second_derivative_matches_finite_differences(catalog_problem):
    nl, lm = catalog_problem("E7")
    alpha, h = 2.5, 1e-4
    central = (time_map_derivative(nl, lm, alpha + h) - time_map_derivative(nl, lm, alpha - h)) / (2 * h)

    assert time_map_second_derivative(nl, lm, alpha) == pytest.approx(central, rel=1e-4, abs=1e-6)


@pytest.mark.parametrize("alpha", [3.0, 5.0, 20.0])
def test_time_map_decreases_when_g_increases(catalog_problem, alpha):
    nl, lm = catalog_problem("E2")
    assert time_map_derivative(nl, lm, alpha) < 0


def test_start_of_the_curve_is_the_limit_of_T_squared(catalog_problem):
    nl, lm = catalog_problem("E3")
    near = time_map(nl, lm, lm.eta * (1.0 + 1e-9)).lam

    assert near == pytest.approx(2.0 * math.pi ** 2, rel=1e-3)


@pytest.mark.parametrize("alpha", [None, 0.0, 100.0])
def test_alpha_outside_the_domain(catalog_problem, alpha):
    nl, lm = catalog_problem("E7")
    alpha = lm.eta if alpha is None else alpha
    with pytest.raises(TimeMapDomainError) as error:
        time_map(nl, lm, alpha)
    assert "may not be well-defined" in str(error.value)


def test_time_map_without_a_zero_of_F():
    nl = build_nonlinearity(parse("-u^2 + 2.1*u - 1"), {}, None, 1.02)
    lm = locate_landmarks(nl, strict=False)
    with pytest.raises(TimeMapDomainError, match="γ=1"):
        time_map(nl, lm, 1.01)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.0])
def test_time_map_undefined_up_to_gamma(catalog_problem, alpha):
    nl, lm = catalog_problem("appendix-counterexample", strict=False)

    assert lm.gamma == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(TimeMapDomainError, match="γ=1"):
        time_map(nl, lm, alpha)


@pytest.mark.parametrize("name, alphas", [
    ("E1",  [3.0, 5.0, 10.0, 30.0]),
    ("E3",  [5.0, 8.0, 15.0, 30.0]),
    ("E5",  [2.5, 3.0, 3.5, 3.9]),
])
def test_curvature_inequality_for_concave_f(catalog_problem, name, alphas):
    # alpha T'' + 2 T' > 0 when f'' < 0
    nl, lm = catalog_problem(name)
    for alpha in alphas:
        assert alpha * time_map_second_derivative(nl, lm, alpha) + 2.0 * time_map_derivative(nl, lm, alpha) > 0


@pytest.mark.parametrize("overrides", [
    {},
    {"a": 1.0, "b": 1.0, "c": 2.0},
    {"a": 1.0, "b": 0.0, "c": 2.0},
])
def test_curvature_inequality_for_exponential_family(catalog_problem, overrides):
    nl, lm = catalog_problem("E9", strict=False, **overrides)
    for factor in (1.2, 2.0, 4.0, 8.0):
        alpha = min(factor * lm.eta, 0.9 * lm.u_max)
        assert alpha * time_map_second_derivative(nl, lm, alpha) + 2.0 * time_map_derivative(nl, lm, alpha) > 0, alpha


@pytest.mark.parametrize("name", ["E4", "E7", "E8"])
def test_q_increases_between_sigma_and_rho(catalog_problem, name):
    nl, lm = catalog_problem(name)
    assert lm.rho is not None
    width = lm.rho - lm.sigma
    u = np.linspace(lm.sigma + 1e-3 * width, lm.rho - 1e-3 * width, 50)

    assert np.all(np.diff(nl.q(u)) > 0)


## ENDPOINTS

def test_lambda_hat_of_square_root_singularity(catalog_problem):
    nl, lm = catalog_problem("E3")
    result = lambda_hat(nl, lm)

    assert result.branch == "upg0-negative"
    assert result.value == pytest.approx(2.0 * math.pi ** 2, rel=1e-7)


@pytest.mark.parametrize("name, expected", [("E1", 8.539), ("E7", 3.043)])
def test_lambda_hat_against_known_values(catalog_problem, name, expected):
    nl, lm = catalog_problem(name)
    assert lambda_hat(nl, lm).value == pytest.approx(expected, abs=1e-2)


def test_lambda_hat_is_infinite_when_g_is_bounded_at_zero():
    nl = build_nonlinearity(parse("u^2 - u"), {}, parse("u^3/3 - u^2/2"))
    lm = locate_landmarks(nl)
    result = lambda_hat(nl, lm)

    assert lm.eta == pytest.approx(1.5)
    assert math.isinf(result.value)
    assert result.branch == "g0-finite-nonpositive"


def test_G_vanishes_for_square_root_singularity(catalog_problem):
    nl, lm = catalog_problem("E3")
    G = big_G(nl, lm)

    assert G.value == pytest.approx(0.0, abs=1e-6)
    assert not G_is_negative(G)


def test_G_positive_for_E4(catalog_problem):
    nl, lm = catalog_problem("E4")
    G = big_G(nl, lm, cond=check_conditions(nl, lm))

    assert G.value == pytest.approx(0.1497, abs=3e-3)
    assert G.certificates == []
    assert not G_is_negative(G)


def test_G_certified_negative_for_logarithm(catalog_problem):
    nl, lm = catalog_problem("E1")
    G = big_G(nl, lm, cond=check_conditions(nl, lm))

    assert "cube-root-bounded" in G.certificates
    assert G.branch == "certified"
    assert G_is_negative(G)


@pytest.mark.parametrize("name, overrides", [
    ("E1",  {}),
    ("E5",  {}),
    ("E6",  {}),
    ("E7",  {}),
    ("E8",  {}),
    ("E9",  {}),
    ("E9",  {"a": 1.0, "b": 1.0, "c": 2.0}),
    ("E9",  {"a": 1.0, "b": 0.0, "c": 2.0}),
])
def test_G_is_minus_infinity_when_cube_root_of_f_stays_bounded(catalog_problem, name, overrides):
    nl, lm = catalog_problem(name, strict=False, **overrides)
    G = big_G(nl, lm, cond=check_conditions(nl, lm))

    assert G.value == -math.inf
    assert G.error is None
    assert G_is_negative(G)


@pytest.mark.parametrize("name", ["E1", "E7", "E8"])
def test_G_divergence_found_by_quadrature_alone(catalog_problem, name):
    nl, lm = catalog_problem(name)
    G = big_G(nl, lm)

    assert G.value == -math.inf
    assert G.branch == "divergent"
    assert G.certificates == []


def test_certificates_need_unimodal_g_and_a_concavity(catalog_problem):
    nl, lm = catalog_problem("E2")
    cond = check_conditions(nl, lm)

    assert not cond.holds("g_unimodal")
    assert G_certificates(nl, lm, cond) == []


def test_infinite_G_gives_infinite_slope_at_eta(catalog_problem):
    nl, lm = catalog_problem("E7")
    ep = compute_endpoints(nl, lm, check_conditions(nl, lm))

    assert ep.G.value == -math.inf
    assert ep.T_prime_eta == -math.inf


@pytest.mark.parametrize("value, error, certificates, negative", [
    (-1.0,      1e-6,   [],                 True),
    (-1e-9,     1e-6,   [],                 False),
    (0.0,       None,   [],                 False),
    (-math.inf, None,   [],                 True),
    (math.nan,  None,   [],                 False),
    (math.nan,  None,   ["finite-f0"],      True),
])
def test_G_sign_decision(value, error, certificates, negative):
    G = EndpointValue(value=value, error=error, branch="integral", certificates=certificates)
    assert G_is_negative(G) is negative


@pytest.mark.parametrize("name, value, branch", [
    ("E1",  math.inf,   "ginf-zero"),
    ("E6",  0.0,        "ginf-infinite"),
    ("E7",  math.inf,   "fb2-finite"),
    ("E5",  math.inf,   "fb2-finite"),
])
def test_kappa_branches(catalog_problem, name, value, branch):
    nl, lm = catalog_problem(name)
    result = kappa(nl, lm)

    assert result.branch == branch
    assert result.value == value


def test_kappa_finite_for_asymptotically_linear_f(catalog_problem):
    nl, lm = catalog_problem("E2")
    result = kappa(nl, lm)

    assert result.branch == "ginf-finite"
    assert result.value == pytest.approx(math.pi ** 2 / 4.0, rel=1e-2)


def test_kappa_follows_asserted_limits(catalog_problem):
    nl, lm = catalog_problem("E1")
    assert kappa(nl, lm, assertions={"ginf": "pos-divergent"}).value == 0.0


def test_endpoints_collect_unresolved_branches(catalog_problem):
    nl, lm = catalog_problem("E1")
    cond = check_conditions(nl, lm)
    ep = compute_endpoints(nl, lm, cond, assertions={"ginf": "neg-finite"})

    assert ep.kappa.branch == "unresolved"
    assert math.isnan(ep.kappa.value)
    assert any(warning.startswith("kappa:") for warning in ep.warnings)
    assert ep.lambda_hat.value == pytest.approx(8.539, abs=1e-2)
