'''
THIS MODULE EVALUATES THE TIME MAP T(alpha) = (1/sqrt2) int_0^alpha (F(alpha)-F(u))^(-1/2) du,
ITS FIRST AND SECOND DERIVATIVES, AND THE SCALARS THAT FIX THE ENDPOINTS OF
THE BIFURCATION CURVE: lambda_hat AT alpha = eta, kappa AT alpha = beta2, AND
THE BOUNDARY INTEGRAL G THAT DECIDES THE SIGN OF T' NEAR eta.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
from typing import Callable

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np

# NUMERIC ENGINE
from calculus_module import integrate
from calculus_module import estimate_limit_at_zero
from calculus_module import estimate_limit_at_infinity
from calculus_module import estimate_limit_at_point
from calculus_module import richardson_extrapolate

# PROBLEM FUNCTIONS
from problem_module import Nonlinearity
from problem_module import probe_limit
from problem_module import asserted_limit

## DATA DEPENDENCIES
from data_dicts import timemap_defaults
from data_dicts import limit_probe_defaults

## TYPE HINTS
from custom_types import Landmarks
from custom_types import ConditionReport
from custom_types import Limit_assertions
from custom_types import TimeMapPoint
from custom_types import EndpointValue
from custom_types import CurveEndpoints
from custom_types import QuadratureResult

## ERRORS
from custom_types import SPCurveError
from custom_types import QuadratureError
from custom_types import TimeMapDomainError
from custom_types import BranchUnresolvedError

SQRT2 = math.sqrt(2.0)


## SPECIALIZED HELPER FUNCTIONS

# check that alpha lies where the time map is defined
def check_domain(
        nl:     Nonlinearity,
        lm:     Landmarks,
        alpha:  float,
                ):

    if lm.eta is None:
        if lm.gamma is not None:
            raise TimeMapDomainError(f"T undefined for α ≤ γ={lm.gamma:.6g}: F(u) < 0 on (0, γ], so T(α) may not be well-defined", alpha)
        raise TimeMapDomainError("T undefined: F has no zero in (beta1, beta2), so T(α) may not be well-defined", alpha)

    if not lm.eta < alpha < lm.beta2:
        raise TimeMapDomainError(f"alpha={alpha!r} lies outside the admissible range (eta, beta2) = ({lm.eta:.10g}, {lm.beta2:.10g}): T(α) may not be well-defined", alpha)

    for fraction in timemap_defaults["domain_checks"]:
        u = fraction * alpha
        if not nl.gap_F(alpha, u) > 0:
            raise TimeMapDomainError(f"F(alpha) - F(u) <= 0 at u={u:.6g} for alpha={alpha!r}: T(α) may not be well-defined", alpha)

# accept a quadrature result, or raise with its partial sums
def _accepted   (
        result:     QuadratureResult,
        tol:        float,
        what:       str,
                ) ->    QuadratureResult:

    if result.diverged_to is not None:
        return result
    if result.converged or result.abs_error_estimate <= timemap_defaults["accept_factor"] * tol:
        return result

    raise QuadratureError(f"quadrature for {what} did not converge (error estimate {result.abs_error_estimate:.3g})", result.partial_sums)

# integrate fn(u, d) over [0, top] where d = top - u is exact
def _integrate_to   (
        fn:         Callable,
        top:        float,
        tol:        float,
        divergence: bool = False,
                    ) ->    QuadratureResult:

    def integrand(u, da, db):
        with np.errstate(all="ignore"):
            return fn(u, db)

    return integrate(integrand, 0.0, top, tol=tol, endpoint_singular="both", distance_aware=True, detect_divergence=divergence)

# -F(u) on (0, eta), where F(eta) = 0 holds exactly rather than to rounding
'''
the computed F(eta) is only zero to rounding, so F(eta) - F(u) stops tracking -F(u)
once |F(u)| falls to that level. the lower half of the interval uses -F(u) itself.
'''
def _minus_F    (
        nl:     Nonlinearity,
        eta:    float,
        u,
        d,
                ):

    lower = np.asarray(d) > 0.5 * eta
    if not np.any(lower):
        return nl.gap_F(eta, u, d)

    return np.where(lower, -np.asarray(nl.F(u), dtype=float), nl.gap_F(eta, u, d))


## TIME MAP AND ITS DERIVATIVES

# T(alpha) and lambda = T^2
def time_map(
        nl:     Nonlinearity,
        lm:     Landmarks,
        alpha:  float,
        tol:    float = 1e-10,
            ) ->    TimeMapPoint:

    check_domain(nl, lm, alpha)

    def integrand(u, d):
        return 1.0 / np.sqrt(nl.gap_F(alpha, u, d))

    result = _accepted(_integrate_to(integrand, alpha, tol), tol, f"T({alpha:.6g})")
    T = result.value / SQRT2

    return TimeMapPoint(alpha=alpha, T=T, lam=T * T)

# T'(alpha) = 1/(2 sqrt2 alpha) int_0^alpha (theta(alpha) - theta(u)) / B^(3/2) du
def time_map_derivative (
        nl:     Nonlinearity,
        lm:     Landmarks,
        alpha:  float,
        tol:    float = 1e-10,
                        ) ->    float:

    check_domain(nl, lm, alpha)

    def integrand(u, d):
        return nl.gap_theta(alpha, u, d) / nl.gap_F(alpha, u, d) ** 1.5

    result = _accepted(_integrate_to(integrand, alpha, tol), tol, f"T'({alpha:.6g})")

    return result.value / (2.0 * SQRT2 * alpha)

# T''(alpha) = 1/(4 sqrt2 alpha^2) int_0^alpha (3A^2 - 4AB - 2BC) / B^(5/2) du
def time_map_second_derivative  (
        nl:     Nonlinearity,
        lm:     Landmarks,
        alpha:  float,
        tol:    float = 1e-10,
                                ) ->    float:

    check_domain(nl, lm, alpha)

    def integrand(u, d):
        A = nl.gap_A(alpha, u, d)
        B = nl.gap_F(alpha, u, d)
        C = nl.gap_C(alpha, u, d)
        return (3.0 * A * A - 4.0 * A * B - 2.0 * B * C) / B ** 2.5

    result = _accepted(_integrate_to(integrand, alpha, tol), tol, f"T''({alpha:.6g})")

    return result.value / (4.0 * SQRT2 * alpha * alpha)


## CURVE ENDPOINTS

# lambda_hat = (1/2) (int_0^eta (-F)^(-1/2) du)^2, or inf when g(0+) is finite and <= 0
'''
branch rules at u -> 0+:
    lim u^p g(u) in [-inf, 0) for one of the probe powers p   -> finite, integrate
    lim g(u) in (-inf, 0]                                   -> inf
the user may assert "upg0" or "g0" instead.
'''
def lambda_hat  (
        nl:             Nonlinearity,
        lm:             Landmarks,
        tol:            float = 1e-10,
        assertions:     Limit_assertions = None,
                ) ->    EndpointValue:

    negative = None
    upg0 = asserted_limit(assertions, "upg0")
    if upg0 is not None:
        negative = upg0.sign < 0
    else:
        g0 = asserted_limit(assertions, "g0")
        if g0 is not None and g0.kind == "-inf":
            negative = True
        else:
            for power in limit_probe_defaults["lambda_hat_powers"]:
                estimate = probe_limit(None, "", lambda: estimate_limit_at_zero(lambda u: u ** (power - 1.0) * nl.f(u)))
                if estimate.kind == "-inf" or (estimate.kind == "finite" and estimate.sign < 0):
                    negative = True
                    break

    if not negative:
        g0 = probe_limit(assertions, "g0", lambda: estimate_limit_at_zero(nl.g))
        if g0.kind == "zero" or (g0.kind == "finite" and g0.sign <= 0):
            return EndpointValue(value=math.inf, error=None, branch="g0-finite-nonpositive")
        raise BranchUnresolvedError(f"cannot classify the lambda_hat branch: lim g(0+) is {g0.kind}; assert it with --assert-limit g0=CLASS")

    eta = lm.eta

    def integrand(u, d):
        return 1.0 / np.sqrt(_minus_F(nl, eta, u, d))

    result = _integrate_to(integrand, eta, tol, divergence=True)
    if result.diverged_to is not None:
        return EndpointValue(value=math.inf, error=None, branch="integral-divergent")
    result = _accepted(result, tol, "lambda_hat")

    return EndpointValue(value=0.5 * result.value ** 2, error=result.value * result.abs_error_estimate, branch="upg0-negative")

# the conditions that certify G < 0 without evaluating it, under H2 and (H3 or H4)
def G_certificates  (
        nl:     Nonlinearity,
        lm:     Landmarks,
        cond:   ConditionReport,
                    ) ->    list:

    if not (cond.holds("g_unimodal") and (cond.holds("geo_concave") or cond.holds("f_concave"))):
        return []

    certificates = []
    eta = lm.eta
    f_eta, df_eta = nl.f(eta), nl.df(eta)
    if nl.dtheta(eta) <= timemap_defaults["certificate_rtol"] * (abs(f_eta) + abs(eta * df_eta)):
        certificates.append("theta-prime-at-eta")
    if cond.u13f0_limit.kind in ("finite", "zero"):
        certificates.append("cube-root-bounded")
    if cond.f0_limit.kind in ("finite", "zero"):
        certificates.append("finite-f0")

    return certificates

# u^(1/3) f(u) bounded at 0 makes (-F)^(3/2) = O(u) there, so the integrand of G is below -c/u
def _G_diverges_at_zero (
        cond:   ConditionReport,
                        ) ->    bool:

    return cond is not None and (cond.u13f0_limit.kind in ("finite", "zero") or cond.f0_limit.kind in ("finite", "zero"))

# G = int_0^eta (theta(eta) - theta(u)) / (-F(u))^(3/2) du, possibly -inf
def big_G   (
        nl:     Nonlinearity,
        lm:     Landmarks,
        tol:    float = 1e-10,
        cond:   ConditionReport = None,
            ) ->    EndpointValue:

    eta = lm.eta
    certificates = G_certificates(nl, lm, cond) if cond is not None else []
    branch = "certified" if certificates else "divergent"
    if _G_diverges_at_zero(cond):
        return EndpointValue(value=-math.inf, error=None, branch=branch, certificates=certificates)

    theta_eta = -eta * nl.f(eta)
    def integrand(u, d):
        lower = np.asarray(d) > 0.5 * eta
        gap_theta = np.where(lower, theta_eta - np.asarray(nl.theta(u), dtype=float), nl.gap_theta(eta, u, d))
        return gap_theta / _minus_F(nl, eta, u, d) ** 1.5

    result = _integrate_to(integrand, eta, tol, divergence=True)
    if result.diverged_to is not None:
        return EndpointValue(value=math.inf * result.diverged_to, error=None, branch=branch, certificates=certificates)

    try:
        result = _accepted(result, tol, "G")
    except QuadratureError:
        if not certificates:
            raise
        # sign known, value not
        return EndpointValue(value=math.nan, error=None, branch="certified", certificates=certificates)

    return EndpointValue(value=result.value, error=result.abs_error_estimate,
                         branch="certified" if certificates else "integral", certificates=certificates)

# True when G is certainly negative
def G_is_negative   (
        G:      EndpointValue,
                    ) ->    bool:

    if G.certificates:
        return True
    if math.isnan(G.value):
        return False
    error = 0.0 if G.error is None else G.error

    return G.value < -(error + timemap_defaults["G_zero_band"])

# extrapolate T at a sequence of alphas approaching the end of the domain
def _extrapolated_kappa (
        nl:         Nonlinearity,
        lm:         Landmarks,
        alphas:     list,
        tol:        float,
                        ) ->    EndpointValue:

    values = [time_map(nl, lm, alpha, tol).T for alpha in alphas if alpha > lm.eta]
    if len(values) < 2:
        raise BranchUnresolvedError("too few admissible alphas to extrapolate kappa")
    T, error, _ = richardson_extrapolate(values, 2.0)

    return EndpointValue(value=T * T, error=2.0 * abs(T) * error, branch="")

# kappa = lim T(alpha)^2 as alpha -> beta2-
'''
branch rules, beta2 finite:
    lim f(u)/(beta2-u) in [0, inf)                              -> inf
    lim f(u)/((beta2-u)(-ln(beta2-u))^tau) in (0, inf]          -> finite
branch rules, beta2 = inf:
    lim g(u) = 0 -> inf,  in (0, inf) -> finite,  = inf -> 0
finite values are extrapolated from T at alphas approaching beta2.
'''
def kappa   (
        nl:             Nonlinearity,
        lm:             Landmarks,
        tol:            float = 1e-10,
        tau:            float = 3.0,
        assertions:     Limit_assertions = None,
        warnings:       list = None,
            ) ->    EndpointValue:

    warnings = [] if warnings is None else warnings
    beta2 = lm.beta2

    if math.isfinite(beta2):
        start = min(limit_probe_defaults["point_fraction"] * (beta2 - lm.eta), 0.5)
        fb2 = probe_limit(assertions, "fb2", lambda: estimate_limit_at_point(lambda u, d: nl.f(u) / d, beta2, "left", start=start, distance_aware=True))
        if fb2.kind == "zero" or (fb2.kind == "finite" and fb2.sign >= 0):
            return EndpointValue(value=math.inf, error=None, branch="fb2-finite")
        if fb2.kind != "+inf":
            raise BranchUnresolvedError(f"kappa branch unresolved: lim f(u)/(beta2-u) is {fb2.kind}; assert it with --assert-limit fb2=CLASS")

        fb2log = probe_limit(assertions, "fb2log", lambda: estimate_limit_at_point(lambda u, d: nl.f(u) / (d * (-math.log(d)) ** tau), beta2, "left", start=start, distance_aware=True))
        if fb2log.kind == "+inf" or (fb2log.kind == "finite" and fb2log.sign > 0):
            warnings.append("kappa: the log-weighted limit at beta2- is positive; the finite kappa branch is used. "
                            "The alternative reading of this hypothesis (limit equal to 0) would assign kappa = inf instead")
            k_lo, k_hi = timemap_defaults["kappa_bounded_k"]
            alphas = [beta2 - beta2 * 2.0 ** -k for k in range(k_lo, k_hi + 1)]
            estimate = _extrapolated_kappa(nl, lm, alphas, tol)
            estimate.branch = "fb2log-positive"
            return estimate
        raise BranchUnresolvedError(f"kappa branch unresolved: the log-weighted limit at beta2- is {fb2log.kind}; assert it with --assert-limit fb2log=CLASS")

    ginf = probe_limit(assertions, "ginf", lambda: estimate_limit_at_infinity(nl.g))
    if ginf.kind == "zero":
        return EndpointValue(value=math.inf, error=None, branch="ginf-zero")
    if ginf.kind == "+inf":
        return EndpointValue(value=0.0, error=None, branch="ginf-infinite")
    if ginf.kind == "finite" and ginf.sign > 0:
        first = math.floor(math.log2(lm.eta)) + 1
        alphas = [2.0 ** k for k in range(first, first + timemap_defaults["kappa_unbounded_steps"])]
        estimate = _extrapolated_kappa(nl, lm, alphas, tol)
        estimate.branch = "ginf-finite"
        return estimate

    raise BranchUnresolvedError(f"kappa branch unresolved: lim g(inf) is {ginf.kind}; assert it with --assert-limit ginf=CLASS")

# compute lambda_hat, kappa and G, recording unresolved branches as warnings
def compute_endpoints   (
        nl:             Nonlinearity,
        lm:             Landmarks,
        cond:           ConditionReport,
        tol:            float = 1e-10,
        tau:            float = 3.0,
        assertions:     Limit_assertions = None,
                        ) ->    CurveEndpoints:

    warnings = []

    def attempt(name, compute):
        try:
            return compute()
        except SPCurveError as error:
            warnings.append(f"{name}: {error}")
            return EndpointValue(value=math.nan, error=None, branch="unresolved")

    lam = attempt("lambda_hat", lambda: lambda_hat(nl, lm, tol, assertions))
    kap = attempt("kappa", lambda: kappa(nl, lm, tol, tau, assertions, warnings))
    G = attempt("G", lambda: big_G(nl, lm, tol, cond))

    T_prime_eta = G.value / (2.0 * SQRT2 * lm.eta) if not math.isnan(G.value) else None

    return CurveEndpoints(lambda_hat=lam, kappa=kap, G=G, T_prime_eta=T_prime_eta, warnings=warnings)
