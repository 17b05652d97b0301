'''
THIS MODULE TURNS A PARSED EXPRESSION INTO A NONLINEARITY OBJECT THAT BUNDLES
f, ITS DERIVATIVES, THE ANTIDERIVATIVE F AND THE DERIVED FUNCTIONS g AND theta.
IT THEN LOCATES THE LANDMARKS OF THE NONLINEARITY BY SCANNING FOR SIGN CHANGES,
AND CHECKS WHICH OF THE SHAPE CONDITIONS HOLD ON THE SCANNED RANGE.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
import threading
from typing import Callable, Optional

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np
from numpy.polynomial.legendre import leggauss

# EXPRESSION FUNCTIONS
from expr_module import ExprAst
from expr_module import Binary
from expr_module import Var
from expr_module import parse
from expr_module import to_text
from expr_module import differentiate
from expr_module import compile_expr

# NUMERIC ENGINE
from calculus_module import integrate
from calculus_module import find_root
from calculus_module import estimate_limit_at_zero
from calculus_module import estimate_limit_at_infinity

## DATA DEPENDENCIES
from data_dicts import scan_defaults
from data_dicts import timemap_defaults
from data_dicts import quadrature_defaults
from data_dicts import limit_classes
from data_dicts import fallback_u_max

## TYPE HINTS
from custom_types import Param_bindings
from custom_types import Limit_assertions
from custom_types import LimitEstimate
from custom_types import Landmarks
from custom_types import ConditionVerdict
from custom_types import ConditionReport

## ERRORS
from custom_types import SPCurveError
from custom_types import ExprEvaluationError
from custom_types import IntegrabilityError
from custom_types import ClosedFormMismatchError
from custom_types import ConditionError
from custom_types import CurveDoesNotExistError


## SPECIALIZED HELPER FUNCTIONS

# evaluate fn on an array, falling back to pointwise evaluation with NaN where fn is undefined
def _tolerant   (
        fn:     Callable,
                ) ->    Callable:

    def evaluate(u):
        try:
            return fn(u)
        except ExprEvaluationError:
            if np.ndim(u) == 0:
                return math.nan
        flat = []
        for x in np.ravel(u):
            try:
                flat.append(fn(float(x)))
            except ExprEvaluationError:
                flat.append(math.nan)
        return np.reshape(np.array(flat, dtype=float), np.shape(u))

    return evaluate

# Gauss-Legendre nodes on [0, 1] used for short gaps and antiderivative panels
_GL_X, _GL_W = leggauss(quadrature_defaults["local_gl_order"])
_GL_S = 0.5 * (1.0 + _GL_X)
_GL_H = 0.5 * _GL_W

# integrate fn over [alpha - d, alpha] for every d in an array
def _local_gap  (
        fn:     Callable,
        alpha:  float,
        d:      np.ndarray,
                ) ->    np.ndarray:

    points = alpha - d[:, None] * _GL_S[None, :]
    values = fn(points)

    return d * np.sum(values * _GL_H[None, :], axis=1)


## NUMERIC ANTIDERIVATIVE

class NumericAntiderivative:
    '''
    F(u) = int_0^u f(t) dt for an f without a closed form antiderivative.
    the integral over (0, lower] is taken by singular quadrature, the rest is tabulated on
    breakpoints that double up to 1 and grow by a fixed ratio beyond. values between
    breakpoints are completed by Gauss-Legendre. the table is extended lazily, so that F
    can be evaluated beyond u_max.
    '''
    def __init__(self, f: Callable, u_max: float, tol: float = 1e-10):
        self.f = f
        self.lower = scan_defaults["numeric_F_lower"]
        self._lock = threading.Lock()

        head = integrate(f, 0.0, self.lower, tol=tol * self.lower, endpoint_singular="at_a")
        if head.diverged_to is not None:
            raise IntegrabilityError("F(u) = int_0^u f(t) dt diverges at u = 0+: f must be integrable at 0")
        if not math.isfinite(head.value):
            raise IntegrabilityError("F(u) = int_0^u f(t) dt can not be evaluated near u = 0+")

        self.head = head.value
        f_lower = float(f(self.lower))
        self.head_exponent = self.lower * f_lower / self.head if self.head != 0 else 1.0

        self.breaks = np.array([self.lower])
        self.values = np.array([self.head])
        self._extend(max(u_max, 1.0))

    # extend the breakpoint table until it covers target
    def _extend(self, target: float):
        with self._lock:
            if self.breaks[-1] >= target:
                return
            edges = [self.breaks[-1]]
            while edges[-1] < target:
                edge = edges[-1]
                edges.append(2.0 * edge if edge < 1.0 else edge * scan_defaults["numeric_F_ratio"])
                if edge < 1.0 and edges[-1] > 1.0:
                    edges[-1] = 1.0
            edges = np.array(edges)
            widths = np.diff(edges)
            panels = widths * np.sum(self.f(edges[:-1, None] + widths[:, None] * _GL_S[None, :]) * _GL_H[None, :], axis=1)
            self.values = np.concatenate((self.values, self.values[-1] + np.cumsum(panels)))
            self.breaks = np.concatenate((self.breaks, edges[1:]))

    def __call__(self, u):
        x = np.asarray(u, dtype=float)
        if np.any(x < 0):
            raise ExprEvaluationError("F is only defined for u >= 0")
        top = float(np.max(x)) if x.size else 0.0
        if top > self.breaks[-1]:
            self._extend(top)

        flat = np.ravel(x)
        result = np.zeros_like(flat)
        small = (flat > 0) & (flat < self.lower)
        result[small] = self.head * (flat[small] / self.lower) ** self.head_exponent

        large = flat >= self.lower
        if np.any(large):
            point = flat[large]
            index = np.clip(np.searchsorted(self.breaks, point, side="right") - 1, 0, len(self.breaks) - 1)
            start = self.breaks[index]
            width = point - start
            tail = width * np.sum(self.f(start[:, None] + width[:, None] * _GL_S[None, :]) * _GL_H[None, :], axis=1)
            result[large] = self.values[index] + tail

        if np.ndim(u) == 0:
            return float(result[0])
        return result.reshape(x.shape)


## NONLINEARITY

class Nonlinearity:
    '''
    f with its derivatives and the derived functions used by the time map:
        F       = int_0^u f
        g       = f/u,              g' = -theta'/u^2
        theta   = 2F - u f,         theta' = f - u f',      theta'' = -u f''
        q       = -u theta'/theta
    every method accepts a float or a numpy array.
    '''
    def __init__(   self,
                    ast:            ExprAst,
                    bindings:       Param_bindings = None,
                    closed_form_F:  Optional[ExprAst] = None,
                    u_max:          float = fallback_u_max,
                    tol:            float = 1e-10,
                ):

        self.ast = ast
        self.bindings = dict(bindings) if bindings is not None else {}
        self.closed_form_F = closed_form_F
        self.u_max = float(u_max)
        self.tol = tol

        self.df_ast = differentiate(ast, 1)
        self.d2f_ast = differentiate(ast, 2)
        self.dg_ast = differentiate(ExprAst(Binary("div", ast.root, Var()), ast.parameters), 1)

        self._f = _tolerant(compile_expr(ast, self.bindings))
        self._df = _tolerant(compile_expr(self.df_ast, self.bindings))
        self._d2f = _tolerant(compile_expr(self.d2f_ast, self.bindings))
        self._dg = _tolerant(compile_expr(self.dg_ast, self.bindings))

        if closed_form_F is not None:
            self.F_mode = "closed_form"
            self._F = _tolerant(compile_expr(closed_form_F, self.bindings))
        else:
            self.F_mode = "numeric"
            self._F = NumericAntiderivative(self._f, self.u_max, tol)

    # rebuild from the picklable description; used by worker processes
    @classmethod
    def from_source(cls, source: dict) -> "Nonlinearity":
        ast = parse(source["expression"])
        closed = parse(source["closed_form_F"]) if source["closed_form_F"] is not None else None
        return cls(ast, source["bindings"], closed, source["u_max"], source.get("tol", 1e-10))

    @property
    def source(self) -> dict:
        return {"expression":       to_text(self.ast),
                "bindings":         dict(self.bindings),
                "closed_form_F":    to_text(self.closed_form_F) if self.closed_form_F is not None else None,
                "u_max":            self.u_max,
                "tol":              self.tol,
                }

    def f(self, u):
        return self._f(u)

    def df(self, u):
        return self._df(u)

    def d2f(self, u):
        return self._d2f(u)

    def F(self, u):
        return self._F(u)

    def g(self, u):
        return self._f(u) / u

    def dg(self, u):
        return self._dg(u)

    def theta(self, u):
        return 2.0 * self._F(u) - u * self._f(u)

    def dtheta(self, u):
        return self._f(u) - u * self._df(u)

    def d2theta(self, u):
        return -u * self._d2f(u)

    def q(self, u):
        return -u * self.dtheta(u) / self.theta(u)

    # numerator of [u f'/f]' = N/f^2; geometric concavity holds where N <= 0
    def geo_concavity(self, u):
        f, df, d2f = self._f(u), self._df(u), self._d2f(u)
        return f * df + u * f * d2f - u * df * df

    # scale of the terms in geo_concavity, used as a relative slack
    def geo_concavity_scale(self, u):
        f, df, d2f = self._f(u), self._df(u), self._d2f(u)
        return np.abs(f * df) + np.abs(u * f * d2f) + np.abs(u * df * df)

    ## GAPS BETWEEN alpha AND u
    '''
    each gap is a difference h(alpha) - h(u). when alpha - u is small compared with alpha
    the difference is integrated from h' on [u, alpha] instead of subtracted, so that it
    keeps full relative accuracy down to the last representable distance.
    '''
    def _gap(self, alpha, u, d, derivative, direct):
        u = np.asarray(u, dtype=float)
        d = alpha - u if d is None else np.asarray(d, dtype=float)
        d = np.broadcast_to(d, u.shape)
        flat_u, flat_d = np.ravel(u), np.ravel(d)
        local = flat_d <= min(timemap_defaults["local_gap_fraction"] * alpha, timemap_defaults["local_gap_cap"])

        result = np.empty_like(flat_u)
        if np.any(local):
            result[local] = _local_gap(derivative, alpha, flat_d[local])
        if np.any(~local):
            result[~local] = direct(alpha) - direct(flat_u[~local])

        if np.ndim(u) == 0:
            return float(result[0])
        return result.reshape(u.shape)

    # B(alpha, u) = F(alpha) - F(u)
    def gap_F(self, alpha, u, d=None):
        return self._gap(alpha, u, d, self._f, self._F)

    # A(alpha, u) = alpha f(alpha) - u f(u)
    def gap_A(self, alpha, u, d=None):
        return self._gap(alpha, u, d,
                         lambda t: self._f(t) + t * self._df(t),
                         lambda t: t * self._f(t))

    # C(alpha, u) = alpha^2 f'(alpha) - u^2 f'(u)
    def gap_C(self, alpha, u, d=None):
        return self._gap(alpha, u, d,
                         lambda t: 2.0 * t * self._df(t) + t * t * self._d2f(t),
                         lambda t: t * t * self._df(t))

    # theta(alpha) - theta(u) = 2B - A
    def gap_theta(self, alpha, u, d=None):
        return self._gap(alpha, u, d, self.dtheta, self.theta)


# check a closed form antiderivative against f, and against F(0+) = 0
def _check_closed_form_F(
        nl:     Nonlinearity,
                        ):

    u_max = nl.u_max
    points = np.geomspace(min(1e-3, 0.5 * u_max), u_max, scan_defaults["F_check_points"])
    derivative = _tolerant(compile_expr(differentiate(nl.closed_form_F, 1), nl.bindings))
    dF = derivative(points)
    f = nl.f(points)

    usable = np.isfinite(dF) & np.isfinite(f)
    mismatch = usable & (np.abs(dF - f) > scan_defaults["F_check_rtol"] * (1.0 + np.abs(f)))
    if np.any(mismatch):
        where = points[np.argmax(mismatch)]
        raise ClosedFormMismatchError(f"the derivative of the supplied F does not match f at u={where:.6g}: F'={dF[np.argmax(mismatch)]:.10g}, f={f[np.argmax(mismatch)]:.10g}")

    at_zero = nl.F(scan_defaults["F_zero_probe"])
    if not math.isfinite(at_zero) or abs(at_zero) > scan_defaults["F_zero_tol"]:
        raise ClosedFormMismatchError(f"the supplied F does not vanish at 0+: F({scan_defaults['F_zero_probe']:g}) = {at_zero!r}")

# build the nonlinearity, validating the antiderivative
def build_nonlinearity  (
        ast:            ExprAst,
        bindings:       Param_bindings = None,
        closed_form_F:  Optional[ExprAst] = None,
        u_max:          float = fallback_u_max,
        tol:            float = 1e-10,
                        ) ->    Nonlinearity:

    bindings = {} if bindings is None else bindings
    missing = sorted(set(ast.parameters) - set(bindings))
    if closed_form_F is not None:
        missing += sorted(set(closed_form_F.parameters) - set(bindings) - set(missing))
    if missing:
        raise ExprEvaluationError(f"no value bound for parameter(s): {', '.join(missing)}")

    nl = Nonlinearity(ast, bindings, closed_form_F, u_max, tol)
    if closed_form_F is not None:
        _check_closed_form_F(nl)

    return nl


## LANDMARKS

# the scan grid: geometric on (lower, 1], linear on [1, u_max]
def scan_grid   (
        u_max:      float,
                ) ->    np.ndarray:

    lower = scan_defaults["lower"]
    if u_max <= 1.0:
        return np.geomspace(lower, u_max, scan_defaults["geometric_points"] + scan_defaults["linear_points"])

    geometric = np.geomspace(lower, 1.0, scan_defaults["geometric_points"])
    linear = np.linspace(1.0, u_max, scan_defaults["linear_points"])[1:]

    return np.concatenate((geometric, linear))

# brackets [x_j, x_k] where the sign of values changes between consecutive nonzero finite samples
def sign_changes(
        grid:       np.ndarray,
        values:     np.ndarray,
        direction:  int = 0,
                ) ->    list:
    '''
    direction +1 keeps changes from - to +, -1 keeps changes from + to -, 0 keeps both.
    '''
    usable = np.flatnonzero(np.isfinite(values) & (values != 0))
    signs = np.sign(values[usable])
    brackets = []
    for j, k, s_j, s_k in zip(usable[:-1], usable[1:], signs[:-1], signs[1:]):
        if s_j != s_k and (direction == 0 or s_k == direction):
            brackets.append((grid[j], grid[k]))

    return brackets

# refine a bracket to a root of fn
def _root_in(fn: Callable, bracket: tuple) -> float:
    return find_root(fn, bracket[0], bracket[1]).root

# locate beta1, beta2, eta, sigma, rho, gamma and xi on the scan grid
'''
beta1 and beta2 bound the positivity interval of f, eta is the zero of F in between,
sigma the critical point of g (g' from + to -, so theta' from - to +), gamma the first
critical point of theta and rho the zero of theta after sigma. with strict=False a missing
eta is returned as None instead of raising, so that callers can report on the landmarks
that do exist.
'''
def locate_landmarks(
        nl:         Nonlinearity,
        strict:     bool = True,
                    ) ->    Landmarks:

    grid = scan_grid(nl.u_max)
    f_values = nl.f(grid)
    first = np.flatnonzero(np.isfinite(f_values))
    if len(first) == 0:
        raise ConditionError("f could not be evaluated anywhere on the scan grid")
    if f_values[first[0]] > 0:
        raise ConditionError(f"f is positive near u = 0+ (f({grid[first[0]]:.3g}) = {f_values[first[0]]:.6g}): the problem is not semipositone")

    rising = sign_changes(grid, f_values, direction=1)
    if len(rising) == 0:
        raise ConditionError(f"f does not change sign from - to + on (0, {nl.u_max:g}]")
    beta1 = _root_in(nl.f, rising[0])

    falling = [bracket for bracket in sign_changes(grid, f_values, direction=-1) if bracket[0] >= rising[0][1]]
    if len(falling) > 0:
        beta2, scan_limited = _root_in(nl.f, falling[0]), False
    else:
        beta2, scan_limited = math.inf, True
    upper = min(beta2, nl.u_max)

    # critical points of theta: gamma over the whole scan, sigma below beta2
    dtheta_values = nl.dtheta(grid)
    theta_rising = sign_changes(grid, dtheta_values, direction=1)
    gamma = _root_in(nl.dtheta, theta_rising[0]) if theta_rising else None
    inside = [bracket for bracket in theta_rising if bracket[1] <= upper]
    sigma = _root_in(nl.dtheta, inside[0]) if inside else None

    landmarks = Landmarks(beta1=beta1, beta2=beta2, eta=None, sigma=sigma, gamma=gamma, u_max=nl.u_max, beta2_scan_limited=scan_limited)

    # eta: the F sign change after beta1
    points = np.concatenate(([beta1], grid[(grid > beta1) & (grid < upper)], [upper]))
    F_rising = sign_changes(points, nl.F(points), direction=1)
    if len(F_rising) == 0:
        if strict:
            raise CurveDoesNotExistError(f"F has no zero in (beta1, beta2) = ({beta1:.10g}, {beta2:.10g}): the bifurcation curve does not exist", landmarks)
        landmarks.xi = beta2
        return landmarks
    landmarks.eta = _root_in(nl.F, F_rising[0])

    # rho: zero of theta after sigma; xi = rho if theta(beta2-) > 0
    if sigma is not None:
        points = np.concatenate(([sigma], grid[(grid > sigma) & (grid < upper)], [upper]))
        theta_zero = sign_changes(points, nl.theta(points), direction=1)
        if theta_zero:
            landmarks.rho = _root_in(nl.theta, theta_zero[0])
    theta_end = nl.theta(upper)
    landmarks.xi = landmarks.rho if (landmarks.rho is not None and theta_end > 0) else beta2

    return landmarks


## CONDITIONS

# the user asserted limit for key, as a LimitEstimate, or None
def asserted_limit  (
        assertions:     Limit_assertions,
        key:            str,
                    ) ->    Optional[LimitEstimate]:

    if not assertions or key not in assertions:
        return None
    kind, sign = limit_classes[assertions[key]]

    return LimitEstimate(kind=kind, sign=sign, asserted=True)

# probe a limit numerically unless the user asserted it
def probe_limit (
        assertions:     Limit_assertions,
        key:            str,
        probe:          Callable,
                ) ->    LimitEstimate:

    asserted = asserted_limit(assertions, key)
    if asserted is not None:
        return asserted
    try:
        return probe()
    except SPCurveError:
        return LimitEstimate(kind="inconclusive")

# turn a mask of points that satisfy a condition into a verdict
def _verdict(
        grid:       np.ndarray,
        satisfied:  np.ndarray,
        usable:     np.ndarray,
        note:       str = "",
            ) ->    ConditionVerdict:

    edge = scan_defaults["edge_points"]
    positions = np.flatnonzero(usable)
    violations = [i for i, position in enumerate(positions) if not satisfied[position]]
    if len(violations) == 0:
        return ConditionVerdict(holds=True, note=note)

    witnesses = [float(grid[positions[i]]) for i in violations[:5]]
    if all(i < edge or i >= len(positions) - edge for i in violations):
        return ConditionVerdict(holds=None, witnesses=witnesses, note="violations only at the ends of the scan")

    return ConditionVerdict(holds=False, witnesses=witnesses, note=note)

# check which shape conditions hold for the nonlinearity
'''
g_increasing and g_unimodal are read from the sign pattern of theta' = -u^2 g', geo_concave
from the sign of u f f'' + f f' - u f'^2 on (sigma, beta2), f_concave and f_convex from the sign
of f''. verdicts are True, False or None when the only violations sit at the ends of the scan.
'''
def check_conditions(
        nl:             Nonlinearity,
        lm:             Landmarks,
        assertions:     Limit_assertions = None,
                    ) ->    ConditionReport:

    upper = min(lm.beta2, nl.u_max)
    full = scan_grid(nl.u_max)
    grid = full[full < upper]
    notes = []
    warnings = []

    f_sign = ConditionVerdict(holds=True, witnesses=[lm.beta1] + ([lm.beta2] if math.isfinite(lm.beta2) else []),
                              note="beta2 = inf up to u_max" if lm.beta2_scan_limited else "")
    F_zero = ConditionVerdict(holds=lm.eta is not None, witnesses=[lm.eta] if lm.eta is not None else [],
                              note="" if lm.eta is not None else "F < 0 throughout (beta1, beta2)")

    # g' has the opposite sign of theta'
    dtheta = nl.dtheta(grid)
    usable = np.isfinite(dtheta)
    g_increasing = _verdict(grid, dtheta < 0, usable)

    changes = sign_changes(grid, dtheta)
    if len(changes) == 1 and np.sign(dtheta[usable][-1]) > 0:
        g_unimodal = ConditionVerdict(holds=True, witnesses=[lm.sigma])
    elif len(changes) == 0:
        g_unimodal = ConditionVerdict(holds=False, note="theta' does not change sign")
    else:
        g_unimodal = ConditionVerdict(holds=False, witnesses=[float(0.5 * (a + b)) for a, b in changes[:5]],
                                      note=f"theta' changes sign {len(changes)} times")

    if g_unimodal.holds and lm.sigma is not None:
        right = grid[grid > lm.sigma]
        concavity = nl.geo_concavity(right)
        slack = scan_defaults["geo_concave_slack"] * (1.0 + nl.geo_concavity_scale(right))
        geo_concave = _verdict(right, concavity <= slack, np.isfinite(concavity))
    else:
        geo_concave = ConditionVerdict(holds=None, note="only checked when g is unimodal")

    d2f = nl.d2f(grid)
    f_concave = _verdict(grid, d2f < 0, np.isfinite(d2f))
    f_convex = _verdict(grid, d2f > 0, np.isfinite(d2f))

    f0 = probe_limit(assertions, "f0", lambda: estimate_limit_at_zero(nl.f))
    u13f0 = probe_limit(assertions, "u13f0", lambda: estimate_limit_at_zero(lambda u: u ** (1.0 / 3.0) * nl.f(u)))

    if g_increasing.holds is not True and g_unimodal.holds is not True:
        notes.append("neither g_increasing nor g_unimodal holds: g' follows another sign pattern")

    # under f'' < 0, g is increasing exactly when theta'(beta2-) <= 0
    if f_concave.holds and g_increasing.holds is not None:
        if math.isfinite(lm.beta2):
            end = LimitEstimate(kind="finite", value=float(nl.dtheta(lm.beta2)))
        else:
            end = probe_limit(None, "", lambda: estimate_limit_at_infinity(nl.dtheta))
        if end.kind != "inconclusive":
            predicted = end.limit <= 0
            if predicted != g_increasing.holds:
                warnings.append(f"f is concave but g_increasing={g_increasing.holds} disagrees with lim theta'(beta2-) = {end.limit:.6g}")

    # behaviour of T for large alpha
    if math.isinf(lm.beta2) and g_unimodal.holds and geo_concave.holds:
        tail = probe_limit(None, "", lambda: estimate_limit_at_infinity(nl.f))
        if tail.kind in ("finite", "zero"):
            notes.append("f is bounded as u -> inf: T(alpha) -> inf as alpha -> inf")
        elif tail.kind == "+inf":
            notes.append("f is unbounded as u -> inf: theta(inf) > 0")

    return ConditionReport(f_sign_pattern=f_sign, F_has_zero=F_zero,
                           g_increasing=g_increasing, g_unimodal=g_unimodal, geo_concave=geo_concave,
                           f_concave=f_concave, f_convex=f_convex,
                           f0_limit=f0, u13f0_limit=u13f0,
                           notes=notes, warnings=warnings)
