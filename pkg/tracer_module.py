'''
THIS MODULE SAMPLES THE TIME MAP OVER (eta, beta2) TO PRODUCE THE BIFURCATION
CURVE AS DATA. THE alpha GRID CLUSTERS POINTS NEAR BOTH ENDS OF THE DOMAIN.
FOR A SUBSET SHAPED CURVE THE INTERIOR MINIMUM IS REFINED AS THE ROOT OF T'.
POINT EVALUATION CAN BE SPREAD OVER A POOL OF WORKER PROCESSES.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
import multiprocessing as mp
from itertools import repeat

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np
import pandas as pd

# NUMERIC ENGINE
from calculus_module import find_root

# PROBLEM AND TIME MAP FUNCTIONS
from problem_module import Nonlinearity
from timemap_module import time_map
from timemap_module import time_map_derivative
from timemap_module import check_domain
from classify_module import empirical_shape

## DATA DEPENDENCIES
from data_dicts import trace_defaults

## TYPE HINTS
from custom_types import file_path
from custom_types import Landmarks
from custom_types import TimeMapPoint
from custom_types import CurveTrace

## ERRORS
from custom_types import SPCurveError
from custom_types import TraceError


## GRID

# the alpha values at which the curve is sampled
'''
geometric spacing puts a quarter of the points in a cluster at eta + L*[2^-20, 1/16], and for
finite beta2 a quarter at beta2 - L*[1/16, 2^-14], with the rest uniform in between.
for beta2 = inf the grid continues geometrically up to min(u_max, 1000*eta).
'''
def alpha_grid  (
        lm:         Landmarks,
        n_points:   int,
        spacing:    str = "geometric",
        u_max:      float = None,
                ) ->    np.ndarray:

    if n_points < trace_defaults["min_points"]:
        raise TraceError(f"at least {trace_defaults['min_points']} points are needed to trace the curve, not {n_points}")
    check_domain_start(lm)

    eta = lm.eta
    bounded = math.isfinite(lm.beta2)
    u_max = lm.u_max if u_max is None else u_max
    hi = lm.beta2 if bounded else min(u_max, trace_defaults["unbounded_span"] * eta)
    L = hi - eta
    left_offset = trace_defaults["left_offset"]
    right_offset = trace_defaults["right_offset"]
    width = trace_defaults["cluster_width"]

    if spacing == "linear":
        last = hi - L * right_offset if bounded else hi
        return np.linspace(eta + L * left_offset, last, n_points)

    m = n_points // 4
    left = eta + L * np.geomspace(left_offset, width, m)
    if bounded:
        right = hi - L * np.geomspace(width, right_offset, m)
        middle = np.linspace(eta + L * width, hi - L * width, n_points - 2 * m + 2)[1:-1]
        return np.concatenate((left, middle, right))

    rest = np.geomspace(eta + L * width, hi, n_points - m + 1)[1:]
    return np.concatenate((left, rest))

# raise the domain error of the time map when the curve has no admissible alphas
def check_domain_start  (
        lm:     Landmarks,
                        ):

    if lm.eta is None:
        check_domain(None, lm, math.nan)


## POINT EVALUATION

_worker_nl = None

# rebuild the nonlinearity once per worker process
def _init_worker(source: dict):
    global _worker_nl
    _worker_nl = Nonlinearity.from_source(source)

def _worker_point(alpha: float, lm: Landmarks, tol: float) -> TimeMapPoint:
    return evaluate_point(_worker_nl, lm, alpha, tol)

# T, lambda and T' at one alpha
def evaluate_point  (
        nl:     Nonlinearity,
        lm:     Landmarks,
        alpha:  float,
        tol:    float,
                    ) ->    TimeMapPoint:

    point = time_map(nl, lm, alpha, tol)
    point.T_prime = time_map_derivative(nl, lm, alpha, tol)

    return point


## TRACING

# locate the interior minimum of T as the root of T' inside the bracket
def locate_minimum  (
        nl:         Nonlinearity,
        lm:         Landmarks,
        bracket:    tuple,
        tol:        float = 1e-10,
                    ) ->    tuple:

    lo, hi = bracket
    if not time_map_derivative(nl, lm, lo, tol) < 0 < time_map_derivative(nl, lm, hi, tol):
        raise TraceError(f"T' does not change sign from - to + on [{lo:.10g}, {hi:.10g}]: there is no interior minimum to locate")

    upper = lm.beta2 if math.isfinite(lm.beta2) else hi
    root_tol = trace_defaults["minimum_bracket"] * (upper - lm.eta) / (1.0 + upper)
    alpha = find_root(lambda a: time_map_derivative(nl, lm, a, tol), lo, hi, tol=root_tol).root

    return alpha, time_map(nl, lm, alpha, tol).lam

# sample the bifurcation curve
def trace   (
        nl:         Nonlinearity,
        lm:         Landmarks,
        n_points:   int = 64,
        spacing:    str = "geometric",
        tol:        float = 1e-10,
        workers:    int = 1,
            ) ->    CurveTrace:

    grid = alpha_grid(lm, n_points, spacing, nl.u_max)
    spec = f"{spacing} n={n_points} on ({lm.eta:.10g}, {lm.beta2 if math.isfinite(lm.beta2) else min(nl.u_max, trace_defaults['unbounded_span'] * lm.eta):.10g})"

    if workers > 1:
        with mp.Pool(workers, initializer=_init_worker, initargs=(nl.source,)) as pool:
            points = pool.starmap(_worker_point, zip(grid, repeat(lm), repeat(tol)))
            pool.close()
            pool.join()
    else:
        points = [evaluate_point(nl, lm, alpha, tol) for alpha in grid]

    curve = CurveTrace(points=points, alpha_grid_spec=spec)

    if empirical_shape(curve).shape == "SubsetShaped":
        T_prime = np.array([point.T_prime for point in points])
        alphas = np.array([point.alpha for point in points])
        rising = np.flatnonzero((T_prime[:-1] < 0) & (T_prime[1:] > 0))
        try:
            curve.min_point = locate_minimum(nl, lm, (alphas[rising[0]], alphas[rising[0] + 1]), tol)
        except (SPCurveError, IndexError):
            lowest = int(np.argmin([point.lam for point in points]))
            curve.min_point = (points[lowest].alpha, points[lowest].lam)

    return curve

# compare the sampled sign of T' with what the landmarks predict
'''
T' < 0 at alpha <= sigma when eta < sigma, and T' > 0 at alpha >= rho when xi = rho.
returns a list of violations as text, empty when the trace agrees.
'''
def check_derivative_signs  (
        nl:         Nonlinearity,
        lm:         Landmarks,
        curve:      CurveTrace,
                            ) ->    list:

    violations = []
    for point in curve.points:
        if point.T_prime is None:
            continue
        if lm.sigma is not None and lm.eta < lm.sigma and point.alpha <= lm.sigma and not point.T_prime < 0:
            violations.append(f"T'({point.alpha:.10g}) = {point.T_prime:.6g} should be negative for alpha <= sigma")
        if lm.rho is not None and lm.xi == lm.rho and point.alpha >= lm.rho and not point.T_prime > 0:
            violations.append(f"T'({point.alpha:.10g}) = {point.T_prime:.6g} should be positive for alpha >= rho")

    return violations


## OUTPUT

# write the trace as csv with the columns alpha,T,lambda,T_prime
def write_trace_csv (
        curve:      CurveTrace,
        path:       file_path,
                    ):

    df = pd.DataFrame({"alpha":     [point.alpha for point in curve.points],
                       "T":         [point.T for point in curve.points],
                       "lambda":    [point.lam for point in curve.points],
                       "T_prime":   [point.T_prime for point in curve.points]})
    df.to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
