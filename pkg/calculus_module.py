'''
THIS MODULE CONTAINS THE NUMERICAL ENGINE SHARED BY THE ANALYSIS MODULES:
DOUBLE EXPONENTIAL (TANH-SINH) QUADRATURE THAT TOLERATES INTEGRABLE ENDPOINT
SINGULARITIES AND DETECTS DIVERGENT IMPROPER INTEGRALS, BRACKETED ROOT
FINDING, AND NUMERIC ESTIMATION OF ONE-SIDED LIMITS.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
from functools import lru_cache
from typing import Callable, Optional

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np
from scipy.optimize import brentq

## DATA DEPENDENCIES
from data_dicts import quadrature_defaults
from data_dicts import root_defaults
from data_dicts import limit_probe_defaults

## TYPE HINTS
from custom_types import QuadratureResult
from custom_types import LimitEstimate
from custom_types import BracketedRoot

## ERRORS
from custom_types import SPCurveError
from custom_types import QuadratureError
from custom_types import RootBracketError
from custom_types import RootConvergenceError
from custom_types import LimitEstimationError


## TANH-SINH NODES

# nodes added at one refinement level: (t, 1-|x|, weight, closer to the left end)
@lru_cache(maxsize=None)
def _level_nodes(
        level:  int,
        t_max:  float,
                ) ->    tuple:

    if level == 0:
        t = np.arange(-t_max, t_max + 0.5, 1.0)
    else:
        step = 2.0 ** -level
        half = np.arange(step, t_max, 2.0 * step)
        t = np.concatenate((-half[::-1], half))

    # x = tanh(pi/2 sinh t); the complement 1-|x| is formed without cancellation
    s = 0.5 * np.pi * np.sinh(np.abs(t))
    decay = np.exp(-2.0 * s)
    complement = 2.0 * decay / (1.0 + decay)
    weight = 0.5 * np.pi * np.cosh(t) * 4.0 * decay / (1.0 + decay) ** 2
    left = t < 0

    for array in (t, complement, weight, left):
        array.setflags(write=False)

    return t, complement, weight, left


## CORE QUADRATURE

class _Sweep:
    '''
    running state of one tanh-sinh integration over [a, b]. fn receives the node
    positions and their exact distances to both ends of the interval.
    '''
    def __init__(self, fn, a, b, cuts, tails):
        self.fn = fn
        self.a = a
        self.b = b
        self.cuts = cuts
        self.tails = tails
        self.kept = 0.0
        self.dropped = ([], [])     # (distance, weight) of nodes too close to each end
        self.tainted = False

    def add_level(self, level: int):
        t, complement, weight, left = _level_nodes(level, quadrature_defaults["t_max"])
        width = self.b - self.a
        half = 0.5 * width
        near = half * complement
        da = np.where(left, near, width - near)
        db = np.where(left, width - near, near)
        u = np.where(left, self.a + da, self.b - db)
        w = half * weight

        keep = (da > self.cuts[0]) & (db > self.cuts[1])
        for side, distance in ((0, da), (1, db)):
            lost = ~keep & (distance <= self.cuts[side]) & (distance > 0)
            if lost.any():
                self.dropped[side].append((distance[lost], w[lost]))

        if not keep.any():
            return
        values = np.asarray(self.fn(u[keep], da[keep], db[keep]), dtype=float)
        bad = ~np.isfinite(values)
        if bad.any():
            edge = np.minimum(da[keep], db[keep]) < quadrature_defaults["taint_distance"] * width
            if np.any(bad & ~edge):
                self.tainted = True
            values = np.where(bad, 0.0, values)
        self.kept += float(np.sum(w[keep] * values))

    def modelled(self) -> float:
        total = 0.0
        for side in (0, 1):
            model = self.tails[side]
            if model is None:
                continue
            for distance, w in self.dropped[side]:
                total += float(np.sum(w * model(distance)))
        return total

# integrate by refining the tanh-sinh step until two levels agree
def _tanh_sinh  (
        fn:         Callable,
        a:          float,
        b:          float,
        tol:        float,
        cuts:       tuple = (0.0, 0.0),
        tails:      tuple = (None, None),
                ) ->    QuadratureResult:

    sweep = _Sweep(fn, a, b, cuts, tails)
    sums = []
    converged = False
    for level in range(quadrature_defaults["max_level"] + 1):
        sweep.add_level(level)
        sums.append((2.0 ** -level) * (sweep.kept + sweep.modelled()))
        if level >= quadrature_defaults["min_level"] and abs(sums[-1] - sums[-2]) <= tol:
            converged = not sweep.tainted
            break

    error = abs(sums[-1] - sums[-2])
    if sweep.tainted:
        error = max(error, math.inf)

    return QuadratureResult(value=sums[-1], abs_error_estimate=error, converged=converged, partial_sums=sums)

# bisect an interval until every piece settles, carrying the distances to the outer ends along
def _adaptive   (
        fn:         Callable,
        a:          float,
        b:          float,
        tol:        float,
        cuts:       tuple,
        tails:      tuple,
        depth:      int = 0,
                ) ->    QuadratureResult:

    result = _tanh_sinh(fn, a, b, tol, cuts, tails)
    if result.converged or depth >= quadrature_defaults["max_depth"]:
        return result

    mid = a + 0.5 * (b - a)
    right_gap = b - mid
    left_gap = mid - a

    def left_fn(u, da, db):
        return fn(u, da, db + right_gap)

    def right_fn(u, da, db):
        return fn(u, da + left_gap, db)

    left = _adaptive(left_fn, a, mid, 0.5 * tol, (cuts[0], 0.0), (tails[0], None), depth + 1)
    right = _adaptive(right_fn, mid, b, 0.5 * tol, (0.0, cuts[1]), (None, tails[1]), depth + 1)

    return QuadratureResult(value=left.value + right.value,
                            abs_error_estimate=left.abs_error_estimate + right.abs_error_estimate,
                            converged=left.converged and right.converged,
                            partial_sums=result.partial_sums)


## SINGULAR ENDPOINT HELPERS

# fit f(endpoint -+ d) ~ C d^(-s) at two exactly representable distances inside the cutoff region
def _fit_tail   (
        fn:         Callable,
        endpoint:   float,
        direction:  float,
        cut:        float,
                ) ->    tuple:

    points = np.array([endpoint + direction * k * cut for k in quadrature_defaults["tail_probe_ulps"]])
    distances = (points - endpoint) * direction
    try:
        values = np.asarray(fn(points), dtype=float)
    except (SPCurveError, ArithmeticError, ValueError):
        return None, None
    if not np.all(np.isfinite(values)) or values[0] * values[1] <= 0:
        return None, None

    exponent = -math.log(values[0] / values[1]) / math.log(distances[0] / distances[1])
    scale = values[0] * distances[0] ** exponent

    def model(d):
        return scale * np.power(d, -exponent)

    diverged = int(np.sign(scale)) if exponent >= 1.0 else None

    return model, diverged

# probe nested shells around a singular endpoint; rapidly growing cumulative sums mean divergence
def _shell_probe(
        fn:         Callable,
        a:          float,
        b:          float,
        side:       int,
        tol:        float,
        cut:        float,
                ) ->    Optional[int]:

    width = b - a
    start = quadrature_defaults["shell_start"] * width
    distances = [start * 2.0 ** -(3 ** j) for j in range(quadrature_defaults["shell_count"] + 1)]
    distances = [d for d in distances if d > cut]

    def shell_fn(d, dlo, dhi):
        if side == 0:
            return fn(a + d, d, width - d)
        return fn(b - d, width - d, d)

    # shells stop at the first depth where the integrand is no longer representable
    for depth, d in enumerate(distances):
        try:
            with np.errstate(all="ignore"):
                finite = bool(np.all(np.isfinite(shell_fn(np.array([d]), None, None))))
        except (SPCurveError, ArithmeticError, ValueError):
            finite = False
        if not finite:
            distances = distances[:depth]
            break
    if len(distances) < quadrature_defaults["shell_run"] + 2:
        return None

    shells = []
    for outer, inner in zip(distances[:-1], distances[1:]):
        shells.append(_tanh_sinh(shell_fn, inner, outer, tol).value)
    cumulative = np.cumsum(shells)

    run = 0
    for previous, current in zip(cumulative[:-1], cumulative[1:]):
        if previous != 0 and np.sign(current) == np.sign(previous) and current / previous >= quadrature_defaults["shell_ratio"]:
            run += 1
            if run >= quadrature_defaults["shell_run"]:
                return int(np.sign(current))
        else:
            run = 0

    return None


## QUADRATURE

# integrate fn over [a, b], allowing integrable singularities at the flagged endpoints
'''
With distance_aware=True, fn is called as fn(u, distance_to_a, distance_to_b), the
distances being computed exactly from the transform. This lets integrands such as
1/sqrt(F(alpha) - F(u)) form their differences without cancellation near u = b.
Otherwise fn is called as fn(u); nodes closer to a flagged non-zero endpoint than
2^20 ulps are replaced by a power law model fitted just inside the cutoff.
A divergent integral is reported through diverged_to, never as a large finite value.
'''
def integrate   (
        fn:                 Callable,
        a:                  float,
        b:                  float,
        tol:                float = 1e-10,
        endpoint_singular:  str = "none",
        distance_aware:     bool = False,
        detect_divergence:  bool = True,
                ) ->    QuadratureResult:

    if not a < b:
        raise QuadratureError(f"integration bounds must satisfy a < b, got a={a!r}, b={b!r}")
    if endpoint_singular not in ("none", "at_a", "at_b", "both"):
        raise QuadratureError(f"unknown endpoint_singular value '{endpoint_singular}'")

    singular = (endpoint_singular in ("at_a", "both"), endpoint_singular in ("at_b", "both"))
    cuts = [0.0, 0.0]
    tails = [None, None]
    diverged = None

    if distance_aware:
        fn3 = fn
    else:
        def fn3(u, da, db):
            return fn(u)
        for side, endpoint, direction in ((0, a, 1.0), (1, b, -1.0)):
            if singular[side] and endpoint != 0.0:
                cuts[side] = quadrature_defaults["cutoff_ulps"] * float(np.spacing(abs(endpoint)))
                tails[side], tail_sign = _fit_tail(fn, endpoint, direction, cuts[side])
                diverged = diverged if tail_sign is None else tail_sign

    result = _adaptive(fn3, a, b, tol, tuple(cuts), tuple(tails))

    if diverged is None and detect_divergence:
        for side in (0, 1):
            if singular[side]:
                diverged = _shell_probe(fn3, a, b, side, tol, cuts[side])
                if diverged is not None:
                    break

    if diverged is not None:
        result.diverged_to = diverged
        result.converged = False

    return result


## ROOT FINDING

# locate a root of fn inside [lo, hi] with Brent's method, and return a bracket that still changes sign
def find_root   (
        fn:     Callable,
        lo:     float,
        hi:     float,
        tol:    float = None,
                ) ->    BracketedRoot:

    tol = root_defaults["tol"] if tol is None else tol
    f_lo, f_hi = fn(lo), fn(hi)
    if f_lo == 0:
        return BracketedRoot(root=lo, bracket=(lo, lo), residual=0.0)
    if f_hi == 0:
        return BracketedRoot(root=hi, bracket=(hi, hi), residual=0.0)
    if np.sign(f_lo) == np.sign(f_hi):
        raise RootBracketError(f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}")

    rtol = max(tol, 4.0 * np.finfo(float).eps)
    root, info = brentq(fn, lo, hi, xtol=tol, rtol=rtol, maxiter=root_defaults["max_iter"], full_output=True, disp=False)
    if not info.converged:
        raise RootConvergenceError(f"root search on [{lo!r}, {hi!r}] did not converge: {info.flag}", bracket=(lo, hi))

    # widen a small bracket around the root until it shows the sign change
    width = 0.5 * tol * (1.0 + abs(root))
    for _ in range(root_defaults["max_widen"]):
        left, right = max(lo, root - width), min(hi, root + width)
        f_left, f_right = fn(left), fn(right)
        if f_left == 0 or f_right == 0 or np.sign(f_left) != np.sign(f_right):
            return BracketedRoot(root=root, bracket=(left, right), residual=float(fn(root)))
        width *= 2.0

    raise RootConvergenceError(f"no sign change found around the root {root!r}", bracket=(lo, hi))


## LIMIT ESTIMATION

# evaluate fn at the probe points, skipping points where evaluation fails
def _collect_samples(
        fn:         Callable,
        points:     list,
                    ) ->    list:

    samples = []
    failures = 0
    for point in points:
        try:
            value = float(fn(*point)) if isinstance(point, tuple) else float(fn(point))
        except (SPCurveError, ArithmeticError, ValueError):
            failures += 1
            continue
        if math.isfinite(value):
            samples.append((point[0] if isinstance(point, tuple) else point, value))
        else:
            failures += 1

    if len(samples) == 0:
        raise LimitEstimationError(f"all {failures} probe evaluations failed")

    return samples

# classify a probe sequence that approaches the limit point geometrically with the given ratio
'''
rules, applied to the tail of the sequence in this order:
    1) values change sign                       -> inconclusive
    2) growth exponents all > threshold, or
       |value| > blowup with monotone growth    -> +inf / -inf
    3) growth exponents all < -threshold        -> zero
    4) successive relative differences small    -> finite (zero below the floor)
    5) otherwise                                -> inconclusive
'''
def classify_samples(
        samples:    list,
        ratio:      float,
                    ) ->    LimitEstimate:

    p = limit_probe_defaults
    if len(samples) < p["min_samples"]:
        return LimitEstimate(kind="inconclusive", samples=samples)

    values = np.array([value for _, value in samples])
    tail = values[-p["tail_length"]:]
    if np.all(tail == 0):
        return LimitEstimate(kind="zero", value=0.0, samples=samples)
    if np.any(tail == 0):
        return LimitEstimate(kind="inconclusive", samples=samples)

    signs = np.sign(tail)
    if np.any(signs != signs[-1]):
        return LimitEstimate(kind="inconclusive", samples=samples)
    sign = int(signs[-1])

    magnitude = np.abs(tail)
    growth = np.log(magnitude[1:] / magnitude[:-1]) / abs(math.log(ratio))
    if np.all(growth > p["growth_threshold"]) or (magnitude[-1] > p["blowup"] and np.all(np.diff(magnitude) >= 0)):
        return LimitEstimate(kind="+inf" if sign > 0 else "-inf", sign=sign, samples=samples)
    if np.all(growth < -p["growth_threshold"]):
        return LimitEstimate(kind="zero", value=0.0, sign=sign, samples=samples)

    span = values[-p["cauchy_span"]:]
    relative = np.abs(np.diff(span)) / np.maximum(np.abs(span[1:]), np.abs(span[:-1]))
    if np.all(relative < p["cauchy_rtol"]):
        if abs(values[-1]) < p["zero_floor"]:
            return LimitEstimate(kind="zero", value=0.0, sign=sign, samples=samples)
        return LimitEstimate(kind="finite", value=float(values[-1]), sign=sign, samples=samples)

    return LimitEstimate(kind="inconclusive", sign=sign, samples=samples)

# limit of fn(u) as u -> 0+, probed at u = start * ratio^k
def estimate_limit_at_zero  (
        fn:         Callable,
        start:      float = None,
        ratio:      float = None,
        count:      int = None,
                            ) ->    LimitEstimate:

    start = limit_probe_defaults["zero_start"] if start is None else start
    ratio = limit_probe_defaults["zero_ratio"] if ratio is None else ratio
    count = limit_probe_defaults["zero_count"] if count is None else count

    points = [start * ratio ** k for k in range(count + 1)]

    return classify_samples(_collect_samples(fn, points), ratio)

# limit of fn(u) as u -> infinity, probed at u = start * ratio^k
def estimate_limit_at_infinity  (
        fn:         Callable,
        start:      float = None,
        ratio:      float = None,
        count:      int = None,
                                ) ->    LimitEstimate:

    start = limit_probe_defaults["infinity_start"] if start is None else start
    ratio = limit_probe_defaults["infinity_ratio"] if ratio is None else ratio
    count = limit_probe_defaults["infinity_count"] if count is None else count

    points = [start * ratio ** k for k in range(count + 1)]

    return classify_samples(_collect_samples(fn, points), 1.0 / ratio)

# one-sided limit of fn at a finite point, probed at distances start * ratio^k
def estimate_limit_at_point (
        fn:             Callable,
        point:          float,
        side:           str = "left",
        start:          float = None,
        ratio:          float = None,
        count:          int = None,
        distance_aware: bool = False,
                            ) ->    LimitEstimate:
    '''
    with distance_aware=True fn is called as fn(u, d) where d is the exact
    distance |u - point|, so that ratios like f(u)/(point - u) keep their accuracy.
    '''
    start = limit_probe_defaults["point_fraction"] if start is None else start
    ratio = limit_probe_defaults["point_ratio"] if ratio is None else ratio
    count = limit_probe_defaults["point_count"] if count is None else count
    direction = -1.0 if side == "left" else 1.0

    distances = [start * ratio ** k for k in range(count + 1)]
    if distance_aware:
        points = [(point + direction * d, d) for d in distances]
    else:
        points = [point + direction * d for d in distances]

    return classify_samples(_collect_samples(fn, points), ratio)

# extrapolate the tail of a sequence converging geometrically (Aitken form of Richardson extrapolation)
def richardson_extrapolate  (
        values:     list,
        ratio:      float = 2.0,
                            ) ->    tuple:
    '''
    returns (value, error, order). the order p is estimated from the last three values,
    assuming increments shrink like ratio^(-p); the error is the last increment.
    '''
    if len(values) < 2:
        raise LimitEstimationError("extrapolation needs at least two values")

    last_step = values[-1] - values[-2]
    if len(values) < 3:
        return values[-1], abs(last_step), None

    previous_step = values[-2] - values[-3]
    if previous_step == 0 or last_step == 0 or np.sign(previous_step) != np.sign(last_step) or abs(last_step) >= abs(previous_step):
        return values[-1], abs(last_step), None

    order = math.log(previous_step / last_step) / math.log(ratio)
    value = values[-1] + last_step / (ratio ** order - 1.0)

    return value, abs(last_step), order
