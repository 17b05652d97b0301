'''
THIS MODULE CHECKS POINTS OF A TRACED CURVE AGAINST THE DIFFERENTIAL EQUATION
ITSELF. EACH (alpha, lambda) PAIR IS SHOT FROM THE MAXIMUM u(0) = alpha, u'(0) = 0
ACROSS THE HALF INTERVAL [0, 1], AND THE BOUNDARY VALUE u(1) SHOULD VANISH.
NOTHING HERE SHARES CODE WITH THE TIME MAP QUADRATURE.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
import multiprocessing as mp
from itertools import repeat

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np
from scipy.integrate import solve_ivp

# PROBLEM FUNCTIONS
from problem_module import Nonlinearity

## DATA DEPENDENCIES
from data_dicts import shooting_defaults

## TYPE HINTS
from custom_types import CurveTrace
from custom_types import ShotResult
from custom_types import VerificationSummary

## ERRORS
from custom_types import SPCurveError
from custom_types import VerificationError


## SHOOTING

# integrate u'' = -lambda f(u) from the maximum and report the boundary residual
'''
integration stops early when u falls to u_floor, since f may blow up at 0.
the residual is then u at the stop extrapolated linearly to x = 1 with u'.
energy drift is the largest |u'^2/2 + lambda F(u) - lambda F(alpha)| on the accepted steps.
'''
def shoot   (
        nl:     Nonlinearity,
        alpha:  float,
        lam:    float,
        tol:    float = 1e-10,
            ) ->    ShotResult:

    u_floor = shooting_defaults["u_floor"]

    def rhs(x, y):
        return [y[1], -lam * float(nl.f(max(y[0], u_floor)))]

    def reaches_floor(x, y):
        return y[0] - u_floor
    reaches_floor.terminal = True
    reaches_floor.direction = -1

    sol = solve_ivp(rhs, (0.0, 1.0), [alpha, 0.0], method=shooting_defaults["method"],
                    rtol=shooting_defaults["rtol"], atol=tol * shooting_defaults["atol_factor"],
                    events=reaches_floor)
    if sol.status == -1:
        raise VerificationError(f"integration failed for alpha={alpha:.10g}, lambda={lam:.10g}: {sol.message}")

    u, v = sol.y
    x_stop = float(sol.t[-1])
    residual = float(u[-1] + v[-1] * (1.0 - x_stop))

    E0 = lam * float(nl.F(alpha))
    energy = 0.5 * v * v + lam * np.asarray(nl.F(np.maximum(u, u_floor)), dtype=float)
    drift = float(np.nanmax(np.abs(energy - E0)))

    return ShotResult(alpha=alpha, lam=lam, u_at_1=residual, min_u=float(np.min(u)),
                      energy_drift=drift, decreasing=bool(np.all(v[1:] < 0)), x_stop=x_stop)

# a shot passes when the boundary residual and the relative energy drift are both small
def shot_passes (
        nl:     Nonlinearity,
        shot:   ShotResult,
                ) ->    bool:

    scale = 1.0 + abs(shot.lam * float(nl.F(shot.alpha)))
    return (abs(shot.u_at_1) <= shooting_defaults["residual_tol"]
            and shot.energy_drift <= shooting_defaults["drift_tol"] * scale
            and shot.min_u >= 0)


## VERIFICATION OF A TRACE

_worker_nl = None

def _init_worker(source: dict):
    global _worker_nl
    _worker_nl = Nonlinearity.from_source(source)

# a shot that could not be integrated is recorded as a failed one
def _shot_or_failure(nl: Nonlinearity, alpha: float, lam: float, tol: float) -> ShotResult:
    try:
        return shoot(nl, alpha, lam, tol)
    except SPCurveError:
        return ShotResult(alpha=alpha, lam=lam, u_at_1=math.nan, min_u=math.nan, energy_drift=math.nan, decreasing=False)

def _worker_shot(alpha: float, lam: float, tol: float) -> ShotResult:
    return _shot_or_failure(_worker_nl, alpha, lam, tol)

# shoot every point of a trace and summarise the worst residual and drift
def verify_trace(
        nl:         Nonlinearity,
        curve:      CurveTrace,
        tol:        float = 1e-10,
        workers:    int = 1,
                ) ->    VerificationSummary:

    if curve is None or len(curve.points) == 0:
        raise VerificationError("there are no points to verify: the trace is empty")

    alphas = [point.alpha for point in curve.points]
    lams = [point.lam for point in curve.points]

    if workers > 1:
        with mp.Pool(workers, initializer=_init_worker, initargs=(nl.source,)) as pool:
            shots = pool.starmap(_worker_shot, zip(alphas, lams, repeat(tol)))
            pool.close()
            pool.join()
    else:
        shots = [_shot_or_failure(nl, alpha, lam, tol) for alpha, lam in zip(alphas, lams)]

    failures = [shot for shot in shots if not shot_passes(nl, shot)]
    residuals = [abs(shot.u_at_1) for shot in shots if math.isfinite(shot.u_at_1)]
    drifts = [shot.energy_drift for shot in shots if math.isfinite(shot.energy_drift)]

    return VerificationSummary(shots=shots,
                               worst_residual=max(residuals) if residuals else math.nan,
                               worst_drift=max(drifts) if drifts else math.nan,
                               passed=len(failures) == 0,
                               failures=failures)
