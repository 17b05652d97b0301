'''
THIS MODULE DECIDES THE SHAPE OF THE BIFURCATION CURVE. THE RULE BASED
CLASSIFIER READS THE CONDITION REPORT AND THE SIGN OF G, THE EMPIRICAL
CLASSIFIER READS THE SIGN PATTERN OF A SAMPLED TRACE. BOTH RETURN NotCovered
RATHER THAN GUESS WHEN NOTHING APPLIES.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np

# PROBLEM FUNCTIONS
from problem_module import Nonlinearity
from timemap_module import G_is_negative

## DATA DEPENDENCIES
from data_dicts import trace_defaults

## TYPE HINTS
from custom_types import Landmarks
from custom_types import ConditionReport
from custom_types import CurveEndpoints
from custom_types import CurveTrace
from custom_types import ShapeClass
from custom_types import CurveSummary

## ERRORS
from custom_types import TraceError


## SPECIALIZED HELPER FUNCTIONS

# the shape implied by the sign of G, with the rule tag suffix
def _by_G   (
        ep:     CurveEndpoints,
            ) ->    tuple:

    if math.isnan(ep.G.value):
        return None, None
    if G_is_negative(ep.G):
        return "SubsetShaped", "G<0"

    return "MonotoneIncreasing", "G>=0"

# every rule as (tag, applicable, shape); rules are listed in priority order
def _rules  (
        lm:     Landmarks,
        cond:   ConditionReport,
        ep:     CurveEndpoints,
            ) ->    list:

    shape_G, suffix = _by_G(ep)
    bounded = math.isfinite(lm.beta2)

    rules = [
        ("g-increasing",            cond.holds("g_increasing"),                                 "MonotoneDecreasing"),
        ("convex-f",                cond.holds("f_convex") and not bounded,                     "MonotoneDecreasing"),
            ]
    for tag, applicable in (("g-unimodal+geo-concave", cond.holds("g_unimodal") and cond.holds("geo_concave")),
                            ("g-unimodal+f-concave",   cond.holds("g_unimodal") and cond.holds("f_concave")),
                            ("bounded-concave",        bounded and cond.holds("f_concave"))):
        if shape_G is None:
            rules.append((tag, False, None))
        else:
            rules.append((f"{tag}+{suffix}", applicable, shape_G))

    return rules


## CLASSIFIERS

# classify the bifurcation curve from the conditions and endpoints
'''
the first applicable rule fires. other applicable rules that reach the same
conclusion are listed as supporting rules; applicable rules that disagree turn
the verdict into NotCovered with the conflict listed in the diagnostics.
'''
def classify(
        nl:     Nonlinearity,
        lm:     Landmarks,
        cond:   ConditionReport,
        ep:     CurveEndpoints,
            ) ->    CurveSummary:

    start = (ep.lambda_hat.value if ep is not None else None, lm.eta)
    end = (ep.kappa.value if ep is not None else None, lm.beta2)

    if not cond.holds("F_has_zero") or ep is None:
        shape = ShapeClass(shape="CurveDoesNotExist", rule_fired="no-F-zero")
        return CurveSummary(shape=shape, start=start, end=end, conditions=cond, endpoints=ep)

    rules = _rules(lm, cond, ep)
    applicable = [(tag, result) for tag, ok, result in rules if ok]
    diagnostics = []

    if len(applicable) == 0:
        for name in ("g_increasing", "g_unimodal", "geo_concave", "f_concave", "f_convex"):
            verdict = getattr(cond, name)
            diagnostics.append(f"{name}={verdict.holds}" + (f" ({verdict.note})" if verdict.note else ""))
        if math.isnan(ep.G.value):
            diagnostics.append("G unresolved")
        diagnostics += cond.notes
        shape = ShapeClass(shape="NotCovered", rule_fired="none", diagnostics=diagnostics)
        return CurveSummary(shape=shape, start=start, end=end, conditions=cond, endpoints=ep)

    fired_tag, fired_shape = applicable[0]
    supporting = [tag for tag, result in applicable[1:] if result == fired_shape]
    conflicting = [f"{tag} -> {result}" for tag, result in applicable[1:] if result != fired_shape]

    if conflicting:
        diagnostics = [f"{fired_tag} -> {fired_shape}"] + conflicting
        shape = ShapeClass(shape="NotCovered", rule_fired="conflict", diagnostics=diagnostics)
    else:
        shape = ShapeClass(shape=fired_shape, rule_fired=fired_tag, supporting_rules=supporting,
                           diagnostics=[f"G<0 certified by {', '.join(ep.G.certificates)}"] if ep.G.certificates and "G<0" in fired_tag else [])

    return CurveSummary(shape=shape, start=start, end=end, conditions=cond, endpoints=ep)

# classify a sampled trace by the sign pattern of successive differences of T
def empirical_shape (
        trace:      CurveTrace,
                    ) ->    ShapeClass:

    T = np.array([point.T for point in trace.points])
    if len(T) < trace_defaults["min_points"]:
        raise TraceError(f"at least {trace_defaults['min_points']} points are needed to classify a trace, not {len(T)}")

    steps = np.diff(T)
    band = trace_defaults["empirical_band"] * np.maximum(np.abs(T[1:]), np.abs(T[:-1]))
    signs = np.sign(steps[np.abs(steps) > band])
    if len(signs) == 0:
        return ShapeClass(shape="NotCovered", rule_fired="empirical", diagnostics=["T is flat within the dead-band"])

    switches = int(np.count_nonzero(signs[1:] != signs[:-1]))
    if switches == 0:
        shape = "MonotoneDecreasing" if signs[0] < 0 else "MonotoneIncreasing"
        return ShapeClass(shape=shape, rule_fired="empirical")
    if switches == 1 and signs[0] < 0:
        return ShapeClass(shape="SubsetShaped", rule_fired="empirical")

    return ShapeClass(shape="NotCovered", rule_fired="empirical", diagnostics=[f"T changes direction {switches} times"])
