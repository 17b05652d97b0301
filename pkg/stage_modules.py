'''
THIS MODULE HOLDS THE STAGES BEHIND EACH COMMAND OF THE PROGRAM. EVERY STAGE
TAKES THE CHECKED RUN CONFIGURATION, BUILDS THE NONLINEARITY, CALLS INTO THE
NUMERIC MODULES, PRINTS THE RESULTS FOR THE USER, AND WRITES THE OUTPUT FILES.
'''
## DEPENDENCIES

# EXPRESSION FUNCTIONS
from expr_module import parse

# PROBLEM, TIME MAP AND CLASSIFICATION FUNCTIONS
from problem_module import Nonlinearity
from problem_module import build_nonlinearity
from problem_module import locate_landmarks
from problem_module import check_conditions
from timemap_module import compute_endpoints
from classify_module import classify
from classify_module import empirical_shape

# TRACING AND VERIFICATION FUNCTIONS
from tracer_module import trace
from tracer_module import check_derivative_signs
from tracer_module import write_trace_csv
from shooting_module import verify_trace
from plot_helper_functions import write_trace_svg

# HELPER FUNCTIONS
from helper_functions import pretty_Table
from helper_functions import format_number
from helper_functions import jsonable
from helper_functions import write_json_report

## DATA DEPENDENCIES
from data_dicts import clprnt
from data_dicts import fixture_catalog
from data_dicts import shape_descriptions
from data_dicts import default_output_files

## TYPE HINTS
from custom_types import Landmarks
from custom_types import ConditionReport
from custom_types import CurveEndpoints
from custom_types import CurveSummary
from custom_types import CurveTrace
from custom_types import AnalysisReport
from custom_types import VerificationSummary

## ERRORS
from custom_types import VerificationError


## SHARED STEPS

# build the nonlinearity described by the run configuration
def build_problem   (
        run:            dict,
                    ) ->    Nonlinearity:

    ast = parse(run["expression"])
    closed = parse(run["closed_form_F"]) if run["closed_form_F"] is not None else None

    return build_nonlinearity(ast, run["bindings"], closed, run["u_max"], run["tol"])

# the landmarks, conditions, endpoints and classification of a nonlinearity
'''
a missing zero of F is not an error here: the landmarks that exist are kept, the
conditions are still checked, and the curve is classified as not existing.
'''
def analyze_problem (
        nl:             Nonlinearity,
        run:            dict,
                    ) ->    tuple[Landmarks, ConditionReport, CurveEndpoints, CurveSummary]:

    lm = locate_landmarks(nl, strict=False)
    cond = check_conditions(nl, lm, run["assertions"])
    ep = compute_endpoints(nl, lm, cond, run["tol"], run["tau"], run["assertions"]) if lm.eta is not None else None
    summary = classify(nl, lm, cond, ep)

    return lm, cond, ep, summary

# the input echo of a report
def input_echo  (
        run:            dict,
        nl:             Nonlinearity,
                ) ->    dict:

    return {"expression":       run["expression"],
            "fixture":          run["fixture"],
            "parameters":       dict(run["bindings"]),
            "closed_form_F":    run["closed_form_F"],
            "F_mode":           nl.F_mode,
            "u_max":            run["u_max"],
            "tol":              run["tol"],
            "tau":              run["tau"],
            "assertions":       dict(run["assertions"]),
            }


## PRINTING

def print_landmarks(lm: Landmarks):
    names = ["beta1", "beta2", "eta", "sigma", "rho", "gamma", "xi"]
    values = [format_number(getattr(lm, name), 10) for name in names]
    notes = ["f: - to +", "f: + to -" + (" (scan limited)" if lm.beta2_scan_limited else ""), "zero of F",
             "critical point of g", "zero of theta after sigma", "critical point of theta", "rho or beta2"]
    print(f"\n{clprnt.BLUE}LANDMARKS{clprnt.end}\n")
    pretty_Table([names, values, notes], ["LANDMARK", "VALUE", "MEANING"])

def print_conditions(cond: ConditionReport):
    names = ["f_sign_pattern", "F_has_zero", "g_increasing", "g_unimodal", "geo_concave", "f_concave", "f_convex"]
    verdicts = [getattr(cond, name) for name in names]
    holds = [{True:"holds", False:"fails", None:"undetermined"}[verdict.holds] for verdict in verdicts]
    notes = [verdict.note for verdict in verdicts]
    print(f"\n{clprnt.BLUE}CONDITIONS{clprnt.end}\n")
    pretty_Table([names, holds, notes], ["CONDITION", "VERDICT", "NOTE"], width_limit=[2, 60])
    for note in cond.notes:
        print(f"\t{note}")

def print_endpoints(ep: CurveEndpoints):
    names = ["lambda_hat", "kappa", "G"]
    values = [getattr(ep, name) for name in names]
    print(f"\n{clprnt.BLUE}ENDPOINTS{clprnt.end}\n")
    pretty_Table([names,
                  [format_number(value.value, 10) for value in values],
                  ["exact" if value.error is None else format_number(value.error, 3) for value in values],
                  [value.branch + (f" ({', '.join(value.certificates)})" if value.certificates else "") for value in values]],
                 ["ENDPOINT", "VALUE", "ERROR", "BRANCH"])
    if ep.T_prime_eta is not None:
        print(f"\n\tT'(eta+) = {format_number(ep.T_prime_eta, 10)}")

def print_warnings(warnings: list):
    for warning in warnings:
        print(f"{clprnt.YELLOW}WARNING: {warning}{clprnt.end}")


## COMMAND STAGES

# analyze: landmarks, conditions, endpoints and the rule based shape, written to a json report
def cmd_analyze (
        run:            dict,
                ) ->    AnalysisReport:

    print(f"{clprnt.BLUE}\nBEGINNING ANALYSIS OF f(u) = {run['expression']}{clprnt.end}")

    nl = build_problem(run)
    lm, cond, ep, summary = analyze_problem(nl, run)

    print_landmarks(lm)
    print_conditions(cond)
    if ep is not None:
        print_endpoints(ep)

    warnings = list(cond.warnings) + (list(ep.warnings) if ep is not None else [])
    json_name = run["json"] if run["json"] is not None else default_output_files["analyze_json"]
    report = AnalysisReport(input=input_echo(run, nl), landmarks=lm, conditions=cond, endpoints=ep,
                            classification=summary.shape, warnings=warnings, files={"json": json_name})

    content = jsonable(report)
    content["classification"]["start"] = jsonable(summary.start)
    content["classification"]["end"] = jsonable(summary.end)
    write_json_report(content, json_name)

    shape = summary.shape
    print(f"\n>> RESULTS OF ANALYSIS:\n")
    print(f"{clprnt.GREEN}\tSHAPE: {shape.shape} ({shape_descriptions[shape.shape]}){clprnt.end}")
    print(f"\tRULE:  {shape.rule_fired}" + (f" (supported by {', '.join(shape.supporting_rules)})" if shape.supporting_rules else ""))
    print(f"\tSTART: (lambda, alpha) = ({format_number(summary.start[0])}, {format_number(summary.start[1])})")
    print(f"\tEND:   (lambda, alpha) = ({format_number(summary.end[0])}, {format_number(summary.end[1])})")
    for line in shape.diagnostics:
        print(f"\t\t{line}")
    print_warnings(warnings)

    if run["expected"] is not None:
        if run["expected"]["shape"] == shape.shape:
            print(f"\n[*] Shape matches the catalog entry of {run['fixture']}")
        else:
            print_warnings([f"shape differs from the catalog entry of {run['fixture']}: expected {run['expected']['shape']}"])

    print(f"\n[*] Report written to '{json_name}'")

    return report

# trace: sample the curve, write it as csv and optionally as svg
def cmd_trace   (
        run:            dict,
                ) ->    tuple[CurveTrace, dict]:

    print(f"{clprnt.BLUE}\nBEGINNING CURVE TRACE OF f(u) = {run['expression']}{clprnt.end}\n")

    nl = build_problem(run)
    lm = locate_landmarks(nl, strict=False)
    curve = trace(nl, lm, run["points"], run["spacing"], run["tol"], run["threads"])

    files = {"csv": run["out"] if run["out"] is not None else default_output_files["trace_csv"]}
    write_trace_csv(curve, files["csv"])
    if run["svg"] is not None:
        files["svg"] = run["svg"]
        write_trace_svg(curve, files["svg"], lm, title=f"f(u) = {run['expression']}")

    shape = empirical_shape(curve)
    print(f">> RESULTS OF TRACE: {len(curve.points)} points, {curve.alpha_grid_spec}\n")
    print(f"{clprnt.GREEN}\tSAMPLED SHAPE: {shape.shape}{clprnt.end}")
    if curve.min_point is not None:
        print(f"\tMINIMUM: lambda* = {format_number(curve.min_point[1], 10)} at alpha* = {format_number(curve.min_point[0], 10)}")
    print_warnings(check_derivative_signs(nl, lm, curve) + shape.diagnostics)
    for kind, name in files.items():
        print(f"\n[*] {kind.upper()} written to '{name}'")

    return curve, files

# verify: trace the curve, then shoot every point through the initial value problem
def cmd_verify  (
        run:            dict,
                ) ->    VerificationSummary:

    print(f"{clprnt.BLUE}\nBEGINNING SHOOTING VERIFICATION OF f(u) = {run['expression']}{clprnt.end}\n")

    nl = build_problem(run)
    lm = locate_landmarks(nl, strict=False)
    curve = trace(nl, lm, run["points"], run["spacing"], run["tol"], run["threads"])
    summary = verify_trace(nl, curve, run["tol"], run["threads"])

    shots = summary.failures if len(summary.failures) > 0 else summary.shots[::max(1, len(summary.shots) // 8)]
    pretty_Table([[format_number(shot.alpha, 10) for shot in shots],
                  [format_number(shot.lam, 10) for shot in shots],
                  [format_number(shot.u_at_1, 3) for shot in shots],
                  [format_number(shot.energy_drift, 3) for shot in shots]],
                 ["ALPHA", "LAMBDA", "u(1)", "ENERGY DRIFT"])

    print(f"\n>> RESULTS OF VERIFICATION: {len(summary.shots)} shots\n")
    print(f"\tWORST |u(1)|:       {format_number(summary.worst_residual, 3)}")
    print(f"\tWORST ENERGY DRIFT: {format_number(summary.worst_drift, 3)}")

    if not summary.passed:
        raise VerificationError(f"{len(summary.failures)} OF {len(summary.shots)} SHOTS MISSED THE BOUNDARY CONDITION OR DRIFTED IN ENERGY")
    print(f"\n{clprnt.GREEN}[*] Every traced point solves the boundary value problem{clprnt.end}")

    return summary

# fixtures: list the catalog with expected shapes and constants
def cmd_fixtures() -> list:

    print(f"{clprnt.BLUE}\nFIXTURE CATALOG{clprnt.end}\n")

    names = list(fixture_catalog)
    rows = [names,
            [fixture_catalog[name]["expression"] for name in names],
            [" ".join(f"{key}={value:g}" for key, value in fixture_catalog[name]["parameters"].items()) for name in names],
            [fixture_catalog[name]["expected"]["shape"] for name in names],
            [fixture_catalog[name]["constants"] for name in names]]
    pretty_Table([list(column) for column in rows], ["NAME", "f(u)", "PARAMETERS", "SHAPE", "CONSTANTS"])

    return [dict(zip(["name", "expression", "parameters", "shape", "constants"], row)) for row in zip(*rows)]
