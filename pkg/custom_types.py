'''
THESE CUSTOM TYPES ARE USED AS TYPE HINTS TO MAKE CODE MORE UNDERSTANDABLE.
THE MODULE ALSO HOLDS THE RESULT RECORDS PASSED BETWEEN THE ANALYSIS STAGES,
AND THE EXCEPTION HIERARCHY RAISED BY THE NUMERICAL MODULES.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import math
from dataclasses import dataclass, field
from typing import NewType, Optional

# generic filepath type
file_path = NewType("file_path", str)

# generic type for text files that have been converted into a list of rows
Text_rows_list = NewType("Text_rows_list", list)

# custom types for the optional control file, and the dicts of run parameters
Control_file = NewType("Control_file", file_path)
Run_parameter_dict = NewType("Run_parameter_dict", dict)

# custom type for the text of an expression, eg "sigma*u - u^(-p)"
Expr_text = NewType("Expr_text", str)

# custom type for the values bound to the named parameters of an expression, eg {"sigma":1.0}
Param_bindings = NewType("Param_bindings", dict)

# custom type for the limit classes the user can assert, eg {"g0":"neg-divergent"}
Limit_assertions = NewType("Limit_assertions", dict)

# custom type for the names of entries in the fixture catalog
Fixture_name = NewType("Fixture_name", str)

# custom type for the shape of a bifurcation curve, eg "SubsetShaped"
Shape_name = NewType("Shape_name", str)


## RESULT RECORDS

# outcome of a single quadrature call
@dataclass
class QuadratureResult:
    value:              float
    abs_error_estimate: float
    converged:          bool
    diverged_to:        Optional[int] = None    # +1 or -1 when the improper integral diverges
    partial_sums:       list = field(default_factory=list)

# outcome of a numeric limit probe; kind is one of "finite", "+inf", "-inf", "zero", "inconclusive"
@dataclass
class LimitEstimate:
    kind:       str
    value:      Optional[float] = None
    sign:       int = 0
    samples:    list = field(default_factory=list)
    asserted:   bool = False

    # the limit written as a plain number, or None when the probe was inconclusive
    @property
    def limit(self) -> Optional[float]:
        if self.kind == "+inf":
            return math.inf
        if self.kind == "-inf":
            return -math.inf
        if self.kind == "zero":
            return 0.0
        return self.value

# a root located inside a bracket that still shows a sign change
@dataclass
class BracketedRoot:
    root:       float
    bracket:    tuple
    residual:   float

# the characteristic points of a nonlinearity
@dataclass
class Landmarks:
    beta1:              float
    beta2:              float                   # math.inf when f stays positive up to u_max
    eta:                Optional[float]
    sigma:              Optional[float] = None
    rho:                Optional[float] = None
    gamma:              Optional[float] = None
    xi:                 Optional[float] = None
    u_max:              float = 50.0
    beta2_scan_limited: bool = False            # True when beta2 = inf is only known up to u_max

# verdict on one condition; holds is True, False or None (undetermined)
@dataclass
class ConditionVerdict:
    holds:      Optional[bool]
    witnesses:  list = field(default_factory=list)
    note:       str = ""

# the conditions checked on a nonlinearity and the limits they depend on
@dataclass
class ConditionReport:
    f_sign_pattern: ConditionVerdict
    F_has_zero:     ConditionVerdict
    g_increasing:   ConditionVerdict
    g_unimodal:     ConditionVerdict
    geo_concave:    ConditionVerdict
    f_concave:      ConditionVerdict
    f_convex:       ConditionVerdict
    f0_limit:       LimitEstimate
    u13f0_limit:    LimitEstimate
    notes:          list = field(default_factory=list)
    warnings:       list = field(default_factory=list)

    # verdict lookup by condition name
    def holds(self, name: str) -> bool:
        return getattr(self, name).holds is True

# one sampled point of the time map
@dataclass
class TimeMapPoint:
    alpha:      float
    T:          float
    lam:        float
    T_prime:    Optional[float] = None

# one endpoint scalar (lambda_hat, kappa or G) with its error bar and the branch that produced it
@dataclass
class EndpointValue:
    value:          float
    error:          Optional[float]                 # None when the value is exact (eg a branch rule returned inf)
    branch:         str
    certificates:   list = field(default_factory=list)

# the scalars that fix where the bifurcation curve starts and ends
@dataclass
class CurveEndpoints:
    lambda_hat:     EndpointValue
    kappa:          EndpointValue
    G:              EndpointValue
    T_prime_eta:    Optional[float] = None          # T'(eta+) = G / (2 sqrt(2) eta)
    warnings:       list = field(default_factory=list)

# the shape of a bifurcation curve, and the rule that decided it
@dataclass
class ShapeClass:
    shape:              Shape_name
    rule_fired:         str
    supporting_rules:   list = field(default_factory=list)
    diagnostics:        list = field(default_factory=list)

# the classification of a bifurcation curve with its start and end points
@dataclass
class CurveSummary:
    shape:      ShapeClass
    start:      tuple
    end:        tuple
    conditions: ConditionReport
    endpoints:  CurveEndpoints

# sampled bifurcation curve
@dataclass
class CurveTrace:
    points:             list
    alpha_grid_spec:    str
    min_point:          Optional[tuple] = None

# outcome of one initial value shot
@dataclass
class ShotResult:
    alpha:          float
    lam:            float
    u_at_1:         float
    min_u:          float
    energy_drift:   float
    decreasing:     bool = True
    x_stop:         float = 1.0

# summary of shooting every point of a trace
@dataclass
class VerificationSummary:
    shots:          list
    worst_residual: float
    worst_drift:    float
    passed:         bool
    failures:       list = field(default_factory=list)

# everything the analyze command reports
@dataclass
class AnalysisReport:
    input:          dict
    landmarks:      Optional[Landmarks]
    conditions:     Optional[ConditionReport]
    endpoints:      Optional[CurveEndpoints]
    classification: ShapeClass
    warnings:       list = field(default_factory=list)
    files:          dict = field(default_factory=dict)


## EXCEPTIONS

# base class of every error raised deliberately by the package
class SPCurveError(Exception):
    pass

class ExprSyntaxError(SPCurveError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset

class ExprUnknownIdentifierError(SPCurveError):
    def __init__(self, name: str, valid_names: list):
        super().__init__(f"unknown identifier '{name}'; valid names are: {', '.join(valid_names)}")
        self.name = name
        self.valid_names = valid_names

class ExprEvaluationError(SPCurveError):
    pass

class ExprDifferentiationError(SPCurveError):
    pass

class RootBracketError(SPCurveError):
    pass

class RootConvergenceError(SPCurveError):
    def __init__(self, message: str, bracket: tuple):
        super().__init__(message)
        self.bracket = bracket

class LimitEstimationError(SPCurveError):
    pass

class QuadratureError(SPCurveError):
    def __init__(self, message: str, partial_sums: list = None):
        super().__init__(message)
        self.partial_sums = partial_sums if partial_sums is not None else []

# F diverges at 0+, so F(u) = int_0^u f does not exist
class IntegrabilityError(SPCurveError):
    pass

# a user supplied antiderivative does not differentiate back to f
class ClosedFormMismatchError(SPCurveError):
    pass

# the sign pattern of f cannot be verified on the scanned range
class ConditionError(SPCurveError):
    pass

class CurveDoesNotExistError(SPCurveError):
    def __init__(self, message: str, landmarks: Landmarks = None):
        super().__init__(message)
        self.landmarks = landmarks

class TimeMapDomainError(SPCurveError):
    def __init__(self, message: str, alpha: Optional[float] = None):
        super().__init__(message)
        self.alpha = alpha

class BranchUnresolvedError(SPCurveError):
    pass

class TraceError(SPCurveError):
    pass

class VerificationError(SPCurveError):
    pass

class FixtureError(SPCurveError):
    pass

class ParameterError(SPCurveError):
    pass

class CommandLineError(SPCurveError):
    pass
