'''
THIS MODULE HOLDS THE STATIC DATA OF THE PROGRAM: DEFAULT RUN PARAMETERS,
NUMERIC ENGINE CONSTANTS, USER FEEDBACK MESSAGES, THE VOCABULARY OF LIMIT
CLASSES AND CURVE SHAPES, AND THE CATALOG OF REFERENCE NONLINEARITIES.
'''
import math

# custom class from colored printing
class clprnt:
    BLUE = '\033[94m'
    CYAN = '\033[96m'
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    end = '\033[0m'


## RUN PARAMETER RELATED DATA

# the commands understood by the program
command_names = ["analyze", "trace", "verify", "fixtures"]

# the default values of run parameters. "?" marks a parameter that is unknown until the user sets it
default_run_parameters =    {
"expression"    :"?",
"fixture"       :"?",
"parameters"    :"?",
"closed_form_F" :"?",
"u_max"         :"?",       # the fixture value is used if present, otherwise "fallback_u_max"
"tol"           :"1e-10",
"points"        :"64",
"tau"           :"3",
"threads"       :"1",
"spacing"       :"geometric",
"assert_limits" :"?",
"out"           :"?",
"svg"           :"?",
"json"          :"?",
                            }

fallback_u_max = 50.0

# files written when the user gives no output name
default_output_files =  {
"analyze_json"  :"SPCurve_report.json",
"trace_csv"     :"SPCurve_trace.csv",
                        }

# the pairs of run parameter names:keyphrases that are searched in the control file to read them
control_file_keyphrases =   {
"expression"    :"expression",
"fixture"       :"fixture",
"parameters"    :"parameters",
"closed_form_F" :"closed form F",
"u_max"         :"u_max",
"tol"           :"tolerance",
"points"        :"points",
"tau"           :"tau",
"threads"       :"threads",
"spacing"       :"spacing",
"assert_limits" :"assert limits",
"out"           :"output csv",
"svg"           :"output svg",
"json"          :"output json",
                            }

# the command line flags, and the run parameter each one sets
command_line_flags =    {
"--fixture"     :"fixture",
"--param"       :"parameters",
"--F"           :"closed_form_F",
"--umax"        :"u_max",
"--tol"         :"tol",
"--points"      :"points",
"-n"            :"points",
"--tau"         :"tau",
"--threads"     :"threads",
"--spacing"     :"spacing",
"--assert-limit":"assert_limits",
"--out"         :"out",
"-o"            :"out",
"--svg"         :"svg",
"--json"        :"json",
"--mcf"         :"mcf",
                        }

# flags that may be given several times; their values are joined with spaces
repeatable_flags = ["--param", "--assert-limit"]

# the grid spacings accepted by the curve tracer
spacing_names = ["geometric", "linear"]

# contains the written feedback for the checker of the run parameters
run_param_feedback =    {
"expression":      {-3:"[X] ERROR: NO EXPRESSION OR FIXTURE SUPPLIED\n\n\t Please give an expression such as \"ln(u)\", or a fixture with --fixture\n",
                    -2:"[X] ERROR: EXPRESSION AND FIXTURE BOTH SUPPLIED\n\n\t Please give either an expression or a fixture name, not both\n",
                    -1:"[X] ERROR: EXPRESSION CAN NOT BE PARSED\n\n\t Please check the expression grammar in the README\n",
                    0 :" ~  expression not specified",
                    1 :"[*] expression parsed",
                    },
"fixture":         {-1:"[X] ERROR: UNKNOWN FIXTURE NAME\n\n\t Please run the 'fixtures' command for the list of names\n",
                    0 :" ~  fixture not specified",
                    1 :"[*] fixture found in catalog",
                    },
"parameters":      {-2:"[X] ERROR: PARAMETER NAMES DO NOT MATCH THE EXPRESSION\n\n\t Please give a value for every parameter of the expression, and no others\n",
                    -1:"[X] ERROR: PARAMETERS INCORRECTLY FORMATTED\n\n\t Please give parameters as 'name=value', eg --param sigma=1\n",
                    0 :" ~  parameters not specified",
                    1 :"[*] parameters correctly specified",
                    },
"closed_form_F":   {-1:"[X] ERROR: ANTIDERIVATIVE CAN NOT BE PARSED\n\n\t Please check the expression grammar in the README, or leave empty\n",
                    0 :" ~  antiderivative not specified, F will be integrated numerically",
                    1 :"[*] antiderivative parsed",
                    },
"u_max":           {-1:"[X] ERROR: U_MAX INCORRECTLY SPECIFIED\n\n\t Please give a number between 1e-6 and 1e6\n",
                    0 :" ~  u_max not specified, default used",
                    1 :"[*] u_max correctly specified",
                    },
"tol":             {-1:"[X] ERROR: TOLERANCE INCORRECTLY SPECIFIED\n\n\t Please give a number between 1e-14 and 1e-3\n",
                    0 :" ~  tolerance not specified, default used",
                    1 :"[*] tolerance correctly specified",
                    },
"points":          {-1:"[X] ERROR: NUMBER OF POINTS INCORRECTLY SPECIFIED\n\n\t Please give an integer of at least 8\n",
                    0 :" ~  number of points not specified, default used",
                    1 :"[*] number of points correctly specified",
                    },
"tau":             {-1:"[X] ERROR: TAU INCORRECTLY SPECIFIED\n\n\t Please give a number larger than 2\n",
                    0 :" ~  tau not specified, default used",
                    1 :"[*] tau correctly specified",
                    },
"threads":         {-2:"[X] ERROR: MORE THREADS REQUESTED THAN AVAILABLE ON THE MACHINE\n\n\t Please request fewer threads\n",
                    -1:"[X] ERROR: THREADS INCORRECTLY SPECIFIED\n\n\t Please give a positive integer\n",
                    0 :" ~  threads not specified, default used",
                    1 :"[*] threads correctly specified",
                    },
"spacing":         {-1:"[X] ERROR: SPACING INCORRECTLY SPECIFIED\n\n\t Please give 'geometric' or 'linear'\n",
                    0 :" ~  spacing not specified, default used",
                    1 :"[*] spacing correctly specified",
                    },
"assert_limits":   {-3:"[X] ERROR: UNKNOWN LIMIT CLASS\n\n\t Please use one of: zero, neg-finite, pos-finite, neg-divergent, pos-divergent\n",
                    -2:"[X] ERROR: UNKNOWN LIMIT KEY\n\n\t Please use one of: g0, upg0, f0, u13f0, ginf, fb2, fb2log\n",
                    -1:"[X] ERROR: LIMIT ASSERTIONS INCORRECTLY FORMATTED\n\n\t Please give assertions as 'KEY=CLASS', eg --assert-limit ginf=zero\n",
                    0 :" ~  no limits asserted, all limits probed numerically",
                    1 :"[*] limit assertions correctly specified",
                    },
"out":             {-1:"[X] ERROR: OUTPUT DIRECTORY DOES NOT EXIST\n\n\t Please give a csv file name in an existing directory\n",
                    0 :" ~  csv output not specified, default used",
                    1 :"[*] csv output name correctly specified",
                    },
"svg":             {-1:"[X] ERROR: OUTPUT DIRECTORY DOES NOT EXIST\n\n\t Please give an svg file name in an existing directory\n",
                    0 :" ~  svg output not requested",
                    1 :"[*] svg output name correctly specified",
                    },
"json":            {-1:"[X] ERROR: OUTPUT DIRECTORY DOES NOT EXIST\n\n\t Please give a json file name in an existing directory\n",
                    0 :" ~  json output not specified",
                    1 :"[*] json output name correctly specified",
                    },
                        }


## NUMERIC ENGINE CONSTANTS

# double exponential quadrature
quadrature_defaults =   {
"t_max"             :6.0,       # nodes are placed on [-t_max, t_max]
"min_level"         :3,         # level k uses the step 2^-k
"max_level"         :8,
"max_depth"         :4,         # bisection depth when a level sequence does not settle
"cutoff_ulps"       :2.0**20,   # nodes closer than this many ulps to a singular endpoint are modelled, not evaluated
"tail_probe_ulps"   :(4.0, 64.0),
"shell_start"       :1e-2,      # first shell distance, as a fraction of the interval width
"shell_count"       :6,         # shell j ends at shell_start * 2^(-3^j)
"shell_ratio"       :2.0,
"shell_run"         :4,
"taint_distance"    :1e-12,     # non-finite values closer than this (relative) to an endpoint are dropped silently
"local_gl_order"    :20,
                        }

# bracketed root finding
root_defaults =     {
"tol"           :1e-12,
"max_iter"      :200,
"max_widen"     :60,
                    }

# numeric limit probes
limit_probe_defaults =  {
"zero_start"        :1e-2,
"zero_ratio"        :0.5,
"zero_count"        :30,
"infinity_start"    :10.0,
"infinity_ratio"    :2.0,
"infinity_count"    :30,
"point_fraction"    :1e-2,
"point_ratio"       :0.5,
"point_count"       :20,
"min_samples"       :6,
"tail_length"       :8,
"growth_threshold"  :0.02,
"blowup"            :1e8,
"cauchy_span"       :5,
"cauchy_rtol"       :1e-3,
"zero_floor"        :1e-12,
"lambda_hat_powers" :(0.9, 0.5, 0.1),
                        }

# landmark scan of (0, u_max)
scan_defaults = {
"lower"             :1e-12,
"geometric_points"  :1024,
"linear_points"     :1024,
"edge_points"       :2,         # violations confined to this many points at either end leave a verdict undetermined
"geo_concave_slack" :1e-10,
"F_check_points"    :24,
"F_check_rtol"      :1e-8,
"F_zero_probe"      :1e-14,
"F_zero_tol"        :1e-6,
"numeric_F_lower"   :1e-12,
"numeric_F_ratio"   :1.0625,
                }

# time map and endpoint evaluation
timemap_defaults =  {
"local_gap_fraction":0.25,      # gaps F(alpha)-F(u) are integrated locally when alpha-u <= min(fraction*alpha, local_gap_cap)
"local_gap_cap"     :0.5,
"accept_factor"     :1e3,       # unconverged quadrature is accepted when its error is below accept_factor*tol
"domain_checks"     :(0.1, 0.3, 0.5, 0.7, 0.9),
"kappa_bounded_k"   :(4, 14),
"kappa_unbounded_steps":12,
"G_zero_band"       :1e-8,
"certificate_rtol"  :1e-12,
                    }

# curve tracer
trace_defaults =    {
"min_points"        :8,
"left_offset"       :2.0**-20,
"right_offset"      :2.0**-14,
"cluster_width"     :1.0/16.0,
"unbounded_span"    :1000.0,
"minimum_bracket"   :1e-8,
"empirical_band"    :1e-6,
                    }

# shooting oracle
shooting_defaults = {
"method"            :"DOP853",
"rtol"              :1e-10,
"atol_factor"       :1e-2,
"u_floor"           :1e-9,
"residual_tol"      :1e-5,
"drift_tol"         :1e-7,
                    }


## EXPRESSION VOCABULARY

# functions of one argument; "log" is read as "ln"
expression_functions = {"exp":"exp", "ln":"ln", "log":"ln", "sqrt":"sqrt", "abs":"abs"}

# named constants
expression_constants = {"pi":math.pi, "e":math.e}

# the name of the independent variable
expression_variable = "u"


## LIMIT CLASS VOCABULARY

# the classes a user may assert, and the limit each one stands for as (kind, sign)
limit_classes = {
"zero"          :("zero", 0),
"neg-finite"    :("finite", -1),
"pos-finite"    :("finite", 1),
"neg-divergent" :("-inf", -1),
"pos-divergent" :("+inf", 1),
                }

# the limits a user may assert instead of probing them
assertable_limits = {
"g0"    :"g(u) = f(u)/u as u -> 0+",
"upg0"  :"u^p g(u) as u -> 0+, for every probe power p",
"f0"    :"f(u) as u -> 0+",
"u13f0" :"u^(1/3) f(u) as u -> 0+",
"ginf"  :"g(u) as u -> infinity",
"fb2"   :"f(u)/(beta2-u) as u -> beta2-",
"fb2log":"f(u)/((beta2-u)(-ln(beta2-u))^tau) as u -> beta2-",
                    }


## CURVE SHAPES

shape_descriptions =    {
"MonotoneDecreasing":"lambda decreases as alpha grows",
"MonotoneIncreasing":"lambda increases as alpha grows",
"SubsetShaped"      :"lambda decreases, then increases: one interior minimum",
"CurveDoesNotExist" :"F has no zero in (beta1, beta2): no positive solutions",
"NotCovered"        :"no rule applies to the conditions found",
                        }


## FIXTURE CATALOG

# reference nonlinearities with their antiderivatives and expected results
fixture_catalog =   {
"E1":                       {"expression":"ln(u)",
                             "parameters":{},
                             "closed_form_F":"u*ln(u) - u",
                             "u_max":50.0,
                             "expected":{"shape":"SubsetShaped", "beta1":1.0, "eta":math.e, "lambda_hat":8.539, "kappa":math.inf},
                             "constants":"beta1=1, eta=e, lambda_hat~8.539, kappa=inf",
                             },
"E2":                       {"expression":"sigma*u - u^(-p)",
                             "parameters":{"sigma":1.0, "p":0.5},
                             "closed_form_F":"sigma*u^2/2 - u^(1 - p)/(1 - p)",
                             "u_max":50.0,
                             "expected":{"shape":"MonotoneDecreasing", "eta":4.0**(2.0/3.0), "kappa":math.pi**2/4.0},
                             "constants":"kappa=pi^2/(4*sigma), finite",
                             },
"E3":                       {"expression":"sigma - 1/sqrt(u)",
                             "parameters":{"sigma":1.0},
                             "closed_form_F":"sigma*u - 2*sqrt(u)",
                             "u_max":50.0,
                             "expected":{"shape":"MonotoneIncreasing", "eta":4.0, "lambda_hat":2.0*math.pi**2, "G":0.0, "kappa":math.inf},
                             "constants":"eta=4/sigma^2, lambda_hat=2*pi^2/sigma^3, G=0",
                             },
"E4":                       {"expression":"4 - sqrt(u) - 1/sqrt(u)",
                             "parameters":{},
                             "closed_form_F":"4*u - (2/3)*u^(3/2) - 2*sqrt(u)",
                             "u_max":50.0,
                             "expected":{"shape":"MonotoneIncreasing", "beta1":7.0 - 4.0*math.sqrt(3.0), "beta2":7.0 + 4.0*math.sqrt(3.0),
                                         "eta":(3.0 - math.sqrt(6.0))**2, "sigma":29.0 - 8.0*math.sqrt(13.0), "G":0.1497, "lambda_hat":0.44565},
                             "constants":"beta1=7-4*sqrt(3), beta2=7+4*sqrt(3), eta=(3-sqrt(6))^2, sigma=29-8*sqrt(13), G~0.1497, lambda_hat~0.4457 (quoted as 0.434)",
                             },
"E5":                       {"expression":"-(u - a)*(u - b)",
                             "parameters":{"a":1.0, "b":4.0},
                             "closed_form_F":"u*(-u^2/3 + (a + b)*u/2 - a*b)",
                             "u_max":50.0,
                             "expected":{"shape":"SubsetShaped", "beta1":1.0, "beta2":4.0, "eta":15.0/4.0 - math.sqrt(33.0)/4.0, "kappa":math.inf},
                             "constants":"3a<b: eta=15/4-sqrt(33)/4 for a=1, b=4; 3a>=b: no curve",
                             },
"E6":                       {"expression":"exp(u) - c",
                             "parameters":{"c":2.0},
                             "closed_form_F":"exp(u) - 1 - c*u",
                             "u_max":50.0,
                             "expected":{"shape":"MonotoneDecreasing", "beta1":math.log(2.0), "eta":1.2564, "kappa":0.0},
                             "constants":"eta~1.2564 (exp(eta)-c*eta-1=0), kappa=0; rule g-increasing, convex-f supporting",
                             },
"E7":                       {"expression":"(1 - u^2)*(u - 3)",
                             "parameters":{},
                             "closed_form_F":"u*(u - 2)*(-u^2 + 2*u + 6)/4",
                             "u_max":50.0,
                             "expected":{"shape":"SubsetShaped", "beta1":1.0, "beta2":3.0, "eta":2.0, "sigma":1.910, "lambda_hat":3.043, "kappa":math.inf},
                             "constants":"eta=2, sigma~1.910, lambda_hat~3.043",
                             },
"E8":                       {"expression":"-15*u^4 + 140*u^3 - 450*u^2 + 540*u - 138",
                             "parameters":{},
                             "closed_form_F":"-3*u^5 + 35*u^4 - 150*u^3 + 270*u^2 - 138*u",
                             "u_max":50.0,
                             "expected":{"shape":"SubsetShaped", "beta1":0.344, "eta":0.814, "beta2":2.551, "sigma":0.709, "lambda_hat":0.040485, "kappa":math.inf},
                             "constants":"beta1~0.344, eta~0.814, beta2~2.551, sigma~0.709, lambda_hat~0.04048 (quoted as 0.038)",
                             },
"E9":                       {"expression":"a + b*u - c*exp(-u)",
                             "parameters":{"a":-1.0, "b":1.0, "c":2.0},
                             "closed_form_F":"a*u + b*u^2/2 + c*(exp(-u) - 1)",
                             "u_max":50.0,
                             "expected":{"shape":"MonotoneDecreasing", "kappa":"finite"},
                             "constants":"(a,b,c)=(-1,1,2): decreasing; (1,1,2) and (1,0,2): subset shaped",
                             },
"appendix-counterexample":  {"expression":"-u^2 + 2.1*u - 1",
                             "parameters":{},
                             "closed_form_F":"-u^3/3 + 1.05*u^2 - u",
                             "u_max":1.02,
                             "expected":{"shape":"CurveDoesNotExist", "gamma":1.0},
                             "constants":"gamma=1, T undefined for alpha<=1",
                             },
                    }

# parameter variants of catalog entries, with the shape each one must produce
fixture_variants = [
("E3", {"sigma":0.5},                   "MonotoneIncreasing"),
("E3", {"sigma":2.0},                   "MonotoneIncreasing"),
("E5", {"a":1.0, "b":2.0},              "CurveDoesNotExist"),
("E9", {"a":1.0, "b":1.0, "c":2.0},     "SubsetShaped"),
("E9", {"a":1.0, "b":0.0, "c":2.0},     "SubsetShaped"),
                   ]
