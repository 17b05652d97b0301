'''
THESE FUNCTIONS ACT AS A SAFEGUARD TO THE REMAINDER OF THE PROGRAM.
THEY CHECK IF ANY OF THE PARAMETERS SUPPLIED BY THE USER WILL CAUSE
A DOWNSTREAM FAILURE, PRINT A TABLE OF FEEDBACK FOR EVERY PARAMETER,
AND CONVERT THE CHECKED TEXT VALUES INTO THE TYPED RUN CONFIGURATION.
'''
## DEPENDENCDIES
# HELPER FUNCTION DEPENDENCIES
from helper_functions import pretty_Table
from helper_functions import split_assignments
from helper_functions import get_fixture

# CHECKING HELPER DEPENDENCIES
from check_helper_functions import check_Numeric
from check_helper_functions import check_ValueIsFrom
from check_helper_functions import check_Threads
from check_helper_functions import check_Expression
from check_helper_functions import check_Fixture
from check_helper_functions import check_Bindings
from check_helper_functions import check_Closed_form
from check_helper_functions import check_Assertions
from check_helper_functions import check_Outfilename

## DATA DEPENDENCIES
from data_dicts import run_param_feedback
from data_dicts import spacing_names
from data_dicts import fallback_u_max
from data_dicts import clprnt

## TYPE HINTS
from custom_types import Run_parameter_dict

## ERRORS
from custom_types import ParameterError


## RUN PARAMETER CHECKING FUNCTION

# check the merged run parameters for any misspecifications
'''
This function checks if the run parameters are suitable for guiding the computation.
Every parameter is checked, a table with feedback is printed, and the run is halted
with a ParameterError if any parameter is in error. Unspecified parameters are fine,
as long as either an expression or a fixture is present.
'''
def check_run_parameters(
        param:              Run_parameter_dict,
        source:             str = "the command line",
                        ) ->    dict:

    print(f"\n{clprnt.BLUE}CHECKING RUN PARAMETERS{clprnt.end}\n")

    par_check = {key:0 for key in param}

    ## SHALLOW CHECKING OF MISSPECIFICATION
    # the nonlinearity
    par_check["expression"]     = check_Expression(param["expression"], param["fixture"])
    par_check["fixture"]        = check_Fixture(param["fixture"])
    par_check["parameters"]     = check_Bindings(param["parameters"], param["expression"], param["fixture"])
    par_check["closed_form_F"]  = check_Closed_form(param["closed_form_F"])
    par_check["assert_limits"]  = check_Assertions(param["assert_limits"])

    # the numeric engine
    par_check["u_max"]          = check_Numeric(param["u_max"], "1e-6<=x<=1e6")
    par_check["tol"]            = check_Numeric(param["tol"], "1e-14<=x<=1e-3")
    par_check["points"]         = check_Numeric(param["points"], "8<=x", "i")
    par_check["tau"]            = check_Numeric(param["tau"], "2<x")
    par_check["threads"]        = check_Threads(param["threads"])
    par_check["spacing"]        = check_ValueIsFrom(param["spacing"], spacing_names)

    # output files
    par_check["out"]            = check_Outfilename(param["out"])
    par_check["svg"]            = check_Outfilename(param["svg"])
    par_check["json"]           = check_Outfilename(param["json"])

    ## PRINT RESULTS
    par_names = [*param]
    values = list(param.values())
    feedback = [run_param_feedback[key][par_check[key]] for key in par_names]
    pretty_Table(input_table = [par_names, values, feedback],
                 input_colnames = ["PARAMETER", "VALUE", "FEEDBACK"],
                 width_limit = [1, 36])

    ## MAKE FINAL DECISION TO PROCEED OR NOT
    error_n = sum(i < 0 for i in list(par_check.values()))

    if   error_n == 0:
        print(f"\n[*] No errors found in the run parameters from {source}")

    elif error_n > 0:
        raise ParameterError(f"{error_n} ERROR(S) FOUND IN THE RUN PARAMETERS FROM {source.upper()}. PLEASE READ THE FEEDBACK, AND CONSULT THE README!")

    return par_check


## CONVERSION TO THE RUN CONFIGURATION

# turn checked text parameters into typed values, filling in fixture data where the user gave none
'''
u_max comes from the user, then the fixture, then the built in fallback. for a fixture, user
bindings override the catalog values one by one, and the catalog antiderivative is used unless
the user supplied one or changed the expression.
'''
def build_run_config(
        param:              Run_parameter_dict,
                    ) ->    dict:

    run = {"fixture": None if param["fixture"] == "?" else param["fixture"]}

    user_bindings = {key:float(value) for key, value in split_assignments(param["parameters"]).items()} if param["parameters"] != "?" else {}

    if run["fixture"] is not None:
        entry = get_fixture(run["fixture"])
        run["expression"] = entry["expression"]
        run["bindings"] = {**entry["parameters"], **user_bindings}
        run["closed_form_F"] = entry["closed_form_F"]
        fixture_u_max = entry["u_max"]
        run["expected"] = entry["expected"] if len(user_bindings) == 0 else None
    else:
        run["expression"] = param["expression"]
        run["bindings"] = user_bindings
        run["closed_form_F"] = None
        fixture_u_max = fallback_u_max
        run["expected"] = None

    if param["closed_form_F"] != "?":
        run["closed_form_F"] = param["closed_form_F"]

    run["u_max"]        = float(param["u_max"]) if param["u_max"] != "?" else fixture_u_max
    run["tol"]          = float(param["tol"])
    run["points"]       = int(float(param["points"]))
    run["tau"]          = float(param["tau"])
    run["threads"]      = int(float(param["threads"]))
    run["spacing"]      = param["spacing"]
    run["assertions"]   = split_assignments(param["assert_limits"]) if param["assert_limits"] != "?" else {}
    run["out"]          = None if param["out"] == "?" else param["out"]
    run["svg"]          = None if param["svg"] == "?" else param["svg"]
    run["json"]         = None if param["json"] == "?" else param["json"]

    return run
