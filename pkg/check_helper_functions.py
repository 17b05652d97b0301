'''
THIS MODULE CONTAINS AN ARRAY OF FUNCTIONS THAT CHECK FOR MISSPECIFICATIONS
OF RUN PARAMETERS, WHETHER THEY COME FROM THE CONTROL FILE OR THE COMMAND LINE.
EVERY CHECK RETURNS 1 FOR A CORRECTLY SPECIFIED VALUE, 0 FOR A VALUE THAT WAS
NOT SPECIFIED ("?"), AND A NEGATIVE ERROR CODE OTHERWISE.
'''
## DEPENDENCDIES
# STANDARD LIBRARY DEPENDENCIES
import os
import re
from pathlib import Path

# EXTERNAL LIBRARY DEPENDENCIES
import psutil

# EXPRESSION FUNCTIONS
from expr_module import parse

# HELPER FUNCTION DEPENDENCIES
from helper_functions import split_assignments

## DATA DEPENDENCIES
from data_dicts import fixture_catalog
from data_dicts import limit_classes
from data_dicts import assertable_limits

## ERRORS
from custom_types import SPCurveError


## CHECK IF THE PARAMETER IS EXPLICITLY WRONGLY SPECIFIED
'''
These functions check if the user has specified a parameter
with the wrong type of value, or a nonsensical value
'''
# check if a supplied filename actually points to an existing file
def check_File_exists(path):
    if path == "?":
        file_state = 0
    else:
        try:
            my_abs_path = Path(path).resolve(strict=True)
            file_state = 1 if my_abs_path.is_file() else -1
        except (OSError, RuntimeError):
            file_state = -1

    return file_state

# read a range statement such as "0<x<1", "1e-14<=x<=1e-3" or "8<=x" into (lower, lower_strict, upper, upper_strict)
_number = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_range_statement = re.compile(rf"^(?:({_number})(<=|<))?x(?:(<=|<)({_number}))?$")

def _read_statement(statement):
    match = _range_statement.match(statement.replace(" ", ""))
    if match is None or statement.replace(" ", "") == "x":
        raise ValueError(f"incorrect range statement '{statement}'")
    lower, lower_op, upper_op, upper = match.groups()

    return (float(lower) if lower else -float("inf"), lower_op == "<",
            float(upper) if upper else float("inf"), upper_op == "<")

# check if a single numeric parameter is supplied in the correct format and range
def check_Numeric(value, statement = None, float_or_int = "f",):
    lower, lower_strict, upper, upper_strict = _read_statement(statement if statement != None else "-1e8<x<1e8")

    if value == "?":
        return 0

    numeric_state = -1
    try:
        x = float(value)
        in_range = (x > lower if lower_strict else x >= lower) and (x < upper if upper_strict else x <= upper)
        if in_range and (float_or_int == "f" or x.is_integer()):
            numeric_state = 1
    except ValueError:
        pass

    return numeric_state

# check if a value is from a presupplied list of acceptable results
def check_ValueIsFrom(input_value, valid_list):
    if input_value == "?":
        value_state = 0
    elif input_value in valid_list:
        value_state = 1
    else:
        value_state = -1

    return value_state

# check that the number of worker processes is a positive integer that fits the machine
def check_Threads(threads):
    if threads == "?":
        return 0

    if check_Numeric(threads, "1<=x", "i") != 1:
        return -1
    if int(float(threads)) > psutil.cpu_count(logical=True):
        return -2

    return 1


## EXPRESSION RELATED CHECKS
'''
These functions check the nonlinearity itself: either a typed expression
or the name of a catalog fixture, its parameters, and any asserted limits
'''
# exactly one of an expression and a fixture must be given, and an expression must parse
def check_Expression(expression, fixture):
    if expression == "?" and fixture == "?":
        return -3
    if expression != "?" and fixture != "?":
        return -2
    if expression == "?":
        return 0

    try:
        parse(expression)
        return 1
    except SPCurveError:
        return -1

# check that a fixture name is in the catalog
def check_Fixture(fixture):

    return check_ValueIsFrom(fixture, list(fixture_catalog))

# check that parameter bindings are NAME=NUMBER pairs naming exactly the parameters of the expression
'''
for a fixture, the bindings may override any subset of the catalog parameters. for a typed
expression every parameter needs a value. expressions that do not parse are left to check_Expression.
'''
def check_Bindings(parameters, expression, fixture):
    if fixture != "?" and fixture in fixture_catalog:
        needed = set(fixture_catalog[fixture]["parameters"])
        complete = set()
    elif expression != "?":
        try:
            needed = set(parse(expression).parameters)
        except SPCurveError:
            return 0
        complete = needed
    else:
        return 0

    if parameters == "?":
        return -2 if len(complete) > 0 else 0

    try:
        bindings = split_assignments(parameters)
        [float(value) for value in bindings.values()]
    except ValueError:
        return -1

    if not set(bindings) <= needed or not complete <= set(bindings):
        return -2

    return 1

# check that a closed form antiderivative parses
def check_Closed_form(closed_form_F):
    if closed_form_F == "?":
        return 0
    try:
        parse(closed_form_F)
        return 1
    except SPCurveError:
        return -1

# check that asserted limits are KEY=CLASS pairs with known keys and classes
def check_Assertions(assertions):
    if assertions == "?":
        return 0
    try:
        pairs = split_assignments(assertions)
    except ValueError:
        return -1

    if any(key not in assertable_limits for key in pairs):
        return -2
    if any(value not in limit_classes for value in pairs.values()):
        return -3

    return 1


## OUTPUT FILE CHECKS

# check that an output file would be written into an existing directory
def check_Outfilename(filename):
    if filename == "?":
        return 0

    directory = os.path.dirname(os.path.abspath(filename))
    if len(os.path.basename(filename)) > 0 and os.path.isdir(directory):
        return 1

    return -1
