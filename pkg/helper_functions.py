'''
THIS MODULE CONTAINS HELPER FUNCTIONS THAT ARE REUSED IN OTHER MODULES.
MANY OF THE FUNCTIONS RELATE TO I-O OPERATIONS: PRINTING TABLES, READING
THE CONTROL FILE, AND WRITING THE JSON REPORT.
'''
## DEPENDENCIES

# STANDARD LIBRARY DEPENDENCIES
import re
import copy
import json
import math
import difflib
import dataclasses

# EXTERNAL LIBRARY DEPENDENCIES
import numpy as np

## DATA DEPENDENCIES
from data_dicts import control_file_keyphrases
from data_dicts import fixture_catalog

## TYPING HINTS
from custom_types import file_path
from custom_types import Text_rows_list
from custom_types import Control_file
from custom_types import Run_parameter_dict
from custom_types import Fixture_name

## ERRORS
from custom_types import FixtureError


## CORE HELPER FUNCTIONS

# pad a string to the required length using spaces
def padString   (
        string:         str,
        length:         int
                ) ->    str:

    return string + " " * max(0, length - len(string))

# limit the maximum length of a string
def string_limit(
        string:         str,
        limit:          int,
                ) ->    str:

    if len(string) > limit:
        string = f"{string[:limit-3]}..."

    return string

# strip all leading and trailing whitespace
def stripall(
        input_string:   str
            ) ->        str:

    return input_string.strip()

# reads a text file into an array of rows
def readLines   (
        file_name:      file_path
                ) ->    Text_rows_list:

    with open(file_name, "r") as fileObj:
        lines = fileObj.read().splitlines()

    return lines

# strip out any rows with only whitespace characters
def remove_empty_rows   (
        input_rows:             Text_rows_list
                        ) ->    Text_rows_list:

    output = [row for row in input_rows if re.search(r"\S+", row)]

    return output

# read a text file, and return a filtered version with all text after "#" removed
def read_filter_comments(
        input_file:             file_path
                        ) ->    Text_rows_list:

    lines = readLines(input_file)
    lines = [line.split("#")[0] for line in lines]
    lines = remove_empty_rows(lines)

    return lines

# merges two dicts by updating the values of the first dict where the second one is not "?"
def overwrite_dict  (
        dict_1:             dict,
        dict_2:             dict,
                    ) ->    dict:

    dict_out = copy.deepcopy(dict_1)
    for key in dict_out:
        if key in dict_2 and dict_2[key] != "?":
            dict_out[key] = dict_2[key]

    return dict_out

# format a number for the console, with infinities spelled out
def format_number   (
        value,
        digits:     int = 6,
                    ) ->    str:

    if value is None:
        return "?"
    if isinstance(value, str):
        return value
    if math.isnan(value):
        return "unresolved"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"

    return f"{value:.{digits}g}"


## PRINT HELPER FUNCTIONS

# print large dicts in an easy-to-read way
def pretty  (
        dict:   dict
            ):

    longest_key_length = max(map(len, dict))

    for key in dict:
        print("  ", padString(str(key), longest_key_length), "=", string_limit(str(dict[key]), 84))

    print()

# print a list of columns and associated column names in a readable form
def pretty_Table(
        input_table:    list,
        input_colnames: list,
        column_break:   str = "  ",
        width_limit:    list[int] = None
                ):

    def customlen(string): # ignore the part of the row after "\n" when calculating lengths
        return len(str(string).split("\n")[0])

    input_table = [[str(item) for item in column] for column in input_table]

    # limit the length of phrases in a column to a maximum if required
    if width_limit != None:
        target_col = width_limit[0]
        target_len = width_limit[1]

        for i in range(len(input_table[0])):
            item = input_table[target_col][i]
            if customlen(item) > target_len:
                input_table[target_col][i] = f"{item[:target_len-3]}..."

    # merge the column titles in as the first column elements
    for i in range(len(input_table)):
        input_table[i].insert(0, input_colnames[i])

    # find the width of the column by getting the maximum length of the column elements
    col_width = [max(map(customlen, column)) for column in input_table]

    # print row by row
    for i in range(len(input_table[0])):
        toprint = ""
        for j in range(len(input_table)):
            toprint += (padString(input_table[j][i], col_width[j]) + column_break)

        print(toprint)


## CONTROL FILE I-O FUNCTIONS

# extract a named parameter from the control file, or return "?" if not found
'''
a line matches when the text before the first "=" equals the keyphrase. values may
themselves contain "=" (eg "parameters = a=1 b=4"), so only the first one splits.
'''
def read_control_param  (
        input_text:         Text_rows_list,
        target_param:       str
                        ) ->    str:

    for line in input_text:
        if "=" not in line:
            continue
        key, value = line.split("=", 1)
        if stripall(key) == target_param:
            value = stripall(value)
            return value if len(value) > 0 else "?"

    return "?"

# extract all supplied parameters from the control file to a dict
def read_control_file   (
        input_file:             Control_file
                        ) ->    Run_parameter_dict:

    lines = read_filter_comments(input_file)
    control_params = {param:read_control_param(lines, control_file_keyphrases[param]) for param in control_file_keyphrases}

    return control_params


## FIXTURE LOOKUP

# return the catalog entry of a fixture, raising a FixtureError with a suggestion for unknown names
def get_fixture (
        name:       Fixture_name,
                ) ->    dict:

    if name not in fixture_catalog:
        closest_match = difflib.get_close_matches(name, list(fixture_catalog), 1, 0.5)
        match_text = f" -- did you mean '{closest_match[0]}'?" if len(closest_match) > 0 else ""
        raise FixtureError(f"unknown fixture '{name}'{match_text}")

    return copy.deepcopy(fixture_catalog[name])


## JSON REPORT I-O

# convert a report object into plain json values. infinities become strings, NaN becomes null
def jsonable(
        obj,
            ):

    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {field.name:jsonable(getattr(obj, field.name)) for field in dataclasses.fields(obj) if field.name != "samples"}
    if isinstance(obj, dict):
        return {str(key):jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(value) for value in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isnan(obj):
            return None
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj

    return obj

# write a report to disk as indented json with a fixed key order
def write_json_report   (
        report,
        new_file_name:      file_path,
                        ):

    with open(new_file_name, "w", newline="\n") as f:
        json.dump(jsonable(report), f, indent=2, allow_nan=False)
        f.write("\n")


## RUN PARAMETER TEXT

# split "a=1 b=4" into {"a":"1", "b":"4"}; raises ValueError on a malformed item
def split_assignments   (
        text:       str,
                        ) ->    dict:

    pairs = {}
    for item in text.replace(",", " ").split():
        key, sep, value = item.partition("=")
        if sep != "=" or len(key) == 0 or len(value) == 0 or key in pairs:
            raise ValueError(f"'{item}' is not of the form NAME=VALUE")
        pairs[key] = value

    return pairs
