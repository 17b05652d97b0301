'''
THIS MODULE CONTAINS THE FUNCTIONS REQUIRED FOR INTERPRETING THE
COMMAND LINE ARGUMENTS TO THE PROGRAM. A CALL LOOKS LIKE

    SPCurve.py <command> [EXPRESSION] [--flag value ...] [--check]

RUN PARAMETERS ARE MERGED FROM THREE LAYERS: THE BUILT IN DEFAULTS, AN
OPTIONAL CONTROL FILE (--mcf), AND THE COMMAND LINE FLAGS, EACH LAYER
OVERWRITING THE ONE BEFORE.
'''
## DEPENDENCIES
# STANDARD LIBRARY
import re
import difflib

# CHECK HELPERS
from check_helper_functions import check_File_exists

# HELPER FUNCTIONS
from helper_functions import pretty
from helper_functions import overwrite_dict
from helper_functions import read_control_file

## TYPE HINTS
from custom_types import Run_parameter_dict

## DATA DEPENDENCIES
from data_dicts import clprnt
from data_dicts import command_names
from data_dicts import command_line_flags
from data_dicts import repeatable_flags
from data_dicts import default_run_parameters

## ERRORS
from custom_types import CommandLineError


## SPECIALIZED HELPER FUNCTIONS

# text suggesting the closest known name, or nothing
def did_you_mean(
        name:       str,
        known:      list,
                ) ->    str:

    closest_match = difflib.get_close_matches(name, known, 1, 0.5)
    if len(closest_match) > 0:
        return f"\t -- did you mean '{closest_match[0]}'?"

    return ""


## GETTING ARGUMENTS FROM THE COMMAND LINE

# read in the raw command line arguments, and ensure that a command was given
def collect_cmdline_args    (
        argument_list:              list[str]
                            ) ->    list[str]:

    # cut off the first argument, as that is just the name of the python file
    argument_list = argument_list[1:]

    # verify that arguments were provided
    if len(argument_list) == 0:
        raise CommandLineError(f"PROGRAM CALLED WITHOUT A COMMAND. Please call as 'SPCurve.py <command> [EXPRESSION] [flags]', where the command is one of: {', '.join(command_names)}")

    return argument_list

# interpret the incoming command line arguments
'''
returns a dict with the command, the check only switch, the control file name (or "?"),
and the run parameters set on the command line. flags take the next argument as their
value; repeatable flags collect their values separated by spaces.
'''
def interpret_cmdline_args  (
        argument_list:              list
                            ) ->    dict:

    argument_list = collect_cmdline_args(argument_list)

    command = argument_list[0]
    if command not in command_names:
        raise CommandLineError(f"UNKNOWN COMMAND '{command}'{did_you_mean(command, command_names)}")

    # see if the "--check" argument is passed, which activates checking only mode
    output_dict = {"command": command, "checkonly": False, "mcf": "?"}
    arguments = argument_list[1:]
    if "--check" in arguments:
        output_dict["checkonly"] = True
        arguments = [argument for argument in arguments if argument != "--check"]

    # the first argument that is not a flag is the expression
    params = {}
    unrecognized = []
    i = 0
    while i < len(arguments):
        argument = arguments[i]

        if not _looks_like_flag(argument):
            if "expression" in params:
                raise CommandLineError(f"MORE THAN ONE EXPRESSION GIVEN: '{params['expression']}' and '{argument}'. Please quote expressions that contain spaces")
            params["expression"] = argument
            i += 1
            continue

        if argument not in command_line_flags:
            unrecognized.append(argument)
            i += 1
            continue

        if i + 1 >= len(arguments):
            raise CommandLineError(f"THE FLAG '{argument}' IS MISSING ITS VALUE")
        value = arguments[i + 1].strip()
        if len(value) == 0:
            raise CommandLineError(f"THE FLAG '{argument}' IS PROVIDED WITH AN EMPTY VALUE")

        name = command_line_flags[argument]
        if name == "mcf":
            output_dict["mcf"] = value
        elif name in params and argument in repeatable_flags:
            params[name] = f"{params[name]} {value}"
        elif name in params:
            raise CommandLineError(f"THE PARAMETER '{name}' IS SET MULTIPLE TIMES")
        else:
            params[name] = value
        i += 2

    # verify that no supplied flags remained unmatched
    if len(unrecognized) > 0:
        lines = [f"\t{flag}{did_you_mean(flag, list(command_line_flags))}" for flag in unrecognized]
        raise CommandLineError("THE FOLLOWING ARGUMENTS ARE NOT RECOGNIZED:\n" + "\n".join(lines))

    output_dict["params"] = params

    return output_dict

# "--name" or a known short flag; anything else, such as "-u", "-(u-1)*(u-2)" or "-1", is an expression
def _looks_like_flag(text: str) -> bool:
    return re.match(r"^--[A-Za-z]", text) is not None or text in command_line_flags

# merge the defaults, the control file and the command line parameters, in increasing precedence
def merge_run_parameters(
        cmdline_params:     dict,
        control_file:       str = "?",
                        ) ->    Run_parameter_dict:

    param = dict(default_run_parameters)

    if control_file != "?":
        if check_File_exists(control_file) != 1:
            raise CommandLineError(f"NO CONTROL FILE AT REQUESTED LOCATION: {control_file}")
        param = overwrite_dict(param, read_control_file(control_file))

    return overwrite_dict(param, cmdline_params)


## FINAL WRAPPER FUNCTION
def cmdline_interpret   (
        argument_list:      list,
                        ) ->    tuple:

    print(f"{clprnt.BLUE}<< STARTING SPCURVE >>{clprnt.end}\n")

    interpreted = interpret_cmdline_args(argument_list)
    command = interpreted["command"]
    checkonly = interpreted["checkonly"]
    if checkonly == True:
        print("\tCHECK ONLY MODE ACTIVATED!\n")

    if interpreted["mcf"] != "?":
        print(f"READING RUN PARAMETERS FROM CONTROL FILE '{interpreted['mcf']}'\n")
    param = merge_run_parameters(interpreted["params"], interpreted["mcf"])

    if command != "fixtures":
        print(f"COMMAND: {command}\n")
        pretty({key:value for key, value in param.items() if value != "?"})

    source = "the command line" if interpreted["mcf"] == "?" else f"'{interpreted['mcf']}' and the command line"

    return command, param, checkonly, source
