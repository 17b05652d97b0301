from sys import argv
from sys import exit

from cmdline_module import cmdline_interpret

from check_param_module import check_run_parameters
from check_param_module import build_run_config

from stage_modules import cmd_analyze
from stage_modules import cmd_trace
from stage_modules import cmd_verify
from stage_modules import cmd_fixtures

from data_dicts import clprnt

from custom_types import SPCurveError

def run_command (
    command,
    run,
                ):

    if   command == "analyze":
        cmd_analyze(run)

    elif command == "trace":
        cmd_trace(run)

    elif command == "verify":
        cmd_verify(run)

def SPCurve(argument_list):
    command, param, checkonly, source = cmdline_interpret(argument_list)

    # the catalog listing needs no parameters
    if command == "fixtures":
        cmd_fixtures()
        return

    # check if any of the run parameters are erroneously specified
    check_run_parameters(param, source)

    # exit if in check only mode
    if checkonly == True: return

    run_command(command, build_run_config(param))



### ---- MAIN ---- ###
if __name__ == "__main__":
    try:
        SPCurve(argv)
    except SPCurveError as error:
        print(f"\n{clprnt.RED}[X] ERROR: {error}{clprnt.end}")
        exit(1)
