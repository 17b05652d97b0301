'''
SHARED TEST SETUP. THE MODULES OF THE PROGRAM LIVE FLAT IN THE REPOSITORY
ROOT, SO THE ROOT IS PUT ON THE IMPORT PATH BEFORE THE TESTS ARE COLLECTED.
'''
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from expr_module import parse
from problem_module import build_nonlinearity
from problem_module import locate_landmarks
from helper_functions import get_fixture


# build (nl, lm) for a catalog entry, with optional parameter overrides; cached per session
@pytest.fixture(scope="session")
def catalog_problem():
    cache = {}

    def build(name, strict=True, **overrides):
        key = (name, strict, tuple(sorted(overrides.items())))
        if key not in cache:
            entry = get_fixture(name)
            bindings = {**entry["parameters"], **overrides}
            closed = parse(entry["closed_form_F"]) if entry["closed_form_F"] is not None else None
            nl = build_nonlinearity(parse(entry["expression"]), bindings, closed, entry["u_max"])
            cache[key] = (nl, locate_landmarks(nl, strict=strict))
        return cache[key]

    return build
