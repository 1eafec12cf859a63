"""Coefficient asymptotics for multivariate generating functions.

Thin wrappers over the compiled core. Problems are the same JSON documents the
command line tool reads; reports come back as plain dictionaries.
"""

import json
import os

from . import _acsv
from ._acsv import (
    AnalysisRefusal,
    ParseError,
    ProblemError,
    coefficient,
    connector_gf,
    kernel_poly,
    leading_term,
    term_value,
)

schema_version = _acsv.schema_version

__all__ = [
    "AnalysisRefusal",
    "ParseError",
    "ProblemError",
    "analyze",
    "coefficient",
    "connector_gf",
    "kernel_poly",
    "leading_term",
    "load_problem",
    "schema_version",
    "series",
    "term_value",
]


def load_problem(source):
    """Return a problem as a dict from a dict, a JSON string or a file path."""
    if isinstance(source, dict):
        return source
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source) as f:
            return json.load(f)
    return json.loads(source)


def analyze(problem, direction=None, backend=None, max_n=0, verify=True):
    text = json.dumps(load_problem(problem))
    return json.loads(_acsv.analyze_json(text, direction, backend, max_n, verify))


def series(problem, degree=10):
    """Exact coefficients up to total degree, as (index tuple, rational string) pairs."""
    return [(tuple(i), v) for i, v in _acsv.series(json.dumps(load_problem(problem)), degree)]
