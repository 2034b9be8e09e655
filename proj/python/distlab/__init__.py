"""Distinguishing colourings of boundary-rooted graphs.

Graphs are dicts in the JSON schema {"n", "edges", "roots", "boundary"} or graph6
strings. Results come back as plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    BudgetExceeded,
    CapExceeded,
    Error,
    InvalidArgument,
    ParseError,
    PreconditionError,
    StructuralViolation,
    TruncationError,
)

__all__ = [
    "Error", "ParseError", "InvalidArgument", "PreconditionError", "CapExceeded",
    "BudgetExceeded", "TruncationError", "StructuralViolation",
    "graph", "parse_graph6", "emit_graph6", "to_dot", "generate", "family_names",
    "automorphisms", "distinguishing_number", "check_colouring", "tucker_colouring",
    "delta_minus_one_colouring", "run_experiment",
]


def _text(g):
    if isinstance(g, str):
        return g
    return _json.dumps(g)


def graph(n, edges, roots=(), boundary=()):
    return {"n": n, "edges": [list(e) for e in edges], "roots": list(roots),
            "boundary": list(boundary)}


def parse_graph6(text):
    return _json.loads(_core.parse_graph6(text))


def emit_graph6(g):
    return _core.emit_graph6(_text(g))


def to_dot(g):
    return _core.to_dot(_text(g))


def generate(family, params=(), seed=0):
    return _json.loads(_core.generate(family, list(params), seed))


def family_names():
    return list(_core.family_names())


def automorphisms(g, cap=1_000_000):
    return _json.loads(_core.automorphisms(_text(g), cap))


def distinguishing_number(g, k_max=0, budget=100_000_000):
    return _json.loads(_core.distinguishing_number(_text(g), k_max, budget))


def check_colouring(g, colouring):
    return _json.loads(_core.check_colouring(_text(g), _json.dumps(list(colouring))))


def tucker_colouring(g, motion_threshold=1):
    return _json.loads(_core.tucker_colouring(_text(g), motion_threshold))


def delta_minus_one_colouring(g):
    return _json.loads(_core.delta_minus_one_colouring(_text(g)))


def run_experiment(spec):
    return _json.loads(_core.run_experiment(_text(spec)))
