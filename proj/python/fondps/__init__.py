"""Explicit policy-space search for FOND planning.

The heavy lifting lives in the compiled extension; this package
re-exports its surface.
"""

from ._fondps import (
    FondTask,
    PlannerError,
    compress,
    parse_explicit,
    parse_explicit_file,
    parse_pddl,
    parse_pddl_files,
    solve,
    symmetry_generators,
    validate,
)

__all__ = [
    "FondTask",
    "PlannerError",
    "compress",
    "parse_explicit",
    "parse_explicit_file",
    "parse_pddl",
    "parse_pddl_files",
    "solve",
    "symmetry_generators",
    "validate",
]
