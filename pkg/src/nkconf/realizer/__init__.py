"""Geometric realizability via symbolic construction sequences."""

from .realize import Verdict, check_rational_witness, check_witness, realize, witness_coordinates
from .solver import NOT_REALIZABLE, REALIZABLE, UNDECIDED, Solver, Witness
from .system import Branch, Constraint, build_branches
from .vectors import DegenerateError, cross, dot, pencil, proportional

__all__ = [
    "NOT_REALIZABLE",
    "REALIZABLE",
    "UNDECIDED",
    "Branch",
    "Constraint",
    "DegenerateError",
    "Solver",
    "Verdict",
    "Witness",
    "build_branches",
    "check_rational_witness",
    "check_witness",
    "cross",
    "dot",
    "pencil",
    "proportional",
    "realize",
    "witness_coordinates",
]
