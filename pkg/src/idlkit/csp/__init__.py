"""Finite-domain CSP model, evaluator and solvers."""

from idlkit.csp.backtracking import BacktrackingSolver, state_space
from idlkit.csp.evaluate import eval_constraint
from idlkit.csp.factory import create_solver
from idlkit.csp.model import (
    And,
    Arith,
    BoolConst,
    Compare,
    Constraint,
    CspProblem,
    CspVar,
    Expr,
    Implies,
    Literal,
    Not,
    Or,
    Solution,
    VarRef,
    filter_csp,
    variables_of,
)
from idlkit.csp.protocols import Solver

__all__ = [
    "And",
    "Arith",
    "BacktrackingSolver",
    "BoolConst",
    "Compare",
    "Constraint",
    "CspProblem",
    "CspVar",
    "Expr",
    "Implies",
    "Literal",
    "Not",
    "Or",
    "Solution",
    "Solver",
    "VarRef",
    "create_solver",
    "eval_constraint",
    "filter_csp",
    "state_space",
]
