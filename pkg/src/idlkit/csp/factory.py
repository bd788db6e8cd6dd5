"""Factory helpers for constraint solvers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from idlkit.csp.backtracking import BacktrackingSolver

if TYPE_CHECKING:
    from idlkit.csp.protocols import Solver


def create_solver(backend: str, logger: Any | None = None) -> Solver:
    """Create a solver for the requested backend."""
    if backend == "backtracking":
        solver: BacktrackingSolver = BacktrackingSolver(logger=logger)
        return solver
    message = f"unknown solver backend: {backend}"
    raise ValueError(message)
