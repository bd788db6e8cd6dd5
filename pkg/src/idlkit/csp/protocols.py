"""Protocols for constraint solvers."""

from __future__ import annotations

from typing import TYPE_CHECKING, Protocol

if TYPE_CHECKING:
    import random

    from idlkit.csp.model import CspProblem, Solution


class Solver(Protocol):
    """Protocol describing a finite-domain solver."""

    name: str

    def solve(self, problem: CspProblem, rng: random.Random | None = None) -> Solution | None:
        """Return some solution, or ``None`` when the problem is unsatisfiable."""
        ...

    def solve_all(self, problem: CspProblem) -> list[Solution]:
        """Return every solution exactly once."""
        ...

    def count(self, problem: CspProblem) -> int:
        """Return the number of solutions."""
        ...
