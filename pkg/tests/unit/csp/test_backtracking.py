"""Tests for the backtracking solver and CSP filtering."""

from __future__ import annotations

import itertools
import random
from typing import TYPE_CHECKING

import pytest

from idlkit.csp.backtracking import BacktrackingSolver, state_space
from idlkit.csp.factory import create_solver
from idlkit.csp.evaluate import eval_constraint
from idlkit.csp.model import (
    And,
    Arith,
    Compare,
    Constraint,
    CspProblem,
    CspVar,
    Implies,
    Literal,
    Not,
    Or,
    VarRef,
    equals,
    filter_csp,
    is_true,
)
from idlkit.errors import InfiniteDomainError, UnknownVariableError
from idlkit.idl.ast import ArithOp, RelOp

if TYPE_CHECKING:
    from idlkit.api.models import Value
    from idlkit.csp.model import Expr, Operand

BOOL = (False, True)


def _problem(*constraints: object, names: tuple[str, ...] = ("x", "y")) -> CspProblem:
    return CspProblem(
        tuple(CspVar(name, BOOL) for name in names),
        tuple(Constraint(expr) for expr in constraints),  # type: ignore[arg-type]
    )


@pytest.fixture
def solver() -> BacktrackingSolver:
    """Return the default solver."""
    return BacktrackingSolver()


def test_one_free_boolean(solver: BacktrackingSolver) -> None:
    """One boolean, no constraint: two solutions, and ``solve`` finds one."""
    problem = _problem(names=("x",))

    assert solver.solve(problem) is not None
    assert solver.count(problem) == 2
    assert len(solver.solve_all(problem)) == 2


def test_implication_truth_table(solver: BacktrackingSolver) -> None:
    """``x ⟹ y`` has three models."""
    problem = _problem(Implies(is_true("x"), is_true("y")))

    solutions = {tuple(solution.values) for solution in solver.solve_all(problem)}

    assert solver.count(problem) == 3
    assert (("x", True), ("y", False)) not in solutions
    assert len(solutions) == 3


def test_unsatisfiable(solver: BacktrackingSolver) -> None:
    """``x AND NOT x`` has no solution."""
    problem = _problem(And((is_true("x"), Not(is_true("x")))), names=("x",))

    assert solver.solve(problem) is None
    assert solver.solve_all(problem) == []
    assert solver.count(problem) == 0


def test_count_multiplies_unconstrained_suffix(solver: BacktrackingSolver) -> None:
    """Variables after the last constrained one are counted without enumeration."""
    variables = (CspVar("a", (1, 2, 3)), CspVar("b", (1, 2, 3)), *(CspVar(f"f{i}", tuple(range(10))) for i in range(6)))
    problem = CspProblem(variables, (Constraint(Compare(VarRef("a"), RelOp.LT, VarRef("b"))),))

    assert solver.count(problem) == 3 * 10**6


def test_solve_is_reproducible_with_a_seeded_stream(solver: BacktrackingSolver) -> None:
    """The random stream decides which solution is found."""
    problem = CspProblem((CspVar("n", tuple(range(50))),))

    first = [solver.solve(problem, random.Random(7)) for _ in range(3)]
    second = [solver.solve(problem, random.Random(7)) for _ in range(3)]

    assert first == second


def test_infinite_domain_cannot_be_searched(solver: BacktrackingSolver) -> None:
    """An unpinned infinite domain is an error."""
    problem = CspProblem((CspVar("r", None),))
    with pytest.raises(InfiniteDomainError):
        solver.solve(problem)
    assert state_space(problem) is None


def test_filter_keeps_only_matching_solutions(solver: BacktrackingSolver) -> None:
    """Pinning ``x`` to true keeps exactly the solutions with ``x`` true."""
    problem = _problem()

    filtered = filter_csp(problem, {"x": True})

    assert all(solution["x"] is True for solution in solver.solve_all(filtered))
    assert solver.count(filtered) == 2
    assert solver.count(problem) == 4


def test_filter_against_existing_constraint(solver: BacktrackingSolver) -> None:
    """A pin contradicting a constraint leaves no solution."""
    problem = _problem(Not(is_true("x")), names=("x",))
    assert solver.count(filter_csp(problem, [("x", True)])) == 0


def test_filter_extends_domains(solver: BacktrackingSolver) -> None:
    """A value outside the domain is added; an infinite domain becomes the pinned value."""
    problem = CspProblem((CspVar("n", (1, 2)), CspVar("r", None)))

    filtered = filter_csp(problem, {"n": 5, "r": 7})

    assert filtered.variable("n").domain == (1, 2, 5)
    assert filtered.variable("r").domain == (7,)
    assert solver.solve_all(filtered)[0].as_dict() == {"n": 5, "r": 7}


def test_unknown_variables_are_rejected() -> None:
    """Constraints and pins must name declared variables."""
    with pytest.raises(UnknownVariableError):
        _problem(is_true("z"))
    with pytest.raises(UnknownVariableError):
        filter_csp(_problem(), {"z": True})


def test_literal_only_constraint(solver: BacktrackingSolver) -> None:
    """A constraint without variables is decided up front."""
    problem = CspProblem((CspVar("x", BOOL),), (Constraint(Compare(Literal(1), RelOp.GT, Literal(2))),))
    assert solver.count(problem) == 0


def test_factory() -> None:
    """The factory knows the backtracking backend only."""
    assert create_solver("backtracking").name == "backtracking"
    with pytest.raises(ValueError, match="unknown solver backend"):
        create_solver("minizinc")


RANDOM_VARIABLES = (
    CspVar("a", (0, 1, 2)),
    CspVar("b", BOOL),
    CspVar("c", ("x", "y")),
    CspVar("d", range(-1, 3)),
)
NUMERIC = ("a", "d")
ORDERS = (RelOp.LT, RelOp.GT, RelOp.LE, RelOp.GE, RelOp.EQ, RelOp.NE)


def _atom(rng: random.Random) -> Expr:
    match rng.randrange(4):
        case 0:
            return equals("b", rng.random() < 0.5)  # noqa: PLR2004
        case 1:
            return equals("c", rng.choice(("x", "y")))
        case 2:
            left: Operand = Arith(rng.choice(tuple(ArithOp)), VarRef("a"), VarRef("d"))
            return Compare(left, rng.choice(ORDERS), Literal(rng.randint(-2, 4)))
        case _:
            first, second = rng.sample(NUMERIC, 2)
            return Compare(VarRef(first), rng.choice(ORDERS), VarRef(second))


def _expression(rng: random.Random, depth: int) -> Expr:
    if depth == 0:
        return _atom(rng)
    match rng.randrange(4):
        case 0:
            return Not(_expression(rng, depth - 1))
        case 1:
            return And((_expression(rng, depth - 1), _expression(rng, depth - 1)))
        case 2:
            return Or((_expression(rng, depth - 1), _expression(rng, depth - 1)))
        case _:
            return Implies(_expression(rng, depth - 1), _expression(rng, depth - 1))


def _random_problem(seed: int) -> CspProblem:
    rng = random.Random(seed)
    constraints = tuple(Constraint(_expression(rng, rng.randint(0, 2))) for _ in range(rng.randint(1, 3)))
    return CspProblem(RANDOM_VARIABLES, constraints)


def _brute_force(problem: CspProblem) -> set[tuple[tuple[str, Value], ...]]:
    names = problem.names
    domains = [variable.domain or () for variable in problem.variables]
    assignments = (dict(zip(names, values, strict=True)) for values in itertools.product(*domains))
    return {
        tuple(assignment.items())
        for assignment in assignments
        if all(eval_constraint(constraint.expr, assignment) for constraint in problem.constraints)
    }


@pytest.mark.parametrize("seed", range(40))
def test_search_agrees_with_the_cartesian_product(solver: BacktrackingSolver, seed: int) -> None:
    """Listing, counting and sampling agree with checking every assignment."""
    problem = _random_problem(seed)
    expected = _brute_force(problem)

    listed = [solution.values for solution in solver.solve_all(problem)]
    found = solver.solve(problem, random.Random(seed))

    assert len(listed) == len(set(listed))
    assert set(listed) == expected
    assert solver.count(problem) == len(expected)
    assert (found is None) == (not expected)
    assert found is None or found.values in expected


@pytest.mark.parametrize("seed", range(10))
def test_pinned_search_agrees_with_the_cartesian_product(solver: BacktrackingSolver, seed: int) -> None:
    """Pinning keeps exactly the matching assignments."""
    problem = _random_problem(seed)

    filtered = filter_csp(problem, {"a": 1, "c": "y"})

    expected = {values for values in _brute_force(problem) if dict(values)["a"] == 1 and dict(values)["c"] == "y"}
    assert {solution.values for solution in solver.solve_all(filtered)} == expected


def test_wide_ranges_are_never_expanded(solver: BacktrackingSolver) -> None:
    """Pinned variables over huge ranges are decided by lookup; the range stays lazy."""
    wide = range(10**12)
    problem = CspProblem(
        (CspVar("n", wide), CspVar("m", wide), CspVar("flag", BOOL)),
        (Constraint(Implies(is_true("flag"), Compare(VarRef("n"), RelOp.LT, VarRef("m")))),),
    )

    filtered = filter_csp(problem, {"n": 5, "m": 7, "flag": True})
    outside = filter_csp(problem, {"n": -3})

    assert solver.solve_all(filtered)[0].as_dict() == {"n": 5, "m": 7, "flag": True}
    assert state_space(problem) == 2 * 10**24
    assert filtered.variable("n").domain is wide
    assert outside.variable("n").domain == (-3,)


def test_sampling_a_wide_range_reaches_its_anchor(solver: BacktrackingSolver) -> None:
    """An absent value pinned to the range minimum is found without walking the range."""
    anchored = CspProblem(
        (CspVar("n", range(10**12)), CspVar("nSet", BOOL)),
        (Constraint(Implies(Not(is_true("nSet")), equals("n", 0))),),
    )

    found = solver.solve(filter_csp(anchored, {"nSet": False}), random.Random(1))

    assert found is not None
    assert found["n"] == 0


def test_conditional_pins_are_looked_up(solver: BacktrackingSolver) -> None:
    """``¬nSet ⟹ n==1`` leaves one value when absent and the whole range when present."""
    anchored = CspProblem(
        (CspVar("n", range(1, 100_001)), CspVar("nSet", BOOL)),
        (Constraint(Implies(Not(is_true("nSet")), equals("n", 1))),),
    )
    outside = CspProblem(anchored.variables, (Constraint(Implies(Not(is_true("nSet")), equals("n", 0))),))

    assert solver.count(anchored) == 100_001
    assert solver.count(outside) == 100_000
    assert solver.solve_all(filter_csp(anchored, {"nSet": False}))[0].as_dict() == {"n": 1, "nSet": False}
