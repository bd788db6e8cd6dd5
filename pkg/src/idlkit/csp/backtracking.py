"""Chronological backtracking over finite domains."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import chain
from typing import TYPE_CHECKING, Any

import structlog

from idlkit.csp.evaluate import eval_constraint
from idlkit.csp.model import Compare, Implies, Literal, Solution, VarRef, variables_of
from idlkit.csp.values import contains, same_value
from idlkit.errors import InfiniteDomainError
from idlkit.idl.ast import RelOp

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Iterator, Sequence

    from idlkit.api.models import Value
    from idlkit.csp.model import CspProblem, Expr

SHUFFLE_LIMIT = 4096
RANDOM_TRIES = 16


@dataclass(frozen=True, slots=True)
class _Plan:
    """Search-ready view of a problem.

    Constrained variables are searched smallest domain first, so presence flags and pinned variables are
    decided before wide value domains; unconstrained variables come last. ``checks[i]`` holds the
    constraints whose last variable in search order is the ``i``-th one, so each is evaluated as soon as
    it is fully assigned. ``pins[i]`` holds the ``condition ⟹ var==value`` constraints on the ``i``-th
    variable whose condition is decided earlier; they replace a scan of the domain by a lookup. Unary
    constraints are already folded into ``domains``.
    """

    declared: tuple[str, ...]
    names: tuple[str, ...]
    domains: tuple[Sequence[Value], ...]
    checks: tuple[tuple[Expr, ...], ...]
    pins: tuple[tuple[tuple[Expr, Value], ...], ...]
    satisfiable: bool

    @property
    def last_checked(self) -> int:
        """Index of the last variable carrying a check or a pin, ``-1`` when none does."""
        return max(
            (index for index, (checks, pins) in enumerate(zip(self.checks, self.pins, strict=True)) if checks or pins),
            default=-1,
        )

    def forced(self, index: int, assignment: dict[str, Value]) -> Sequence[Value] | None:
        """Values left by the pins whose condition holds, ``None`` when no pin applies."""
        forced: Sequence[Value] | None = None
        for condition, value in self.pins[index]:
            if eval_constraint(condition, assignment):
                pinned = _member(self.domains[index], value)
                forced = pinned if forced is None else [item for item in forced if contains(pinned, item)]
        return forced


def _member(domain: Sequence[Value], value: Value) -> tuple[Value, ...]:
    """The element of ``domain`` equal to ``value``, as a one-value tuple, or nothing."""
    if isinstance(domain, range):
        return (int(value),) if contains(domain, value) else ()  # type: ignore[arg-type]
    return tuple(item for item in domain if same_value(item, value))[:1]


def _narrow(domain: Sequence[Value], name: str, expr: Expr) -> Sequence[Value]:
    """Values of ``domain`` satisfying the unary ``expr``; an equality pin is looked up, not scanned."""
    match expr:
        case Compare(left=VarRef(name=left), op=RelOp.EQ, right=Literal(value=value)) if left == name:
            return _member(domain, value)
        case _:
            return [value for value in domain if eval_constraint(expr, {name: value})]


def _plan(problem: CspProblem) -> _Plan:
    domains: dict[str, Sequence[Value]] = {}
    for variable in problem.variables:
        if variable.domain is None:
            raise InfiniteDomainError(variable.name)
        domains[variable.name] = variable.domain
    satisfiable = True
    wider: list[tuple[tuple[str, ...], Expr]] = []
    for constraint in problem.constraints:
        names = variables_of(constraint.expr)
        if not names:
            satisfiable = satisfiable and eval_constraint(constraint.expr, {})
        elif len(names) == 1:
            domains[names[0]] = _narrow(domains[names[0]], names[0], constraint.expr)
        else:
            wider.append((names, constraint.expr))
    constrained = {name for names, _ in wider for name in names}
    order = sorted(problem.names, key=lambda name: (name not in constrained, len(domains[name])))
    position = {name: index for index, name in enumerate(order)}
    buckets: list[list[Expr]] = [[] for _ in order]
    pins: list[list[tuple[Expr, Value]]] = [[] for _ in order]
    for names, expr in wider:
        last = max(position[name] for name in names)
        match expr:
            case Implies(
                antecedent=antecedent,
                consequent=Compare(left=VarRef(name=pinned), op=RelOp.EQ, right=Literal(value=value)),
            ) if pinned == order[last] and pinned not in variables_of(antecedent):
                pins[last].append((antecedent, value))
            case _:
                buckets[last].append(expr)
    return _Plan(
        declared=problem.names,
        names=tuple(order),
        domains=tuple(domains[name] for name in order),
        checks=tuple(tuple(bucket) for bucket in buckets),
        pins=tuple(tuple(bucket) for bucket in pins),
        satisfiable=satisfiable and all(len(domain) for domain in domains.values()),
    )


def _search(plan: _Plan, order: Callable[[int], Iterable[Value]]) -> Iterator[dict[str, Value]]:
    assignment: dict[str, Value] = {}
    size = len(plan.names)

    def extend(index: int) -> Iterator[dict[str, Value]]:
        if index == size:
            yield dict(assignment)
            return
        name = plan.names[index]
        forced = plan.forced(index, assignment)
        for value in order(index) if forced is None else forced:
            assignment[name] = value
            if all(eval_constraint(check, assignment) for check in plan.checks[index]):
                yield from extend(index + 1)
        assignment.pop(name, None)

    if plan.satisfiable:
        yield from extend(0)


def _to_solution(plan: _Plan, assignment: dict[str, Value]) -> Solution:
    return Solution(tuple((name, assignment[name]) for name in plan.declared))


def _random_order(values: Sequence[Value], stream: random.Random) -> Iterable[Value]:
    """A shuffled copy of small domains; wide ones try a few random values, then the declared order."""
    if len(values) <= SHUFFLE_LIMIT:
        shuffled = list(values)
        stream.shuffle(shuffled)
        return shuffled
    tries = [values[stream.randrange(len(values))] for _ in range(RANDOM_TRIES)]
    return chain(tries, values)


class BacktrackingSolver:
    """Exhaustive search, smallest domain first.

    ``solve`` randomises each domain's value order with the given stream, so repeated calls sample
    different solutions (not uniformly). ``solve_all`` and ``count`` walk domains in their declared order.
    Solutions always list variables in declaration order.
    """

    name = "backtracking"

    def __init__(self, logger: Any | None = None) -> None:
        self._logger = logger if logger is not None else structlog.get_logger()

    def solve(self, problem: CspProblem, rng: random.Random | None = None) -> Solution | None:
        plan = _plan(problem)
        stream = rng if rng is not None else random.Random()  # noqa: S311
        found = next(_search(plan, lambda index: _random_order(plan.domains[index], stream)), None)
        self._logger.debug("solver.search", mode="solve", variables=len(plan.names), found=found is not None)
        return None if found is None else _to_solution(plan, found)

    def solve_all(self, problem: CspProblem) -> list[Solution]:
        plan = _plan(problem)
        solutions = [_to_solution(plan, assignment) for assignment in _search(plan, lambda index: plan.domains[index])]
        self._logger.debug("solver.search", mode="solve_all", variables=len(plan.names), found=len(solutions))
        return solutions

    def count(self, problem: CspProblem) -> int:
        """Count solutions; once no check remains ahead, the rest of the domains multiply out."""
        plan = _plan(problem)
        if not plan.satisfiable:
            return 0
        size = len(plan.names)
        last_checked = plan.last_checked
        suffix = [1] * (size + 1)
        for index in range(size - 1, -1, -1):
            suffix[index] = suffix[index + 1] * len(plan.domains[index])
        assignment: dict[str, Value] = {}

        def count_from(index: int) -> int:
            if index > last_checked:
                return suffix[index]
            name = plan.names[index]
            forced = plan.forced(index, assignment)
            total = 0
            for value in plan.domains[index] if forced is None else forced:
                assignment[name] = value
                if all(eval_constraint(check, assignment) for check in plan.checks[index]):
                    total += count_from(index + 1)
            assignment.pop(name, None)
            return total

        total = count_from(0)
        self._logger.debug("solver.search", mode="count", variables=size, found=total)
        return total


def state_space(problem: CspProblem) -> int | None:
    """Size of the cartesian product of the domains, ``None`` when one is infinite."""
    sizes = [len(variable.domain) for variable in problem.variables if variable.domain is not None]
    if len(sizes) != len(problem.variables):
        return None
    return math.prod(sizes)
