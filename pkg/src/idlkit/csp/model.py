"""Finite-domain constraint satisfaction problems.

A problem is an ordered list of variables with their domains and a list of constraints. Constraints are
expression trees over variable references, literals and exact arithmetic.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from idlkit.csp.values import contains
from idlkit.errors import UnknownVariableError
from idlkit.idl.ast import ArithOp, RelOp

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

    from idlkit.api.models import Value


@dataclass(frozen=True, slots=True)
class CspVar:
    """A variable and its ordered domain; ``None`` marks an infinite domain that must be pinned before search."""

    name: str
    domain: Sequence[Value] | None

    def __post_init__(self) -> None:
        if self.domain is not None and not self.domain:
            message = f"variable '{self.name}' has an empty domain"
            raise ValueError(message)


@dataclass(frozen=True, slots=True)
class VarRef:
    name: str


@dataclass(frozen=True, slots=True)
class Literal:
    value: Value


@dataclass(frozen=True, slots=True)
class Arith:
    op: ArithOp
    left: Operand
    right: Operand


Operand = VarRef | Literal | Arith


@dataclass(frozen=True, slots=True)
class Compare:
    """``left <op> right``."""

    left: Operand
    op: RelOp
    right: Operand


@dataclass(frozen=True, slots=True)
class BoolConst:
    value: bool


@dataclass(frozen=True, slots=True)
class Not:
    inner: Expr


@dataclass(frozen=True, slots=True)
class And:
    items: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Or:
    items: tuple[Expr, ...]


@dataclass(frozen=True, slots=True)
class Implies:
    antecedent: Expr
    consequent: Expr


Expr = Compare | BoolConst | Not | And | Or | Implies

TRUE = BoolConst(value=True)
FALSE = BoolConst(value=False)


def equals(name: str, value: Value) -> Compare:
    """``name == value``."""
    return Compare(VarRef(name), RelOp.EQ, Literal(value))


def is_true(name: str) -> Compare:
    """``name == true``, the form presence variables are tested in."""
    return equals(name, True)  # noqa: FBT003


def conjunction(items: Iterable[Expr]) -> Expr:
    """``And`` of the items; a single item stands alone, no item is ``true``."""
    collected = tuple(items)
    if not collected:
        return TRUE
    return collected[0] if len(collected) == 1 else And(collected)


def disjunction(items: Iterable[Expr]) -> Expr:
    """``Or`` of the items; a single item stands alone, no item is ``false``."""
    collected = tuple(items)
    if not collected:
        return FALSE
    return collected[0] if len(collected) == 1 else Or(collected)


def _operand_variables(operand: Operand) -> Iterator[str]:
    match operand:
        case VarRef(name=name):
            yield name
        case Arith(left=left, right=right):
            yield from _operand_variables(left)
            yield from _operand_variables(right)
        case Literal():
            pass


def _expr_variables(expr: Expr) -> Iterator[str]:
    match expr:
        case Compare(left=left, right=right):
            yield from _operand_variables(left)
            yield from _operand_variables(right)
        case Not(inner=inner):
            yield from _expr_variables(inner)
        case And(items=items) | Or(items=items):
            for item in items:
                yield from _expr_variables(item)
        case Implies(antecedent=antecedent, consequent=consequent):
            yield from _expr_variables(antecedent)
            yield from _expr_variables(consequent)
        case BoolConst():
            pass


def variables_of(expr: Expr) -> tuple[str, ...]:
    """Distinct variable names of ``expr`` in order of first appearance."""
    return tuple(dict.fromkeys(_expr_variables(expr)))


@dataclass(frozen=True, slots=True)
class Constraint:
    """A constraint and, optionally, the text it was compiled from."""

    expr: Expr
    source: str | None = None


@dataclass(frozen=True, slots=True)
class CspProblem:
    """Variables with domains, and constraints over them."""

    variables: tuple[CspVar, ...]
    constraints: tuple[Constraint, ...] = ()
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        index: dict[str, int] = {}
        for position, variable in enumerate(self.variables):
            if variable.name in index:
                message = f"duplicate CSP variable: {variable.name}"
                raise ValueError(message)
            index[variable.name] = position
        for constraint in self.constraints:
            for name in variables_of(constraint.expr):
                if name not in index:
                    raise UnknownVariableError(name)
        object.__setattr__(self, "_index", index)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        """Declaration position of variable ``name``."""
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name) from None

    def variable(self, name: str) -> CspVar:
        return self.variables[self.index(name)]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(variable.name for variable in self.variables)

    def with_constraints(self, constraints: Iterable[Constraint]) -> CspProblem:
        """Copy with ``constraints`` appended."""
        return CspProblem(self.variables, (*self.constraints, *constraints))

    def with_domains(self, domains: Mapping[str, Sequence[Value] | None]) -> CspProblem:
        """Copy with some domains replaced."""
        for name in domains:
            self.index(name)
        variables = tuple(
            CspVar(variable.name, domains[variable.name]) if variable.name in domains else variable
            for variable in self.variables
        )
        return CspProblem(variables, self.constraints)


@dataclass(frozen=True, slots=True)
class Solution:
    """A total assignment, in variable declaration order."""

    values: tuple[tuple[str, Value], ...]

    def __getitem__(self, name: str) -> Value:
        for key, value in self.values:
            if key == name:
                return value
        raise KeyError(name)

    def as_dict(self) -> dict[str, Value]:
        return dict(self.values)


def filter_csp(problem: CspProblem, bindings: Mapping[str, Value] | Iterable[tuple[str, Value]]) -> CspProblem:
    """Pin variables to values by adding one equality constraint per binding.

    A value outside the variable's domain extends the domain first; an infinite domain, or an integer
    range the value lies outside of, becomes the single pinned value. ``problem`` itself is left untouched.
    """
    pairs = list(bindings.items()) if isinstance(bindings, Mapping) else list(bindings)
    domains: dict[str, Sequence[Value] | None] = {}
    for name, value in pairs:
        domain = domains[name] if name in domains else problem.variable(name).domain
        if domain is None or (isinstance(domain, range) and not contains(domain, value)):
            domains[name] = (value,)
        elif not contains(domain, value):
            domains[name] = (*domain, value)
    pinned = problem.with_domains(domains) if domains else problem
    return pinned.with_constraints(Constraint(equals(name, value)) for name, value in pairs)
