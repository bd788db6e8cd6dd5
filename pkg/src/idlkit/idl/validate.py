"""Structural restrictions the grammar alone does not enforce."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from idlkit.idl.ast import Group, Predefined, Term, walk

if TYPE_CHECKING:
    from collections.abc import Iterator

    from idlkit.idl.ast import DependencyModel, Location, Predicate

NEGATED_IN_PREDEFINED = "negated-element-in-predefined"


@dataclass(frozen=True, slots=True)
class Diagnostic:
    """One violated restriction, located at the offending element."""

    rule: str
    message: str
    line: int | None = None
    column: int | None = None

    def __str__(self) -> str:
        if self.line is None:
            return f"{self.rule}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.rule}: {self.message}"


def _negated_elements(argument: Predicate) -> Iterator[Term | Group | Predefined]:
    """Negated elements of one predefined argument, not descending into nested predefined dependencies."""
    for _connective, clause in argument.links():
        if isinstance(clause, Term | Predefined) and clause.negated:
            yield clause
        elif isinstance(clause, Group):
            if clause.negated:
                yield clause
            else:
                yield from _negated_elements(clause.inner)


def _at(location: Location | None) -> tuple[int | None, int | None]:
    return (location.line, location.column) if location is not None else (None, None)


def validate_model(model: DependencyModel) -> list[Diagnostic]:
    """Return every restriction violated by ``model``; an empty list means the model is valid."""
    diagnostics: list[Diagnostic] = []
    for dependency in model.dependencies:
        for node in walk(dependency):
            if not isinstance(node, Predefined):
                continue
            for argument in node.clauses:
                for element in _negated_elements(argument):
                    line, column = _at(element.location)
                    diagnostics.append(
                        Diagnostic(
                            rule=NEGATED_IN_PREDEFINED,
                            message=f"{node.kind} cannot contain negated elements within its parentheses",
                            line=line,
                            column=column,
                        ),
                    )
    return diagnostics
