"""Canonical IDL text for AST nodes."""

from __future__ import annotations

import re
from typing import TYPE_CHECKING

from idlkit.idl.ast import (
    ArithBinary,
    ArithGroup,
    Arithmetic,
    BoolEq,
    Group,
    Like,
    NumCmp,
    ParamRef,
    Predefined,
    Predicate,
    Relational,
    Requires,
    StringIn,
    Term,
)
from idlkit.idl.parser import RESERVED_WORDS

if TYPE_CHECKING:
    from decimal import Decimal

    from idlkit.idl.ast import ArithExpr, Clause, Dependency, DependencyModel

_PLAIN_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def render_param(param: ParamRef) -> str:
    """Plain identifier when possible, bracketed form otherwise."""
    if _PLAIN_NAME.fullmatch(param.name) and param.name not in RESERVED_WORDS:
        return param.name
    return f"[{param.name}]"


def render_string(value: str) -> str:
    """Single-quoted literal with ``\\`` and ``'`` escaped."""
    escaped = value.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


def render_number(value: Decimal) -> str:
    """Fixed-point decimal text, never scientific notation."""
    return format(value, "f")


def render_arith(expr: ArithExpr) -> str:
    """Arithmetic operation with explicit groups only."""
    match expr:
        case ParamRef():
            return render_param(expr)
        case ArithGroup(inner=inner):
            return f"({render_arith(inner)})"
        case ArithBinary(op=op, left=left, right=right):
            return f"{render_arith(left)} {op} {render_arith(right)}"


def _render_term(term: Term) -> str:
    prefix = "NOT " if term.negated else ""
    match term.content:
        case ParamRef():
            body = render_param(term.content)
        case StringIn(param=param, values=values):
            body = f"{render_param(param)}==" + "|".join(render_string(value) for value in values)
        case Like(param=param, pattern=pattern):
            body = f"{render_param(param)} LIKE {render_string(pattern)}"
        case BoolEq(param=param, value=value):
            body = f"{render_param(param)}=={'true' if value else 'false'}"
        case NumCmp(param=param, op=op, value=value):
            body = f"{render_param(param)}{op}{render_number(value)}"
    return prefix + body


def render_clause(clause: Clause) -> str:
    """One clause of a predicate."""
    match clause:
        case Term():
            return _render_term(clause)
        case Group(inner=inner, negated=negated):
            return f"{'NOT ' if negated else ''}({render_predicate(inner)})"
        case _:
            return render_dependency(clause)


def render_predicate(predicate: Predicate) -> str:
    """Clauses joined by their connectives, right-nested as written."""
    parts: list[str] = []
    for connective, clause in predicate.links():
        if connective is not None:
            parts.append(str(connective))
        parts.append(render_clause(clause))
    return " ".join(parts)


def render_dependency(dependency: Dependency) -> str:
    """A single dependency without the terminating ``;``."""
    match dependency:
        case Requires(condition=condition, consequence=consequence):
            return f"IF {render_predicate(condition)} THEN {render_predicate(consequence)}"
        case Predefined(kind=kind, clauses=clauses, negated=negated):
            arguments = ", ".join(render_predicate(clause) for clause in clauses)
            return f"{'NOT ' if negated else ''}{kind}({arguments})"
        case Relational(left=left, op=op, right=right):
            return f"{render_param(left)} {op} {render_param(right)}"
        case Arithmetic(operation=operation, op=op, value=value):
            return f"{render_arith(operation)} {op} {render_number(value)}"


def render_idl(model: DependencyModel) -> str:
    """One ``;``-terminated dependency per line; the empty model renders as the empty string."""
    return "\n".join(f"{render_dependency(dependency)};" for dependency in model.dependencies)
