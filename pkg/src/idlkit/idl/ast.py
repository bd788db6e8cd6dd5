"""Immutable syntax tree of IDL documents.

Nodes are frozen dataclasses. Source locations are carried for diagnostics but take no part in
equality, so a parsed model compares equal to a hand-built or re-parsed one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator
    from decimal import Decimal


class RelOp(StrEnum):
    """Relational operators shared by terms, relational and arithmetic dependencies."""

    LT = "<"
    GT = ">"
    LE = "<="
    GE = ">="
    EQ = "=="
    NE = "!="


class ArithOp(StrEnum):
    """Binary arithmetic operators."""

    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"


class PredefinedKind(StrEnum):
    """Keywords of the predefined dependencies."""

    OR = "Or"
    ONLY_ONE = "OnlyOne"
    ALL_OR_NONE = "AllOrNone"
    ZERO_OR_ONE = "ZeroOrOne"


class Connective(StrEnum):
    """Connectives chaining clauses into predicates."""

    AND = "AND"
    OR = "OR"


@dataclass(frozen=True, slots=True)
class Location:
    """One-based line and column of the first token of a node."""

    line: int
    column: int


@dataclass(frozen=True, slots=True)
class ParamRef:
    """Reference to an operation parameter; bracketed and plain spellings are the same node."""

    name: str
    location: Location | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.name:
            message = "parameter name must not be empty"
            raise ValueError(message)


@dataclass(frozen=True, slots=True)
class StringIn:
    """``p == 'A'|'B'``."""

    param: ParamRef
    values: tuple[str, ...]
    location: Location | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.values:
            message = "string comparison needs at least one value"
            raise ValueError(message)


@dataclass(frozen=True, slots=True)
class Like:
    """``p LIKE 'pattern'`` with ``*`` and ``?`` wildcards."""

    param: ParamRef
    pattern: str
    location: Location | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class BoolEq:
    """``p == true`` / ``p == false``."""

    param: ParamRef
    value: bool
    location: Location | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class NumCmp:
    """``p <op> number``."""

    param: ParamRef
    op: RelOp
    value: Decimal
    location: Location | None = field(default=None, compare=False)


ParamValueRelation = StringIn | Like | BoolEq | NumCmp


@dataclass(frozen=True, slots=True)
class Term:
    """Presence of a parameter or a parameter-value relation, optionally negated."""

    content: ParamRef | ParamValueRelation
    negated: bool = False
    location: Location | None = field(default=None, compare=False)

    @property
    def param(self) -> ParamRef:
        """Parameter the term is about."""
        return self.content if isinstance(self.content, ParamRef) else self.content.param


@dataclass(frozen=True, slots=True)
class ArithGroup:
    """Parenthesised arithmetic operation."""

    inner: ArithExpr
    location: Location | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class ArithBinary:
    """Left-associated binary operation; the right operand is never itself a bare binary node."""

    op: ArithOp
    left: ArithExpr
    right: ParamRef | ArithGroup
    location: Location | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if isinstance(self.right, ArithBinary):
            message = "right operand of an arithmetic operation must be a parameter or a group"
            raise TypeError(message)


ArithExpr = ParamRef | ArithGroup | ArithBinary


@dataclass(frozen=True, slots=True)
class Relational:
    """``p1 <op> p2``."""

    left: ParamRef
    op: RelOp
    right: ParamRef
    location: Location | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Arithmetic:
    """``operation <op> number``."""

    operation: ArithExpr
    op: RelOp
    value: Decimal
    location: Location | None = field(default=None, compare=False)


@dataclass(frozen=True, slots=True)
class Predefined:
    """``[NOT] Or|OnlyOne|AllOrNone|ZeroOrOne(P1, P2, ...)``."""

    kind: PredefinedKind
    clauses: tuple[Predicate, ...]
    negated: bool = False
    location: Location | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.clauses) < 2:  # noqa: PLR2004
            message = f"{self.kind} needs at least two arguments"
            raise ValueError(message)


@dataclass(frozen=True, slots=True)
class Group:
    """``[NOT] ( predicate )``."""

    inner: Predicate
    negated: bool = False
    location: Location | None = field(default=None, compare=False)


Clause = Term | Relational | Arithmetic | Predefined | Group


@dataclass(frozen=True, slots=True)
class Predicate:
    """A clause optionally continued by ``AND``/``OR`` and another predicate (right-nested)."""

    first: Clause
    connective: Connective | None = None
    rest: Predicate | None = None
    location: Location | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if (self.connective is None) != (self.rest is None):
            message = "a predicate continuation needs both a connective and a predicate"
            raise ValueError(message)

    def links(self) -> Iterator[tuple[Connective | None, Clause]]:
        """Yield ``(connective, clause)`` pairs; the first connective is ``None``."""
        connective: Connective | None = None
        node: Predicate | None = self
        while node is not None:
            yield connective, node.first
            connective = node.connective
            node = node.rest


@dataclass(frozen=True, slots=True)
class Requires:
    """``IF condition THEN consequence``."""

    condition: Predicate
    consequence: Predicate
    location: Location | None = field(default=None, compare=False)


Dependency = Requires | Predefined | Relational | Arithmetic
Node = (
    Dependency | Predicate | Group | Term | ParamRef | StringIn | Like | BoolEq | NumCmp | ArithGroup | ArithBinary
)


@dataclass(frozen=True, slots=True)
class DependencyModel:
    """Ordered dependencies of one API operation."""

    dependencies: tuple[Dependency, ...] = ()

    def __len__(self) -> int:
        return len(self.dependencies)

    def __iter__(self) -> Iterator[Dependency]:
        return iter(self.dependencies)

    def referenced_params(self) -> list[str]:
        """Parameter names in order of first appearance."""
        return referenced_params(*self.dependencies)


def predicate(first: Clause, *more: tuple[Connective, Clause]) -> Predicate:
    """Build a right-nested predicate from a clause and ``(connective, clause)`` continuations."""
    if not more:
        return Predicate(first)
    (connective, head), *tail = more
    return Predicate(first, connective, predicate(head, *tail))


def children(node: Node) -> tuple[Node, ...]:
    """Direct sub-nodes of ``node`` in source order."""
    match node:
        case Requires(condition=condition, consequence=consequence):
            return (condition, consequence)
        case Predefined(clauses=clauses):
            return clauses
        case Relational(left=left, right=right):
            return (left, right)
        case Arithmetic(operation=operation):
            return (operation,)
        case Predicate(first=first, rest=rest):
            return (first,) if rest is None else (first, rest)
        case Group(inner=inner) | ArithGroup(inner=inner):
            return (inner,)
        case Term(content=content):
            return (content,)
        case StringIn(param=param) | Like(param=param) | BoolEq(param=param) | NumCmp(param=param):
            return (param,)
        case ArithBinary(left=left, right=right):
            return (left, right)
        case _:
            return ()


def walk(node: Node) -> Iterator[Node]:
    """Depth-first, pre-order traversal."""
    yield node
    for child in children(node):
        yield from walk(child)


def referenced_params(*nodes: Node) -> list[str]:
    """Distinct parameter names below ``nodes`` in order of first appearance."""
    seen: dict[str, None] = {}
    for root in nodes:
        for node in walk(root):
            if isinstance(node, ParamRef):
                seen.setdefault(node.name, None)
    return list(seen)
