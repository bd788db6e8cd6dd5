"""Lark-based parser producing :mod:`idlkit.idl.ast` models."""

from __future__ import annotations

import re
from decimal import Decimal
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Any

from lark import Lark, Token, Transformer, UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, v_args
from lark.exceptions import UnexpectedToken, VisitError

from idlkit.errors import IdlSyntaxError, IdlValidationError
from idlkit.idl.ast import (
    ArithBinary,
    ArithGroup,
    ArithOp,
    Arithmetic,
    BoolEq,
    Connective,
    DependencyModel,
    Group,
    Like,
    Location,
    NumCmp,
    ParamRef,
    Predefined,
    PredefinedKind,
    Predicate,
    Relational,
    RelOp,
    Requires,
    StringIn,
    Term,
)
from idlkit.idl.validate import validate_model

if TYPE_CHECKING:
    from lark.tree import Meta

    from idlkit.idl.ast import ArithExpr, Clause, Dependency

GRAMMAR_PATH = Path(__file__).resolve().parent / "grammar.lark"

# The contextual lexer reads a keyword as ID wherever only ID is acceptable.
RESERVED_WORDS: frozenset[str] = frozenset(
    {
        "IF", "THEN", "AND", "OR", "NOT", "LIKE",
        "Or", "OnlyOne", "AllOrNone", "ZeroOrOne",
        "true", "false",
    },
)

_ESCAPE = re.compile(r"\\(.)", re.DOTALL)


@lru_cache(maxsize=1)
def _parser() -> Lark:
    """Return the cached LALR parser."""
    return Lark(
        GRAMMAR_PATH.read_text(encoding="utf-8"),
        parser="lalr",
        propagate_positions=True,
        maybe_placeholders=True,
    )


def _location(meta: Meta) -> Location | None:
    if getattr(meta, "empty", True):
        return None
    return Location(meta.line, meta.column)


def _is_token(child: object, kind: str) -> bool:
    return isinstance(child, Token) and child.type == kind


def _unquote(token: Token) -> str:
    return _ESCAPE.sub(r"\1", str(token)[1:-1])


def _number(token: Token) -> Decimal:
    return Decimal(str(token))


@v_args(meta=True)
class IdlTransformer(Transformer[Token, DependencyModel]):
    """Turn the Lark parse tree into AST nodes."""

    def start(self, _meta: Meta, children: list[Dependency]) -> DependencyModel:
        return DependencyModel(tuple(children))

    def requires(self, meta: Meta, children: list[Any]) -> Requires:
        condition, consequence = (child for child in children if isinstance(child, Predicate))
        return Requires(condition, consequence, location=_location(meta))

    def predefined(self, meta: Meta, children: list[Any]) -> Predefined:
        negated = any(_is_token(child, "NOT") for child in children)
        kind = next(
            PredefinedKind(str(child))
            for child in children
            if isinstance(child, Token) and child.type in {"OR_KW", "ONLY_ONE", "ALL_OR_NONE", "ZERO_OR_ONE"}
        )
        clauses = tuple(child for child in children if isinstance(child, Predicate))
        return Predefined(kind, clauses, negated=negated, location=_location(meta))

    def relational(self, meta: Meta, children: list[Any]) -> Relational:
        left, op, right = children
        return Relational(left, op, right, location=_location(meta))

    def arithmetic(self, meta: Meta, children: list[Any]) -> Arithmetic:
        operation, op, number = children
        return Arithmetic(operation, op, _number(number), location=_location(meta))

    def operation(self, meta: Meta, children: list[Any]) -> ArithExpr:
        result: ArithExpr = children[0]
        for index in range(1, len(children), 2):
            result = ArithBinary(ArithOp(str(children[index])), result, children[index + 1], location=_location(meta))
        return result

    def arith_group(self, meta: Meta, children: list[Any]) -> ArithGroup:
        return ArithGroup(children[0], location=_location(meta))

    def predicate(self, meta: Meta, children: list[Any]) -> Predicate:
        first: Clause = children[0]
        rest = [child for child in children[1:] if child is not None]
        if not rest:
            return Predicate(first, location=_location(meta))
        connective, continuation = rest
        return Predicate(first, Connective(str(connective)), continuation, location=_location(meta))

    def group(self, meta: Meta, children: list[Any]) -> Group:
        inner = next(child for child in children if isinstance(child, Predicate))
        negated = any(_is_token(child, "NOT") for child in children)
        return Group(inner, negated=negated, location=_location(meta))

    def term(self, meta: Meta, children: list[Any]) -> Term:
        negated = any(_is_token(child, "NOT") for child in children)
        content = next(child for child in children if child is not None and not _is_token(child, "NOT"))
        return Term(content, negated=negated, location=_location(meta))

    def string_in(self, meta: Meta, children: list[Any]) -> StringIn:
        param = children[0]
        values = tuple(_unquote(child) for child in children if _is_token(child, "STRING"))
        return StringIn(param, values, location=_location(meta))

    def like(self, meta: Meta, children: list[Any]) -> Like:
        param, _keyword, pattern = children
        return Like(param, _unquote(pattern), location=_location(meta))

    def bool_eq(self, meta: Meta, children: list[Any]) -> BoolEq:
        param, _eq, value = children
        return BoolEq(param, str(value) == "true", location=_location(meta))

    def num_cmp(self, meta: Meta, children: list[Any]) -> NumCmp:
        param, op, number = children
        return NumCmp(param, op, _number(number), location=_location(meta))

    def param(self, meta: Meta, children: list[Token]) -> ParamRef:
        (token,) = children
        text = str(token)
        if token.type == "BRACKETED":
            name = text[1:-1].strip()
            if not name:
                message = "empty bracketed parameter name"
                raise IdlSyntaxError(message, token.line or 0, token.column or 0)
        else:
            if text in RESERVED_WORDS:
                message = f"reserved word '{text}' cannot be used as a parameter name (write [{text}])"
                raise IdlSyntaxError(message, token.line or 0, token.column or 0)
            name = text
        return ParamRef(name, location=_location(meta))

    def relop(self, _meta: Meta, children: list[Token]) -> RelOp:
        return RelOp(str(children[0]))


def _end_position(source: str) -> tuple[int, int]:
    lines = source.split("\n")
    return len(lines), len(lines[-1]) + 1


def _convert_lark_error(error: UnexpectedInput, source: str) -> IdlSyntaxError:
    if isinstance(error, UnexpectedEOF):
        line, column = _end_position(source)
        expected = ", ".join(sorted(error.expected)) if error.expected else "more input"
        return IdlSyntaxError(f"unexpected end of input, expected one of: {expected}", line, column)
    if isinstance(error, UnexpectedToken):
        if error.token.type == "$END":
            line, column = _end_position(source)
            return IdlSyntaxError("unexpected end of input; is a ';' missing?", line, column)
        expected = ", ".join(sorted(error.expected))
        message = f"unexpected token {str(error.token)!r}, expected one of: {expected}"
        return IdlSyntaxError(message, error.line, error.column)
    if isinstance(error, UnexpectedCharacters):
        return IdlSyntaxError(f"unexpected character {error.char!r}", error.line, error.column)
    return IdlSyntaxError(str(error), getattr(error, "line", 0), getattr(error, "column", 0))


def parse_idl(source: str, *, validate: bool = True) -> DependencyModel:
    """Parse IDL text into a :class:`DependencyModel`.

    Raises :class:`IdlSyntaxError` for grammar violations and, unless ``validate`` is false,
    :class:`IdlValidationError` for negated elements inside predefined dependencies.
    """
    try:
        tree = _parser().parse(source)
    except UnexpectedInput as exc:
        raise _convert_lark_error(exc, source) from exc
    try:
        model = IdlTransformer().transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, IdlSyntaxError):
            raise exc.orig_exc from None
        raise
    if validate:
        diagnostics = validate_model(model)
        if diagnostics:
            raise IdlValidationError(diagnostics)
    return model
