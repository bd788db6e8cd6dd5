"""Reading request literals and files, and typing their values by the declared domains."""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from idlkit.api.documents import load_document
from idlkit.api.models import BooleanDomain, Continuous, EnumInt, IntRange, Request
from idlkit.errors import MalformedSourceError, TypeMismatchError

if TYPE_CHECKING:
    from collections.abc import Mapping
    from pathlib import Path

    from idlkit.api.models import OperationSpec, Value

_INTEGER = re.compile(r"[+-]?\d+")


def _unquote(text: str) -> str:
    if len(text) >= 2 and text[0] == text[-1] and text[0] in {"'", '"'}:  # noqa: PLR2004
        return text[1:-1]
    return text


def parse_request_literal(text: str) -> dict[str, str]:
    """``"p1=2,p2='a b'"`` to ``{"p1": "2", "p2": "a b"}``; the empty literal is the empty request."""
    raw: dict[str, str] = {}
    if not text.strip():
        return raw
    for pair in text.split(","):
        name, sep, value = pair.partition("=")
        name = name.strip()
        if not sep or not name:
            message = f"malformed request pair {pair.strip()!r}; expected name=value"
            raise MalformedSourceError(message)
        if name in raw:
            message = f"parameter '{name}' given twice in the request"
            raise MalformedSourceError(message)
        raw[name] = _unquote(value.strip())
    return raw


def load_request_file(path: str | Path) -> dict[str, Any]:
    """A JSON or YAML mapping of parameter names to values."""
    document = load_document(path)
    if document is None:
        return {}
    if not isinstance(document, dict) or not all(isinstance(key, str) for key in document):
        message = f"{path}: a request file must be a mapping from parameter names to values"
        raise MalformedSourceError(message)
    return document


def _as_bool(name: str, value: Any) -> bool:
    if isinstance(value, bool):
        return value
    if isinstance(value, str) and value.lower() in {"true", "false"}:
        return value.lower() == "true"
    raise TypeMismatchError(name, value, "a boolean")


def _as_int(name: str, value: Any) -> int:
    if isinstance(value, int) and not isinstance(value, bool):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str) and _INTEGER.fullmatch(value.strip()):
        return int(value)
    raise TypeMismatchError(name, value, "an integer")


def _as_number(name: str, value: Any) -> Fraction | int:
    if isinstance(value, bool):
        raise TypeMismatchError(name, value, "a number")
    if isinstance(value, int):
        return value
    try:
        number = Fraction(Decimal(str(value).strip()))
    except (InvalidOperation, ValueError) as exc:
        raise TypeMismatchError(name, value, "a number") from exc
    return number.numerator if number.denominator == 1 else number


def _as_string(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return str(value)


def coerce_value(spec: OperationSpec, name: str, value: Any) -> Value:
    """Type one raw value by the domain of parameter ``name``."""
    domain = spec.parameter(name).domain
    match domain:
        case BooleanDomain():
            return _as_bool(name, value)
        case IntRange() | EnumInt():
            return _as_int(name, value)
        case Continuous():
            return _as_number(name, value)
        case _:
            if isinstance(value, dict | list) or value is None:
                raise TypeMismatchError(name, value, "a string")
            return _as_string(value)


def coerce_request(spec: OperationSpec, raw: Mapping[str, Any]) -> Request:
    """Build a :class:`Request` whose values carry the declared parameter types.

    Values outside an enumerated domain or an integer range are kept; judging them is the job of the
    analysis operations.
    """
    return Request.of({name: coerce_value(spec, name, value) for name, value in raw.items()})
