"""Type-aware comparison of CSP values.

Booleans, numbers (``int`` and :class:`~fractions.Fraction`) and strings are three distinct kinds, so
``True`` never equals ``1`` here even though it does in plain Python.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Literal

from idlkit.idl.ast import RelOp

if TYPE_CHECKING:
    from collections.abc import Iterable
    from decimal import Decimal

    from idlkit.api.models import Value

ValueKind = Literal["boolean", "number", "string", "other"]


def value_kind(value: object) -> ValueKind:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, int | Fraction):
        return "number"
    if isinstance(value, str):
        return "string"
    return "other"


def same_value(left: object, right: object) -> bool:
    """Equality that respects value kinds."""
    return value_kind(left) == value_kind(right) and left == right


def contains(values: Iterable[Value], candidate: Value) -> bool:
    if isinstance(values, range):
        if value_kind(candidate) != "number":
            return False
        number = Fraction(candidate)  # type: ignore[arg-type]
        return number.denominator == 1 and number.numerator in values
    return any(same_value(value, candidate) for value in values)


def compare_values(left: object, op: RelOp, right: object) -> bool:
    """Apply a relational operator.

    Across kinds only ``!=`` holds. Booleans support ``==`` and ``!=`` only; numbers compare exactly;
    strings compare lexicographically.
    """
    kind = value_kind(left)
    if kind != value_kind(right) or kind == "other":
        return op is RelOp.NE
    match op:
        case RelOp.EQ:
            return left == right
        case RelOp.NE:
            return left != right
        case _ if kind == "boolean":
            return False
        case RelOp.LT:
            return left < right  # type: ignore[operator]
        case RelOp.GT:
            return left > right  # type: ignore[operator]
        case RelOp.LE:
            return left <= right  # type: ignore[operator]
        case RelOp.GE:
            return left >= right  # type: ignore[operator]


def exact_number(value: Decimal) -> int | Fraction:
    """Decimal literal as an exact number; integral values become ``int``."""
    fraction = Fraction(value)
    return fraction.numerator if fraction.denominator == 1 else fraction


def format_number(value: int | Fraction) -> str:
    """Decimal text for terminating values, ``n/d`` otherwise."""
    if isinstance(value, int) or value.denominator == 1:
        return str(int(value))
    denominator = value.denominator
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = max(twos, fives)
    scaled = abs(value.numerator) * 10**digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
