"""Finite domains for under-specified parameters, and ``LIKE`` wildcard matching."""

from __future__ import annotations

import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import pairwise
from typing import TYPE_CHECKING

from idlkit.api.models import EnumString, IntRange, OpenString
from idlkit.csp.values import exact_number, value_kind
from idlkit.idl.ast import Arithmetic, Like, NumCmp, Relational, StringIn, referenced_params, walk

if TYPE_CHECKING:
    from collections.abc import Iterable
    from decimal import Decimal

    from idlkit.api.models import OperationSpec, ParamDomain, Value

SENTINELS: tuple[str, ...] = ("⊥other", "~other~", "\x00")
DEFAULT_INT_WINDOW: tuple[int, int] = (0, 100)
DEFAULT_INT_MARGIN = 100


@lru_cache(maxsize=512)
def compile_wildcard(pattern: str) -> re.Pattern[str]:
    """Regular expression for a ``LIKE`` pattern: ``*`` any run, ``?`` one character, the rest literal."""
    parts: list[str] = []
    for char in pattern:
        if char == "*":
            parts.append(".*")
        elif char == "?":
            parts.append(".")
        else:
            parts.append(re.escape(char))
    return re.compile("".join(parts), re.DOTALL)


def wildcard_matches(pattern: str, value: object) -> bool:
    """Case-sensitive whole-string match; non-string values never match."""
    return isinstance(value, str) and compile_wildcard(pattern).fullmatch(value) is not None


def parse_int_window(text: str) -> tuple[int, int]:
    """``"LO:HI"`` to a pair of integers."""
    low, sep, high = text.partition(":")
    try:
        window = (int(low), int(high))
    except ValueError:
        window = None
    if not sep or window is None or window[0] > window[1]:
        message = f"invalid integer window {text!r}; expected LO:HI with LO <= HI"
        raise ValueError(message)
    return window


@dataclass
class _Harvest:
    strings: dict[str, dict[str, None]] = field(default_factory=lambda: defaultdict(dict))
    patterns: dict[str, dict[str, None]] = field(default_factory=lambda: defaultdict(dict))
    integers: dict[str, set[int]] = field(default_factory=lambda: defaultdict(set))
    linked: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))


def _integer_points(value: Decimal) -> set[int]:
    return {math.floor(value), math.ceil(value)}


def _harvest(spec: OperationSpec) -> _Harvest:
    harvest = _Harvest()
    for dependency in spec.model:
        for node in walk(dependency):
            match node:
                case StringIn(param=param, values=values):
                    for value in values:
                        harvest.strings[param.name].setdefault(value, None)
                case Like(param=param, pattern=pattern):
                    harvest.patterns[param.name].setdefault(pattern, None)
                case NumCmp(param=param, value=value):
                    harvest.integers[param.name] |= _integer_points(value)
                case Arithmetic(operation=operation, value=value):
                    for name in referenced_params(operation):
                        harvest.integers[name] |= _integer_points(value)
                case Relational(left=left, right=right) if left.name != right.name:
                    harvest.linked[left.name].add(right.name)
                    harvest.linked[right.name].add(left.name)
                case _:
                    pass
    return harvest


def _witness(pattern: str, taken: dict[str, None]) -> str | None:
    candidate = pattern.replace("*", "").replace("?", "a")
    while candidate in taken:
        candidate += "z"
    return candidate if wildcard_matches(pattern, candidate) else None


def _sentinels(constants: dict[str, None], patterns: dict[str, None], wanted: int) -> list[str]:
    chosen: list[str] = []
    for base in SENTINELS:
        for candidate in (base, f"{base}2"):
            if len(chosen) == wanted:
                return chosen
            if candidate in constants or any(wildcard_matches(pattern, candidate) for pattern in patterns):
                continue
            chosen.append(candidate)
    return chosen


def _string_domain(name: str, harvest: _Harvest) -> EnumString:
    constants: dict[str, None] = dict(harvest.strings.get(name, {}))
    patterns: dict[str, None] = dict(harvest.patterns.get(name, {}))
    linked = harvest.linked.get(name, set())
    for other in sorted(linked):
        constants.update(harvest.strings.get(other, {}))
        patterns.update(harvest.patterns.get(other, {}))
    values = dict(constants)
    for pattern in patterns:
        witness = _witness(pattern, values)
        if witness is not None:
            values.setdefault(witness, None)
    values.update(dict.fromkeys(_sentinels(values, patterns, 2 if linked else 1)))
    if not values:
        values[""] = None
    return EnumString(tuple(values))


def _int_domain(
    domain: IntRange,
    constants: set[int],
    margin: int,
    window: tuple[int, int] | None,
) -> IntRange:
    if window is not None:
        low, high = window
    elif constants:
        low, high = min(constants) - margin, max(constants) + margin
    else:
        low, high = DEFAULT_INT_WINDOW
    minimum = domain.minimum if domain.minimum is not None else low
    maximum = domain.maximum if domain.maximum is not None else high
    if minimum > maximum:
        if domain.minimum is not None:
            maximum = minimum + margin
        else:
            minimum = maximum - margin
    return IntRange(minimum, maximum)


def build_domains(
    spec: OperationSpec,
    *,
    int_margin: int = DEFAULT_INT_MARGIN,
    int_window: tuple[int, int] | None = None,
) -> OperationSpec:
    """Replace open string domains by symbolic finite ones and clip unbounded integer ranges.

    Open strings become the constants compared against them, one witness per ``LIKE`` pattern and a
    sentinel matching neither. Integer ranges missing a bound take it from ``int_window`` when given,
    otherwise from the integer constants of the model widened by ``int_margin`` (``[0, 100]`` without any).
    Finite and continuous domains are returned untouched.
    """
    harvest = _harvest(spec)
    replacements: dict[str, ParamDomain] = {}
    for parameter in spec.parameters:
        match parameter.domain:
            case OpenString():
                replacements[parameter.name] = _string_domain(parameter.name, harvest)
            case IntRange() as domain if not domain.bounded:
                constants = harvest.integers.get(parameter.name, set())
                replacements[parameter.name] = _int_domain(domain, constants, int_margin, int_window)
            case _:
                pass
    return spec.with_domains(replacements) if replacements else spec


def _normalised(number: Fraction) -> int | Fraction:
    return number.numerator if number.denominator == 1 else number


def continuous_representatives(
    spec: OperationSpec,
    pinned: Iterable[Value] = (),
    *,
    slots: int = 1,
) -> tuple[Value, ...]:
    """Finitely many real values standing in for a free ``number`` parameter.

    The cut points are ``0``, every numeric constant of the model and the numeric ``pinned`` values.
    Each cut point is kept, ``slots`` evenly spaced values are placed inside every gap between two cut
    points, and ``slots`` more lie beyond each end. Comparisons against constants, pinned values and up
    to ``slots`` other free parameters then behave on the representatives as on the whole line; sums and
    products of several free parameters are not covered.
    """
    cuts: set[Fraction] = {Fraction(0)}
    for dependency in spec.model:
        for node in walk(dependency):
            match node:
                case NumCmp(value=value) | Arithmetic(value=value):
                    cuts.add(Fraction(exact_number(value)))
                case _:
                    pass
    cuts.update(Fraction(value) for value in pinned if value_kind(value) == "number")  # type: ignore[arg-type]
    ordered = sorted(cuts)
    points: list[Fraction] = [ordered[0] - step for step in range(slots, 0, -1)]
    for low, high in pairwise(ordered):
        width = (high - low) / (slots + 1)
        points.extend(low + width * step for step in range(slots + 1))
    points.append(ordered[-1])
    points.extend(ordered[-1] + step for step in range(1, slots + 1))
    return tuple(_normalised(point) for point in points)
