"""Solution-set identities between predefined dependencies and their expansions."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from idlkit.api.domains import build_domains
from idlkit.api.models import BooleanDomain, EnumString, IntRange
from idlkit.csp.backtracking import BacktrackingSolver
from idlkit.mapping.mapper import OnlyOneSemantics, map_spec

if TYPE_CHECKING:
    from collections.abc import Callable

    from idlkit.api.models import Value
    from tests.conftest import SpecFactory

    Solutions = set[tuple[tuple[str, Value], ...]]
    SolutionsOf = Callable[..., Solutions]

DOMAINS = {"p1": BooleanDomain(), "p2": IntRange(0, 2), "p3": EnumString(("A", "B"))}
ARGUMENTS = [
    ("p1", "p2"),
    ("p1 AND p2 > 0", "p3"),
    ("p3=='A'", "p1 OR p2 <= 1"),
    ("p2 == 2", "p3 LIKE 'B*'"),
    ("p1", "p2 >= 1", "p3=='B'"),
]
KINDS = ["Or", "OnlyOne", "AllOrNone", "ZeroOrOne"]
SEMANTICS = [OnlyOneSemantics.EXACT, OnlyOneSemantics.AT_MOST_ONE]


@pytest.fixture
def solutions(make_spec: SpecFactory) -> SolutionsOf:
    """Every solution of the compiled CSP for an IDL text over :data:`DOMAINS`."""

    def _solutions(idl: str, onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT) -> Solutions:
        mapped = map_spec(build_domains(make_spec(idl, DOMAINS)), onlyone)
        return {solution.values for solution in BacktrackingSolver().solve_all(mapped.csp)}

    return _solutions


@pytest.mark.parametrize("arguments", ARGUMENTS[:4], ids=" | ".join)
def test_all_or_none_is_a_pair_of_implications(solutions: SolutionsOf, arguments: tuple[str, str]) -> None:
    """``AllOrNone(A, B)`` admits exactly what ``IF A THEN B; IF B THEN A;`` admits."""
    first, second = arguments

    predefined = solutions(f"AllOrNone({first}, {second});")
    implications = solutions(f"IF {first} THEN {second}; IF {second} THEN {first};")

    assert predefined == implications


@pytest.mark.parametrize("onlyone", SEMANTICS)
@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("arguments", ARGUMENTS, ids=" | ".join)
def test_negation_splits_the_unconstrained_solutions(
    solutions: SolutionsOf,
    arguments: tuple[str, ...],
    kind: str,
    onlyone: OnlyOneSemantics,
) -> None:
    """A dependency and its ``NOT`` form are disjoint and together cover every assignment."""
    call = f"{kind}({', '.join(arguments)})"

    everything = solutions("", onlyone)
    positive = solutions(f"{call};", onlyone)
    negative = solutions(f"NOT {call};", onlyone)

    assert not positive & negative
    assert positive | negative == everything


@pytest.mark.parametrize("arguments", ARGUMENTS, ids=" | ".join)
def test_zero_or_one_adds_the_empty_choice_to_only_one(solutions: SolutionsOf, arguments: tuple[str, ...]) -> None:
    """Under exact semantics ``ZeroOrOne`` is ``OnlyOne`` plus the assignments where no argument holds."""
    listed = ", ".join(arguments)

    zero_or_one = solutions(f"ZeroOrOne({listed});")
    only_one = solutions(f"OnlyOne({listed});")
    none_holds = solutions(f"NOT Or({listed});")

    assert not only_one & none_holds
    assert zero_or_one == only_one | none_holds


@pytest.mark.parametrize("arguments", ARGUMENTS, ids=" | ".join)
def test_zero_or_one_matches_at_most_one_only_one(solutions: SolutionsOf, arguments: tuple[str, ...]) -> None:
    """Once ``OnlyOne`` means at most one, the two predefined dependencies coincide."""
    listed = ", ".join(arguments)
    semantics = OnlyOneSemantics.AT_MOST_ONE

    zero_or_one = solutions(f"ZeroOrOne({listed});", semantics)

    assert zero_or_one == solutions(f"OnlyOne({listed});", semantics)
