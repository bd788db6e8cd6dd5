"""Random IDL specifications covering every pair of combinatorial factors.

Used by the property suite that cross-checks the CSP-based analysis against direct evaluation. Domains
are kept small so the full request space of every generated operation can be enumerated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal
from itertools import combinations
from typing import TYPE_CHECKING, Any

from idlkit.api.models import BooleanDomain, EnumInt, EnumString, IntRange, OpenString, Parameter, bind
from idlkit.idl.ast import (
    ArithBinary,
    ArithOp,
    Arithmetic,
    BoolEq,
    Connective,
    DependencyModel,
    Like,
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
    predicate,
)
from idlkit.idl.parser import parse_idl
from idlkit.idl.render import render_idl

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from idlkit.api.models import OperationSpec, ParamDomain
    from idlkit.idl.ast import Clause, Dependency

FACTORS: dict[str, tuple[Any, ...]] = {
    "parameters": (5, 10),
    "optional_share": (0, 50, 100),
    "parameter_type": ("boolean", "integer", "string", "enum_int", "enum_string"),
    "dependencies": (5, 10),
    "dependency_kind": ("requires", "or", "onlyone", "allornone", "zeroorone", "arith_rel", "complex"),
    "complex_size": (2, 5),
}
CANDIDATES_PER_ROUND = 40
PARAMETER_TYPES: tuple[str, ...] = FACTORS["parameter_type"]
_PREDEFINED = {
    "or": PredefinedKind.OR,
    "onlyone": PredefinedKind.ONLY_ONE,
    "allornone": PredefinedKind.ALL_OR_NONE,
    "zeroorone": PredefinedKind.ZERO_OR_ONE,
}
_ORDERING = (RelOp.LT, RelOp.GT, RelOp.LE, RelOp.GE, RelOp.EQ, RelOp.NE)
_NUMERIC_TYPES = frozenset({"integer", "enum_int"})


@dataclass(frozen=True, slots=True)
class SpecConfig:
    """One row of the combinatorial design."""

    parameters: int
    optional_share: int
    parameter_type: str
    dependencies: int
    dependency_kind: str
    complex_size: int

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> SpecConfig:
        return cls(**{name: values[name] for name in FACTORS})


def _pairs(configuration: Mapping[str, Any], names: Sequence[str]) -> set[tuple[str, Any, str, Any]]:
    return {(left, configuration[left], right, configuration[right]) for left, right in combinations(names, 2)}


def pairwise_configurations(
    factors: Mapping[str, Sequence[Any]] | None = None,
    rng: random.Random | None = None,
) -> list[dict[str, Any]]:
    """Greedy covering design: every pair of values of two factors appears in some configuration."""
    factors = factors if factors is not None else FACTORS
    stream = rng if rng is not None else random.Random(0)  # noqa: S311
    names = list(factors)
    uncovered: set[tuple[str, Any, str, Any]] = set()
    for left, right in combinations(names, 2):
        uncovered |= {(left, a, right, b) for a in factors[left] for b in factors[right]}
    configurations: list[dict[str, Any]] = []
    while uncovered:
        ordered = sorted(uncovered, key=repr)
        best: dict[str, Any] = {}
        best_gain = -1
        for _ in range(CANDIDATES_PER_ROUND):
            left, a, right, b = stream.choice(ordered)
            candidate = {name: stream.choice(tuple(factors[name])) for name in names}
            candidate[left], candidate[right] = a, b
            gain = len(_pairs(candidate, names) & uncovered)
            if gain > best_gain:
                best, best_gain = candidate, gain
        configurations.append(best)
        uncovered -= _pairs(best, names)
    return configurations


def _domain(kind: str, *, small: bool) -> ParamDomain:
    match kind:
        case "boolean":
            return BooleanDomain()
        case "integer":
            return IntRange(0, 1) if small else IntRange(0, 2)
        case "string":
            return OpenString()
        case "enum_int":
            return EnumInt((1, 2)) if small else EnumInt((1, 2, 3))
        case _:
            return EnumString(("A", "B")) if small else EnumString(("A", "B", "C"))


class SpecGenerator:
    """Builds one random dependency model for a configuration."""

    def __init__(self, config: SpecConfig, rng: random.Random) -> None:
        self.config = config
        self.rng = rng
        self.small = config.parameters > 5  # noqa: PLR2004
        self.kinds: dict[str, str] = {}
        for index in range(config.parameters):
            rotated = PARAMETER_TYPES[(index // 2) % len(PARAMETER_TYPES)]
            kind = config.parameter_type if index % 2 == 0 else rotated
            self.kinds[f"p{index + 1}"] = kind

    def parameters(self) -> list[Parameter]:
        names = list(self.kinds)
        optional_count = round(len(names) * self.config.optional_share / 100)
        optional = set(self.rng.sample(names, optional_count))
        return [
            Parameter(name, _domain(self.kinds[name], small=self.small), required=name not in optional)
            for name in names
        ]

    def _relation(self, name: str) -> StringIn | Like | BoolEq | NumCmp:
        param = ParamRef(name)
        match self.kinds[name]:
            case "boolean":
                return BoolEq(param, self.rng.random() < 0.5)  # noqa: PLR2004
            case "integer":
                return NumCmp(param, self.rng.choice(_ORDERING), Decimal(self.rng.randint(0, 1 if self.small else 2)))
            case "enum_int":
                return NumCmp(param, self.rng.choice(_ORDERING), Decimal(self.rng.randint(1, 2 if self.small else 3)))
            case "string":
                if self.small:
                    return StringIn(param, ("A",))
                if self.rng.random() < 0.3:  # noqa: PLR2004
                    return Like(param, self.rng.choice(("A*", "?B")))
                return StringIn(param, tuple(self.rng.sample(("A", "B"), self.rng.randint(1, 2))))
            case _:
                return StringIn(param, tuple(self.rng.sample(("A", "B"), self.rng.randint(1, 2))))

    def term(self, name: str, *, allow_negation: bool = True) -> Term:
        content = ParamRef(name) if self.rng.random() < 0.5 else self._relation(name)  # noqa: PLR2004
        negated = allow_negation and self.rng.random() < 0.2  # noqa: PLR2004
        return Term(content, negated=negated)

    def _names(self, count: int) -> list[str]:
        return self.rng.sample(list(self.kinds), min(count, len(self.kinds)))

    def chain(self, names: Sequence[str], *, allow_negation: bool = True) -> Predicate:
        clauses: list[Clause] = [self.term(name, allow_negation=allow_negation) for name in names]
        links = [(self.rng.choice((Connective.AND, Connective.OR)), clause) for clause in clauses[1:]]
        return predicate(clauses[0], *links)

    def requires(self) -> Requires:
        names = self._names(self.rng.randint(2, 3))
        split = self.rng.randint(1, len(names) - 1)
        return Requires(self.chain(names[:split]), self.chain(names[split:]))

    def predefined(self, kind: str) -> Predefined:
        names = self._names(self.rng.randint(2, 3))
        arguments = tuple(Predicate(self.term(name, allow_negation=False)) for name in names)
        return Predefined(_PREDEFINED[kind], arguments, negated=self.rng.random() < 0.15)  # noqa: PLR2004

    def arithmetic_or_relational(self) -> Dependency:
        numeric = [name for name, kind in self.kinds.items() if kind in _NUMERIC_TYPES]
        if len(numeric) >= 2 and self.rng.random() < 0.5:  # noqa: PLR2004
            left, right = self.rng.sample(numeric, 2)
            operation = ArithBinary(self.rng.choice((ArithOp.ADD, ArithOp.SUB)), ParamRef(left), ParamRef(right))
            return Arithmetic(operation, self.rng.choice(_ORDERING), Decimal(self.rng.randint(0, 4)))
        by_kind: dict[str, list[str]] = {}
        for name, kind in self.kinds.items():
            group = "number" if kind in _NUMERIC_TYPES else kind
            if not (self.small and group == "string"):
                by_kind.setdefault(group, []).append(name)
        candidates = [names for names in by_kind.values() if len(names) >= 2]  # noqa: PLR2004
        if not candidates:
            return self.requires()
        names = self.rng.choice(candidates)
        left, right = self.rng.sample(names, 2)
        ops = _ORDERING if self.kinds[left] in _NUMERIC_TYPES else (RelOp.EQ, RelOp.NE)
        return Relational(ParamRef(left), self.rng.choice(ops), ParamRef(right))

    def complex(self) -> Requires:
        """A conditional whose consequence nests a predefined dependency, spanning ``complex_size`` atoms."""
        names = self._names(max(self.config.complex_size, 3))
        condition = self.chain(names[:1])
        rest = names[1:]
        kind = self.rng.choice(tuple(_PREDEFINED.values()))
        middle = max(1, len(rest) // 2)
        arguments = (
            self.chain(rest[:middle], allow_negation=False),
            self.chain(rest[middle:], allow_negation=False),
        )
        return Requires(condition, Predicate(Predefined(kind, arguments)))

    def dependency(self, kind: str) -> Dependency:
        match kind:
            case "requires":
                return self.requires()
            case "arith_rel":
                return self.arithmetic_or_relational()
            case "complex":
                return self.complex()
            case _:
                return self.predefined(kind)

    def model(self) -> DependencyModel:
        kinds = FACTORS["dependency_kind"]
        dependencies = [
            self.dependency(self.config.dependency_kind if index % 2 == 0 else self.rng.choice(kinds))
            for index in range(self.config.dependencies)
        ]
        return DependencyModel(tuple(dependencies))


def generate_spec(
    config: SpecConfig | Mapping[str, Any],
    rng: random.Random,
    operation_id: str = "GET /generated",
) -> OperationSpec:
    """A valid specification for ``config``; the model is rendered and parsed back before binding."""
    resolved = config if isinstance(config, SpecConfig) else SpecConfig.from_mapping(config)
    generator = SpecGenerator(resolved, rng)
    parameters = generator.parameters()
    model = parse_idl(render_idl(generator.model()))
    return bind(operation_id, parameters, model)
