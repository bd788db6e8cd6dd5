"""Parameter declarations, operation specifications and requests."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import TYPE_CHECKING

from idlkit.csp.values import value_kind
from idlkit.errors import DuplicateParameterError, UndeclaredParameterError, UnknownParameterError
from idlkit.idl.ast import DependencyModel

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

Value = bool | int | Fraction | str


@dataclass(frozen=True, slots=True)
class BooleanDomain:
    """``true`` / ``false``."""

    kind = "boolean"

    def values(self) -> Sequence[Value] | None:
        return (False, True)


@dataclass(frozen=True, slots=True)
class IntRange:
    """Integers in ``[minimum, maximum]``; a missing bound leaves the range open on that side."""

    minimum: int | None = None
    maximum: int | None = None
    kind = "integer"

    def __post_init__(self) -> None:
        if self.minimum is not None and self.maximum is not None and self.minimum > self.maximum:
            message = f"empty integer range [{self.minimum}, {self.maximum}]"
            raise ValueError(message)

    @property
    def bounded(self) -> bool:
        return self.minimum is not None and self.maximum is not None

    def values(self) -> Sequence[Value] | None:
        """A lazy ``range``; wide ranges are never materialised."""
        if self.minimum is None or self.maximum is None:
            return None
        return range(self.minimum, self.maximum + 1)


@dataclass(frozen=True, slots=True)
class EnumInt:
    """Enumerated integers."""

    options: tuple[int, ...]
    kind = "integer"

    def __post_init__(self) -> None:
        _check_options(self.options)

    def values(self) -> Sequence[Value] | None:
        return self.options


@dataclass(frozen=True, slots=True)
class EnumString:
    """Enumerated strings."""

    options: tuple[str, ...]
    kind = "string"

    def __post_init__(self) -> None:
        _check_options(self.options)

    def values(self) -> Sequence[Value] | None:
        return self.options


@dataclass(frozen=True, slots=True)
class OpenString:
    """Unconstrained strings; made finite by :func:`idlkit.api.domains.build_domains`."""

    kind = "string"

    def values(self) -> Sequence[Value] | None:
        return None


@dataclass(frozen=True, slots=True)
class Continuous:
    """Real numbers; usable for request validation, never enumerated."""

    kind = "number"

    def values(self) -> Sequence[Value] | None:
        return None


ParamDomain = BooleanDomain | IntRange | EnumInt | EnumString | OpenString | Continuous


def _check_options(options: Sequence[object]) -> None:
    if not options:
        message = "enumerated domain must not be empty"
        raise ValueError(message)
    if len(set(options)) != len(options):
        message = f"enumerated domain has duplicates: {list(options)}"
        raise ValueError(message)


@dataclass(frozen=True, slots=True)
class Parameter:
    """One operation parameter."""

    name: str
    domain: ParamDomain
    required: bool = False
    location: str | None = None


@dataclass(frozen=True, slots=True)
class OperationSpec:
    """An operation's parameters bound to its dependency model."""

    operation_id: str
    parameters: tuple[Parameter, ...]
    model: DependencyModel = field(default_factory=DependencyModel)

    def __iter__(self) -> Iterator[Parameter]:
        return iter(self.parameters)

    @property
    def names(self) -> list[str]:
        return [parameter.name for parameter in self.parameters]

    def parameter(self, name: str) -> Parameter:
        """Return the declared parameter ``name``."""
        for parameter in self.parameters:
            if parameter.name == name:
                return parameter
        raise UnknownParameterError(name)

    def with_domains(self, domains: Mapping[str, ParamDomain]) -> OperationSpec:
        """Copy with some parameter domains replaced."""
        parameters = tuple(
            replace(parameter, domain=domains[parameter.name]) if parameter.name in domains else parameter
            for parameter in self.parameters
        )
        return replace(self, parameters=parameters)


def bind(operation_id: str, parameters: Iterable[Parameter], model: DependencyModel) -> OperationSpec:
    """Build an :class:`OperationSpec`, rejecting duplicate declarations and undeclared references."""
    declared: dict[str, Parameter] = {}
    for parameter in parameters:
        if parameter.name in declared:
            raise DuplicateParameterError(parameter.name)
        declared[parameter.name] = parameter
    for name in model.referenced_params():
        if name not in declared:
            raise UndeclaredParameterError(name)
    return OperationSpec(operation_id, tuple(declared.values()), model)


@dataclass(frozen=True, slots=True, eq=False)
class Request:
    """Values of the parameters included in one API call; absent parameters are simply not bound.

    Equality and hashing respect value kinds: ``p=1`` and ``p=true`` are different requests.
    """

    bindings: tuple[tuple[str, Value], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "bindings", tuple(sorted(self.bindings, key=lambda item: item[0])))

    def _key(self) -> tuple[tuple[str, str, Value], ...]:
        return tuple((name, value_kind(value), value) for name, value in self.bindings)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Request):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @classmethod
    def of(cls, values: Mapping[str, Value] | None = None, /, **kwargs: Value) -> Request:
        """``Request.of({"p1": 2})`` or ``Request.of(p1=2)``."""
        merged = dict(values or {})
        merged.update(kwargs)
        return cls(tuple(merged.items()))

    def __contains__(self, name: object) -> bool:
        return any(key == name for key, _ in self.bindings)

    def __getitem__(self, name: str) -> Value:
        for key, value in self.bindings:
            if key == name:
                return value
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.bindings)

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.bindings]

    def as_dict(self) -> dict[str, Value]:
        return dict(self.bindings)

    def __str__(self) -> str:
        inner = ", ".join(f"{name}={value!r}" for name, value in self.bindings)
        return "{" + inner + "}"
