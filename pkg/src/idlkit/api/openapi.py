"""IDL4OAS ingestion: OpenAPI operations whose dependencies live in ``x-dependencies``."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Any

from idlkit.api.documents import load_document
from idlkit.api.models import BooleanDomain, Continuous, EnumInt, EnumString, IntRange, OpenString, Parameter, bind
from idlkit.errors import (
    IdlSyntaxError,
    IdlValidationError,
    MalformedSourceError,
    OperationNotFoundError,
    SchemaUnsupportedError,
)
from idlkit.idl.ast import DependencyModel
from idlkit.idl.parser import parse_idl

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping
    from pathlib import Path

    from idlkit.api.models import OperationSpec, ParamDomain
    from idlkit.idl.ast import Dependency

HTTP_METHODS: tuple[str, ...] = ("get", "put", "post", "delete", "options", "head", "patch", "trace")
DEPENDENCIES_KEY = "x-dependencies"
_REF_ROOTS: tuple[tuple[str, ...], ...] = (
    ("components", "parameters"),
    ("components", "schemas"),
    ("parameters",),
    ("definitions",),
)


def load_openapi_document(path: str | Path) -> dict[str, Any]:
    """Load an OpenAPI description in either JSON or YAML syntax."""
    document = load_document(path)
    if not isinstance(document, dict) or not isinstance(document.get("paths"), dict):
        message = f"{path} is not an OpenAPI document (no 'paths' mapping)"
        raise MalformedSourceError(message)
    return document


def _operations(document: Mapping[str, Any]) -> Iterator[tuple[str, dict[str, Any], dict[str, Any]]]:
    """Yield ``("METHOD /path", path_item, operation)`` in document order."""
    for path, path_item in document.get("paths", {}).items():
        if not isinstance(path_item, dict):
            continue
        for method, operation in path_item.items():
            if method.lower() in HTTP_METHODS and isinstance(operation, dict):
                yield f"{method.upper()} {path}", path_item, operation


def list_operations(document: Mapping[str, Any]) -> list[str]:
    """Every ``METHOD /path`` identifier of the document."""
    return [identifier for identifier, _item, _operation in _operations(document)]


def _find_operation(document: Mapping[str, Any], operation_id: str) -> tuple[str, dict[str, Any], dict[str, Any]]:
    method, _, path = operation_id.strip().partition(" ")
    wanted = f"{method.upper()} {path.strip()}"
    for identifier, path_item, operation in _operations(document):
        if identifier == wanted or operation.get("operationId") == operation_id:
            return identifier, path_item, operation
    raise OperationNotFoundError(operation_id)


def _resolve(document: Mapping[str, Any], node: Any) -> Any:
    """Follow a single local ``$ref``; nested references are left alone."""
    if not isinstance(node, dict) or "$ref" not in node:
        return node
    reference = node["$ref"]
    if not isinstance(reference, str) or not reference.startswith("#/"):
        message = f"only local references are supported: {reference!r}"
        raise MalformedSourceError(message)
    segments = tuple(reference[2:].split("/"))
    if not any(segments[: len(root)] == root for root in _REF_ROOTS):
        message = f"unsupported reference target: {reference}"
        raise MalformedSourceError(message)
    target: Any = document
    for segment in segments:
        if not isinstance(target, dict) or segment not in target:
            message = f"dangling reference: {reference}"
            raise MalformedSourceError(message)
        target = target[segment]
    return target


def _integer(value: Any, name: str, *, rounding: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise SchemaUnsupportedError(name, f"non-numeric bound {value!r}")
    if isinstance(value, float):
        return math.ceil(value) if rounding == "up" else math.floor(value)
    return value


def schema_domain(name: str, schema: Mapping[str, Any]) -> ParamDomain:
    """Map an OpenAPI parameter schema to a parameter domain."""
    kind = schema.get("type")
    enum = schema.get("enum")
    if kind is None and isinstance(enum, list) and enum and all(isinstance(item, str) for item in enum):
        kind = "string"
    match kind:
        case "boolean":
            return BooleanDomain()
        case "integer" if enum is not None:
            if not isinstance(enum, list) or not all(
                isinstance(item, int) and not isinstance(item, bool) for item in enum
            ):
                raise SchemaUnsupportedError(name, f"integer enum must list integers, got {enum!r}")
            return EnumInt(tuple(dict.fromkeys(enum)))
        case "integer":
            minimum = schema.get("minimum")
            maximum = schema.get("maximum")
            low = _integer(minimum, name, rounding="up") if minimum is not None else None
            high = _integer(maximum, name, rounding="down") if maximum is not None else None
            if low is not None and high is not None and low > high:
                raise SchemaUnsupportedError(name, f"empty range [{minimum}, {maximum}]")
            return IntRange(low, high)
        case "string" if enum is not None:
            if not isinstance(enum, list) or not enum:
                raise SchemaUnsupportedError(name, f"string enum must be a non-empty list, got {enum!r}")
            return EnumString(tuple(dict.fromkeys(str(item) for item in enum)))
        case "string":
            return OpenString()
        case "number":
            return Continuous()
        case None:
            raise SchemaUnsupportedError(name, "schema has no type")
        case _:
            raise SchemaUnsupportedError(name, f"type '{kind}' has no parameter domain")


def _parameter(document: Mapping[str, Any], raw: Any) -> Parameter:
    declaration = _resolve(document, raw)
    if not isinstance(declaration, dict) or not isinstance(declaration.get("name"), str):
        message = f"parameter declaration without a name: {raw!r}"
        raise MalformedSourceError(message)
    name: str = declaration["name"]
    schema = declaration.get("schema")
    if schema is None:
        # Swagger 2 puts the type on the parameter itself.
        schema = {key: value for key, value in declaration.items() if key in {"type", "enum", "minimum", "maximum"}}
    schema = _resolve(document, schema)
    if not isinstance(schema, dict):
        raise SchemaUnsupportedError(name, f"schema is not a mapping: {schema!r}")
    location = declaration.get("in")
    return Parameter(
        name=name,
        domain=schema_domain(name, schema),
        required=bool(declaration.get("required", False)),
        location=location if isinstance(location, str) else None,
    )


def _merged_parameters(
    document: Mapping[str, Any],
    path_item: Mapping[str, Any],
    operation: Mapping[str, Any],
) -> list[Parameter]:
    """Path-item parameters overridden by operation parameters with the same name and location."""
    merged: dict[tuple[str, str | None], Parameter] = {}
    operation_level: list[Parameter] = []
    for raw in path_item.get("parameters") or []:
        parameter = _parameter(document, raw)
        merged[(parameter.name, parameter.location)] = parameter
    for raw in operation.get("parameters") or []:
        parameter = _parameter(document, raw)
        key = (parameter.name, parameter.location)
        if key in merged:
            merged[key] = parameter
        else:
            operation_level.append(parameter)
    return [*merged.values(), *operation_level]


def parse_dependency_entries(entries: Any) -> DependencyModel:
    """Concatenate the dependencies of every ``x-dependencies`` entry, tagging errors with the entry index."""
    if entries is None:
        return DependencyModel()
    if not isinstance(entries, list):
        message = f"{DEPENDENCIES_KEY} must be a list of strings"
        raise MalformedSourceError(message)
    dependencies: list[Dependency] = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, str):
            message = f"{DEPENDENCIES_KEY}[{index}] is not a string: {entry!r}"
            raise MalformedSourceError(message)
        try:
            model = parse_idl(entry)
        except IdlSyntaxError as exc:
            raise exc.with_entry(index) from None
        except IdlValidationError as exc:
            raise IdlValidationError(exc.diagnostics, entry=index) from None
        dependencies.extend(model.dependencies)
    return DependencyModel(tuple(dependencies))


def load_idl4oas(
    document: Mapping[str, Any],
    operation_id: str,
    *,
    idl: str | None = None,
) -> OperationSpec:
    """Bind one operation's parameters to its dependencies.

    ``idl`` replaces the operation's ``x-dependencies`` when given, so a plain OpenAPI document can be
    paired with a separate IDL file.
    """
    identifier, path_item, operation = _find_operation(document, operation_id)
    parameters = _merged_parameters(document, path_item, operation)
    model = parse_idl(idl) if idl is not None else parse_dependency_entries(operation.get(DEPENDENCIES_KEY))
    return bind(identifier, parameters, model)
