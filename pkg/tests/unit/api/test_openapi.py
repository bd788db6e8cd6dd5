"""Tests for IDL4OAS ingestion."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

import orjson
import pytest

from idlkit.api.models import BooleanDomain, Continuous, EnumInt, EnumString, IntRange, OpenString
from idlkit.api.openapi import (
    list_operations,
    load_idl4oas,
    load_openapi_document,
    parse_dependency_entries,
    schema_domain,
)
from idlkit.errors import (
    IdlSyntaxError,
    IdlValidationError,
    MalformedSourceError,
    OperationNotFoundError,
    SchemaUnsupportedError,
    SourceNotFoundError,
    UndeclaredParameterError,
)
from idlkit.idl.ast import Predefined, PredefinedKind, Requires
from idlkit.idl.render import render_idl

if TYPE_CHECKING:
    from pathlib import Path


def _document(parameters: list[dict[str, Any]], dependencies: list[str] | None = None) -> dict[str, Any]:
    operation: dict[str, Any] = {"parameters": parameters}
    if dependencies is not None:
        operation["x-dependencies"] = dependencies
    return {"openapi": "3.0.0", "paths": {"/items": {"get": operation}}}


def test_places_search_operation(datasets: Path) -> None:
    """Parameters come from the operation, references included, and dependencies from the extension."""
    document = load_openapi_document(datasets / "places.yaml")

    spec = load_idl4oas(document, "GET /search")

    assert spec.operation_id == "GET /search"
    assert spec.names == ["radius", "rankby", "keyword", "name", "type", "minprice", "maxprice"]
    assert spec.parameter("radius").domain == IntRange(1, 50000)
    assert spec.parameter("rankby").domain == OpenString()
    assert spec.parameter("minprice").location == "query"
    assert render_idl(spec.model) == (
        "ZeroOrOne(radius, rankby=='distance');\n"
        "IF rankby=='distance' THEN keyword OR name OR type;\n"
        "maxprice >= minprice;"
    )


def test_one_dependency_operation(datasets: Path) -> None:
    """Five parameters and a single conditional dependency."""
    spec = load_idl4oas(load_openapi_document(datasets / "one_dependency.yaml"), "GET /oneDependency")

    assert len(spec.parameters) == 5
    assert [parameter.domain for parameter in spec.parameters] == [
        BooleanDomain(),
        OpenString(),
        IntRange(-10, 10),
        EnumString(("one", "two")),
        EnumInt((1, 2, 3)),
    ]
    (dependency,) = spec.model.dependencies
    assert isinstance(dependency, Requires)
    consequence = dependency.consequence.first
    assert isinstance(consequence, Predefined)
    assert consequence.kind is PredefinedKind.ONLY_ONE


def test_operation_lookup_by_operation_id_and_method_case(datasets: Path) -> None:
    """``operationId`` and a lower-case method find the same operation."""
    document = load_openapi_document(datasets / "places.yaml")

    by_id = load_idl4oas(document, "getPhoto")
    by_method = load_idl4oas(document, "get /photo")

    assert by_id == by_method
    assert by_id.parameter("photoreference").required


def test_operation_without_extension_has_empty_model(datasets: Path) -> None:
    """Missing ``x-dependencies`` means no dependencies."""
    spec = load_idl4oas(load_openapi_document(datasets / "places.yaml"), "GET /details")
    assert len(spec.model) == 0


def test_list_operations_in_document_order(datasets: Path) -> None:
    """Operations are listed as ``METHOD /path``."""
    document = load_openapi_document(datasets / "places.yaml")
    assert list_operations(document) == [
        "GET /search",
        "GET /textsearch",
        "GET /photo",
        "GET /autocomplete",
        "GET /details",
    ]


def test_unknown_operation(datasets: Path) -> None:
    """Looking up an absent operation raises."""
    document = load_openapi_document(datasets / "places.yaml")
    with pytest.raises(OperationNotFoundError, match="POST /search"):
        load_idl4oas(document, "POST /search")


def test_separate_idl_replaces_extension(datasets: Path) -> None:
    """An explicit IDL text wins over ``x-dependencies``."""
    document = load_openapi_document(datasets / "places.yaml")

    spec = load_idl4oas(document, "GET /search", idl="Or(keyword, name);")

    assert render_idl(spec.model) == "Or(keyword, name);"


def test_undeclared_parameter_in_extension() -> None:
    """Dependencies may only mention declared parameters."""
    document = _document([{"name": "p1", "in": "query", "schema": {"type": "boolean"}}], ["IF p1 THEN p3;"])
    with pytest.raises(UndeclaredParameterError) as info:
        load_idl4oas(document, "GET /items")
    assert info.value.name == "p3"


def test_errors_carry_the_entry_index() -> None:
    """Syntax and validation errors say which array element failed."""
    with pytest.raises(IdlSyntaxError) as syntax:
        parse_dependency_entries(["Or(a, b);", "IF a THEN;"])
    assert syntax.value.entry == 1
    assert str(syntax.value).startswith("x-dependencies[1]")

    with pytest.raises(IdlValidationError) as validation:
        parse_dependency_entries(["Or(a, NOT b);"])
    assert validation.value.entry == 0


def test_entries_may_hold_several_dependencies() -> None:
    """Each entry is IDL text; the model concatenates them."""
    model = parse_dependency_entries(["Or(a, b); a >= b;", "IF a THEN b;"])
    assert len(model) == 3


def test_extension_must_be_a_list_of_strings() -> None:
    """Other shapes are malformed."""
    with pytest.raises(MalformedSourceError):
        parse_dependency_entries("Or(a, b);")
    with pytest.raises(MalformedSourceError):
        parse_dependency_entries([42])


@pytest.mark.parametrize(
    ("schema", "expected"),
    [
        ({"type": "boolean"}, BooleanDomain()),
        ({"type": "integer", "minimum": 0, "maximum": 4}, IntRange(0, 4)),
        ({"type": "integer", "minimum": 0.5, "maximum": 3.9}, IntRange(1, 3)),
        ({"type": "integer"}, IntRange()),
        ({"type": "integer", "enum": [3, 1, 3]}, EnumInt((3, 1))),
        ({"type": "string", "enum": ["a", "b"]}, EnumString(("a", "b"))),
        ({"enum": ["a", "b"]}, EnumString(("a", "b"))),
        ({"type": "string", "format": "date"}, OpenString()),
        ({"type": "number"}, Continuous()),
    ],
)
def test_schema_domain(schema: dict[str, Any], expected: object) -> None:
    """OpenAPI schema vocabulary maps onto parameter domains."""
    assert schema_domain("p", schema) == expected


@pytest.mark.parametrize(
    "schema",
    [{"type": "array", "items": {"type": "string"}}, {"type": "object"}, {}, {"type": "integer", "enum": ["x"]}],
)
def test_unsupported_schema(schema: dict[str, Any]) -> None:
    """Schemas without a parameter domain are rejected with the parameter name."""
    with pytest.raises(SchemaUnsupportedError) as info:
        schema_domain("tags", schema)
    assert info.value.param == "tags"


def test_swagger2_inline_types_and_path_level_parameters() -> None:
    """Path-item parameters are inherited unless the operation overrides them."""
    document = {
        "swagger": "2.0",
        "paths": {
            "/users": {
                "parameters": [
                    {"name": "limit", "in": "query", "type": "integer", "minimum": 1, "maximum": 10},
                    {"name": "verbose", "in": "query", "type": "boolean"},
                ],
                "get": {
                    "parameters": [
                        {"name": "verbose", "in": "query", "type": "string", "enum": ["yes", "no"]},
                        {"$ref": "#/parameters/Sort"},
                    ],
                },
            },
        },
        "parameters": {"Sort": {"name": "sort", "in": "query", "required": True, "type": "string"}},
    }

    spec = load_idl4oas(document, "GET /users")

    assert spec.names == ["limit", "verbose", "sort"]
    assert spec.parameter("verbose").domain == EnumString(("yes", "no"))
    assert spec.parameter("sort").required


def test_remote_references_are_rejected() -> None:
    """Only local references resolve."""
    document = _document([{"$ref": "other.yaml#/components/parameters/p"}])
    with pytest.raises(MalformedSourceError):
        load_idl4oas(document, "GET /items")


def test_json_documents_load(tmp_path: Path) -> None:
    """``.json`` files are read with the JSON decoder."""
    path = tmp_path / "api.json"
    document = _document([{"name": "a", "in": "query", "schema": {"type": "boolean"}}], ["Or(a, a);"])
    path.write_bytes(orjson.dumps(document))

    spec = load_idl4oas(load_openapi_document(path), "GET /items")

    assert spec.names == ["a"]


def test_non_openapi_document(tmp_path: Path) -> None:
    """A document without ``paths`` is not accepted."""
    path = tmp_path / "api.yaml"
    path.write_text("just: text\n", encoding="utf-8")
    with pytest.raises(MalformedSourceError, match="paths"):
        load_openapi_document(path)


def test_missing_file(tmp_path: Path) -> None:
    """A missing file is reported as such."""
    with pytest.raises(SourceNotFoundError):
        load_openapi_document(tmp_path / "absent.yaml")


def test_broken_yaml(tmp_path: Path) -> None:
    """Syntax errors in the document become ingestion errors."""
    path = tmp_path / "api.yaml"
    path.write_text("paths: [unclosed\n", encoding="utf-8")
    with pytest.raises(MalformedSourceError):
        load_openapi_document(path)
