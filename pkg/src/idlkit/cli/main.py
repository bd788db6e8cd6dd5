"""``idlc``: parse, compile and analyse inter-parameter dependencies from the command line.

Exit codes: 0 when the answer is affirmative (or the command only reports), 1 when it is negative,
2 for usage, parse and ingestion errors.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING, Any, NoReturn

import typer
from pydantic import ValidationError

from idlkit.api.documents import read_text
from idlkit.api.domains import parse_int_window
from idlkit.api.openapi import list_operations, load_idl4oas, load_openapi_document
from idlkit.api.params_file import load_idl_file, load_spec_files
from idlkit.api.requests import coerce_request, load_request_file, parse_request_literal
from idlkit.container import build_container
from idlkit.csp.values import format_number
from idlkit.errors import IdlError
from idlkit.idl.render import render_dependency, render_idl
from idlkit.mapping.mapper import OnlyOneSemantics
from idlkit.models import CommandOutput

if TYPE_CHECKING:
    from idlkit.analysis.analyzer import Analyzer
    from idlkit.api.models import OperationSpec, Request
    from idlkit.container import Container

EXIT_AFFIRMATIVE = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2

app = typer.Typer(help="Analyse inter-parameter dependencies of web API operations.", no_args_is_help=True)

OAS_OPTION = typer.Option(None, "--oas", help="OpenAPI document (YAML or JSON) with x-dependencies.")
OPERATION_OPTION = typer.Option(None, "--operation", help="Operation as 'METHOD /path' or its operationId.")
IDL_OPTION = typer.Option(None, "--idl", help="IDL file with the dependencies.")
PARAMS_OPTION = typer.Option(None, "--params", help="Parameter declarations (YAML or JSON) for --idl.")
JSON_OPTION = typer.Option(False, "--json", help="Print a JSON document instead of text.")  # noqa: FBT003
INT_WINDOW_OPTION = typer.Option(None, "--int-window", help="Window LO:HI for integers without bounds.")
ONLYONE_OPTION = typer.Option(None, "--onlyone", help="OnlyOne semantics (default: exact).")
REQUEST_OPTION = typer.Option(None, "--request", help="Request literal: name=value[,name=value]*.")
REQUEST_FILE_OPTION = typer.Option(None, "--request-file", help="Request as a YAML or JSON mapping.")


def _fail(message: str, code: int = EXIT_USAGE) -> NoReturn:
    typer.echo(message, err=True)
    raise typer.Exit(code=code)


@contextmanager
def _reported_errors() -> Iterator[None]:
    """Turn library errors into a message on stderr and exit code 2."""
    try:
        yield
    except IdlError as exc:
        _fail(f"error: {exc}")
    except ValueError as exc:
        _fail(f"error: {exc}")


def _build_container_or_exit() -> Container:
    """Return a configured container or exit with an error message."""
    try:
        return build_container()
    except (ValidationError, ValueError) as exc:
        _fail(f"Failed to initialize container: {exc}")


def _load_spec(oas: Path | None, operation: str | None, idl: Path | None, params: Path | None) -> OperationSpec:
    if oas is not None:
        if params is not None:
            _fail("error: --params cannot be combined with --oas")
        if operation is None:
            _fail("error: --operation is required with --oas")
        document = load_openapi_document(oas)
        return load_idl4oas(document, operation, idl=read_text(idl) if idl is not None else None)
    if idl is None or params is None:
        _fail("error: give either --oas PATH --operation ID or --idl PATH --params PATH")
    return load_spec_files(params, idl, operation or f"operation {idl.stem}")


def _analyzer(  # noqa: PLR0913
    container: Container,
    oas: Path | None,
    operation: str | None,
    idl: Path | None,
    params: Path | None,
    int_window: str | None,
    onlyone: OnlyOneSemantics | None,
    seed: int | None = None,
) -> Analyzer:
    spec = _load_spec(oas, operation, idl, params)
    container.logger.info(
        "spec.loaded",
        operation=spec.operation_id,
        parameters=len(spec.parameters),
        dependencies=len(spec.model),
    )
    window = parse_int_window(int_window) if int_window is not None else None
    return container.analyzer(spec, onlyone=onlyone, int_window=window, seed=seed)


def _plain(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return format_number(value)
    return value


def _request_data(request: Request) -> dict[str, Any]:
    return {name: _plain(value) for name, value in request.bindings}


def _request_text(request: Request) -> str:
    if not len(request):
        return "{}"
    parts: list[str] = []
    for name, value in request.bindings:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, Fraction):
            text = format_number(value)
        else:
            text = str(value)
        parts.append(f"{name}={text}")
    return ",".join(parts)


def _read_request(analyzer: Analyzer, request: str | None, request_file: Path | None) -> Request:
    if request is not None and request_file is not None:
        _fail("error: give either --request or --request-file, not both")
    raw: dict[str, Any] = {}
    if request is not None:
        raw = dict(parse_request_literal(request))
    elif request_file is not None:
        raw = load_request_file(request_file)
    return coerce_request(analyzer.spec, raw)


def _emit(output: CommandOutput, *, as_json: bool, code: int = EXIT_AFFIRMATIVE) -> None:
    if as_json:
        typer.echo(output.model_dump_json(by_alias=True, indent=2))
    elif output.text:
        typer.echo(output.text)
    if code != EXIT_AFFIRMATIVE:
        raise typer.Exit(code=code)


def _names_text(names: list[str]) -> str:
    return ", ".join(names) if names else "-"


@app.command("check-spec")
def check_spec(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Check that the specification is consistent and free of dead and false-optional parameters."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        consistent = analyzer.is_consistent()
        dead = analyzer.dead_parameters() if consistent else list(analyzer.spec.names)
        false_optional = analyzer.false_optional_parameters()
    valid = consistent and not dead and not false_optional
    lines = ["valid" if valid else "invalid"]
    if not consistent:
        lines.append("inconsistent: no request satisfies every dependency")
    elif not valid:
        lines.append(f"dead parameters: {_names_text(dead)}")
        lines.append(f"false optional parameters: {_names_text(false_optional)}")
    output = CommandOutput(
        command="check-spec",
        operation=analyzer.spec.operation_id,
        verdict="valid" if valid else "invalid",
        parameters=sorted({*dead, *false_optional}),
        text="\n".join(lines),
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if valid else EXIT_NEGATIVE)


@app.command()
def analyze(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Run every analysis operation and print the report."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        report = analyzer.analyze_all()
    lines = [
        f"operation: {analyzer.spec.operation_id}",
        f"consistent: {'yes' if report.consistent else 'no'}",
        f"valid specification: {'yes' if report.valid_spec else 'no'}",
        f"dead parameters: {_names_text(report.dead_params)}",
        f"false optional parameters: {_names_text(report.false_optional_params)}",
        f"requests: {report.request_count if report.request_count is not None else 'not counted'}",
        *(f"note: {diagnostic}" for diagnostic in report.diagnostics),
    ]
    output = CommandOutput(
        command="analyze",
        operation=analyzer.spec.operation_id,
        verdict="valid" if report.valid_spec else "invalid",
        count=report.request_count,
        report=report,
        text="\n".join(lines),
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if report.valid_spec else EXIT_NEGATIVE)


@app.command("check-request")
def check_request(  # noqa: PLR0913
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    request: str | None = REQUEST_OPTION,
    request_file: Path | None = REQUEST_FILE_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Decide whether a complete request satisfies every dependency."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        parsed = _read_request(analyzer, request, request_file)
        valid = analyzer.is_valid_request(parsed)
        violations = [f"{render_dependency(dependency)};" for dependency in analyzer.violated_dependencies(parsed)]
        violations.extend(f"missing required parameter: {name}" for name in analyzer.missing_required(parsed))
    verdict = "valid" if valid else "invalid"
    output = CommandOutput(
        command="check-request",
        operation=analyzer.spec.operation_id,
        verdict=verdict,
        requests=[_request_data(parsed)],
        violations=violations,
        text="\n".join([verdict, *(f"violated: {violation}" for violation in violations)]),
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if valid else EXIT_NEGATIVE)


@app.command("check-partial")
def check_partial(  # noqa: PLR0913
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    request: str | None = REQUEST_OPTION,
    request_file: Path | None = REQUEST_FILE_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Decide whether a partial request can be extended into a valid one."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        parsed = _read_request(analyzer, request, request_file)
        valid = analyzer.is_valid_partial_request(parsed)
    verdict = "valid" if valid else "invalid"
    output = CommandOutput(
        command="check-partial",
        operation=analyzer.spec.operation_id,
        verdict=verdict,
        requests=[_request_data(parsed)],
        text=verdict,
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if valid else EXIT_NEGATIVE)


@app.command("dead-params")
def dead_params(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """List parameters that no valid request can include."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        dead = analyzer.dead_parameters()
    output = CommandOutput(
        command="dead-params",
        operation=analyzer.spec.operation_id,
        verdict="found" if dead else "none",
        parameters=dead,
        text="\n".join(dead) if dead else "no dead parameters",
    )
    _emit(output, as_json=as_json, code=EXIT_NEGATIVE if dead else EXIT_AFFIRMATIVE)


@app.command("false-optionals")
def false_optionals(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """List optional parameters that every valid request must include."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        found = analyzer.false_optional_parameters()
    output = CommandOutput(
        command="false-optionals",
        operation=analyzer.spec.operation_id,
        verdict="found" if found else "none",
        parameters=found,
        text="\n".join(found) if found else "no false optional parameters",
    )
    _emit(output, as_json=as_json, code=EXIT_NEGATIVE if found else EXIT_AFFIRMATIVE)


@app.command("all-requests")
def all_requests(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Enumerate every valid request, one per line."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        requests = analyzer.all_requests()
    output = CommandOutput(
        command="all-requests",
        operation=analyzer.spec.operation_id,
        count=len(requests),
        requests=[_request_data(item) for item in requests],
        text="\n".join(_request_text(item) for item in requests),
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if requests else EXIT_NEGATIVE)


@app.command("count-requests")
def count_requests(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Print the number of valid requests."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        total = analyzer.number_of_requests()
    output = CommandOutput(
        command="count-requests",
        operation=analyzer.spec.operation_id,
        count=total,
        text=str(total),
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if total else EXIT_NEGATIVE)


@app.command("random-request")
def random_request(  # noqa: PLR0913
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
    seed: int | None = typer.Option(None, "--seed", help="Sampler seed; overrides IDLC_SEED."),
    count: int = typer.Option(1, "--count", min=1, help="Number of samples."),
) -> None:
    """Draw valid requests at random."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone, seed=seed)
        samples = analyzer.random_requests(count)
    output = CommandOutput(
        command="random-request",
        operation=analyzer.spec.operation_id,
        count=len(samples),
        requests=[_request_data(item) for item in samples],
        text="\n".join(_request_text(item) for item in samples) if samples else "no valid request exists",
    )
    _emit(output, as_json=as_json, code=EXIT_AFFIRMATIVE if samples else EXIT_NEGATIVE)


@app.command("export-csp")
def export_csp(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
    int_window: str | None = INT_WINDOW_OPTION,
    onlyone: OnlyOneSemantics | None = ONLYONE_OPTION,
) -> None:
    """Print the CSP the dependencies compile to."""
    container = _build_container_or_exit()
    with _reported_errors():
        analyzer = _analyzer(container, oas, operation, idl, params, int_window, onlyone)
        text = analyzer.csp_text().rstrip("\n")
    _emit(CommandOutput(command="export-csp", operation=analyzer.spec.operation_id, text=text), as_json=as_json)


@app.command()
def parse(
    oas: Path | None = OAS_OPTION,
    operation: str | None = OPERATION_OPTION,
    idl: Path | None = IDL_OPTION,
    params: Path | None = PARAMS_OPTION,
    as_json: bool = JSON_OPTION,  # noqa: FBT001
) -> None:
    """Parse and validate dependencies, printing them in canonical form."""
    _build_container_or_exit()
    with _reported_errors():
        if oas is None and params is None and idl is not None:
            model = load_idl_file(idl)
            operation_id = None
        else:
            spec = _load_spec(oas, operation, idl, params)
            model, operation_id = spec.model, spec.operation_id
    output = CommandOutput(
        command="parse",
        operation=operation_id,
        count=len(model),
        text=render_idl(model),
    )
    _emit(output, as_json=as_json)


@app.command("list-operations")
def list_operations_command(
    oas: Path = typer.Option(..., "--oas", help="OpenAPI document (YAML or JSON)."),
    as_json: bool = JSON_OPTION,  # noqa: FBT001
) -> None:
    """List the operations of an OpenAPI document."""
    _build_container_or_exit()
    with _reported_errors():
        operations = list_operations(load_openapi_document(oas))
    output = CommandOutput(
        command="list-operations",
        count=len(operations),
        parameters=operations,
        text="\n".join(operations),
    )
    _emit(output, as_json=as_json)
