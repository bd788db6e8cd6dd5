"""Tests for the ``idlc`` CLI entry points."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest
from typer.testing import CliRunner

from idlkit.cli import main as cli_module
from idlkit.container import Container, build_container
from idlkit.settings import Settings

if TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture
def runner() -> CliRunner:
    """Return a CLI runner for invoking Typer commands."""
    return CliRunner()


@pytest.fixture(autouse=True)
def _container(monkeypatch: pytest.MonkeyPatch) -> None:
    """Use a container with fixed settings regardless of the environment."""

    def _build() -> Container:
        return build_container(Settings(log_level="WARNING", seed=11, int_window=None))

    monkeypatch.setattr(cli_module, "build_container", _build)


def _places(datasets: Path, operation: str) -> list[str]:
    return ["--oas", str(datasets / "places.yaml"), "--operation", operation]


def _files(datasets: Path, idl: str, params: str) -> list[str]:
    return ["--idl", str(datasets / idl), "--params", str(datasets / params)]


def test_check_spec_valid(runner: CliRunner, datasets: Path) -> None:
    """A defect-free operation is reported valid with exit code 0."""
    result = runner.invoke(cli_module.app, ["check-spec", *_places(datasets, "GET /search")])

    assert result.exit_code == 0
    assert result.stdout.strip() == "valid"


def test_check_spec_invalid_lists_defects(runner: CliRunner, datasets: Path) -> None:
    """Dead and false-optional parameters explain the negative verdict."""
    result = runner.invoke(cli_module.app, ["check-spec", *_files(datasets, "dead.idl", "dead.params")])

    assert result.exit_code == 1
    assert result.stdout.splitlines() == ["invalid", "dead parameters: p1", "false optional parameters: p2"]


def test_analyze_json_report(runner: CliRunner, datasets: Path) -> None:
    """The report uses the camel-case field names."""
    result = runner.invoke(cli_module.app, ["analyze", *_files(datasets, "dead.idl", "dead.params"), "--json"])

    assert result.exit_code == 1
    payload = json.loads(result.stdout)
    assert payload["command"] == "analyze"
    assert payload["operation"] == "operation dead"
    assert payload["report"]["deadParams"] == ["p1"]
    assert payload["report"]["falseOptionalParams"] == ["p2"]
    assert payload["report"]["requestCount"] == 2


def test_analyze_text(runner: CliRunner, datasets: Path) -> None:
    """One line per finding, with the count skipped for large ranges."""
    result = runner.invoke(cli_module.app, ["analyze", *_places(datasets, "GET /search")])

    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[:6] == [
        "operation: GET /search",
        "consistent: yes",
        "valid specification: yes",
        "dead parameters: -",
        "false optional parameters: -",
        "requests: not counted",
    ]
    assert lines[6].startswith("note: request count skipped")


def test_check_request_names_violations(runner: CliRunner, datasets: Path) -> None:
    """An invalid request echoes each broken dependency."""
    result = runner.invoke(
        cli_module.app,
        ["check-request", *_places(datasets, "GET /search"), "--request", "radius=1000,rankby=distance"],
    )

    assert result.exit_code == 1
    assert result.stdout.splitlines() == [
        "invalid",
        "violated: ZeroOrOne(radius, rankby=='distance');",
        "violated: IF rankby=='distance' THEN keyword OR name OR type;",
    ]


def test_check_request_from_file(runner: CliRunner, datasets: Path, tmp_path: Path) -> None:
    """Request files carry typed values."""
    request_file = tmp_path / "request.json"
    request_file.write_text('{"p1": 2, "p2": 5}', encoding="utf-8")

    files = _files(datasets, "valid.idl", "valid.params")

    result = runner.invoke(cli_module.app, ["check-request", *files, "--request-file", str(request_file), "--json"])

    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["verdict"] == "valid"
    assert payload["requests"] == [{"p1": 2, "p2": 5}]
    assert payload["violations"] == []


def test_check_request_missing_required(runner: CliRunner, datasets: Path) -> None:
    """Required parameters left out are reported as violations."""
    arguments = ["check-request", *_places(datasets, "GET /photo"), "--request", "maxwidth=10"]

    result = runner.invoke(cli_module.app, arguments)

    assert result.exit_code == 1
    assert "violated: missing required parameter: photoreference" in result.stdout


def test_check_partial(runner: CliRunner, datasets: Path) -> None:
    """A partial request is judged by its best extension."""
    partial = ["check-partial", *_places(datasets, "GET /search")]

    assert runner.invoke(cli_module.app, [*partial, "--request", "maxprice=2"]).exit_code == 0
    rejected = runner.invoke(cli_module.app, [*partial, "--request", "radius=500,rankby=distance"])
    assert rejected.exit_code == 1
    assert rejected.stdout.strip() == "invalid"


def test_dead_params_and_false_optionals(runner: CliRunner, datasets: Path) -> None:
    """Finding a defect is the negative answer."""
    dead = runner.invoke(cli_module.app, ["dead-params", *_files(datasets, "dead.idl", "dead.params")])
    optional = runner.invoke(cli_module.app, ["false-optionals", *_files(datasets, "dead.idl", "dead.params")])
    clean = runner.invoke(cli_module.app, ["dead-params", *_places(datasets, "GET /textsearch")])

    assert (dead.exit_code, dead.stdout.strip()) == (1, "p1")
    assert (optional.exit_code, optional.stdout.strip()) == (1, "p2")
    assert (clean.exit_code, clean.stdout.strip()) == (0, "no dead parameters")


def test_enumeration_commands(runner: CliRunner, datasets: Path) -> None:
    """Listing and counting agree."""
    listed = runner.invoke(cli_module.app, ["all-requests", *_files(datasets, "dead.idl", "dead.params")])
    counted = runner.invoke(cli_module.app, ["count-requests", *_files(datasets, "or.idl", "two-bools.params")])

    assert listed.exit_code == 0
    assert sorted(listed.stdout.splitlines()) == ["p2=false", "p2=true"]
    assert (counted.exit_code, counted.stdout.strip()) == (0, "8")


def test_random_request_is_seeded(runner: CliRunner, datasets: Path) -> None:
    """The same seed gives the same samples."""
    arguments = ["random-request", *_files(datasets, "or.idl", "two-bools.params"), "--seed", "3", "--count", "5"]

    first = runner.invoke(cli_module.app, [*arguments, "--json"])
    second = runner.invoke(cli_module.app, [*arguments, "--json"])

    assert first.exit_code == 0
    assert json.loads(first.stdout)["count"] == 5
    assert json.loads(first.stdout)["requests"] == json.loads(second.stdout)["requests"]


def test_export_csp(runner: CliRunner, datasets: Path) -> None:
    """The compiled CSP is printed without a trailing blank line."""
    arguments = ["export-csp", *_places(datasets, "GET /photo"), "--onlyone", "at-most-one"]

    result = runner.invoke(cli_module.app, arguments)

    assert result.exit_code == 0
    assert result.stdout.startswith("// GET /photo\nV = { photoreference, photoreferenceSet,")
    assert "(maxheightSet==true OR maxwidthSet==true)" not in result.stdout


def test_parse_idl_only(runner: CliRunner, datasets: Path) -> None:
    """Parsing needs no parameter declarations."""
    result = runner.invoke(cli_module.app, ["parse", "--idl", str(datasets / "valid.idl")])

    assert result.exit_code == 0
    assert result.stdout == "Or(p1, p2 AND p3);\nOnlyOne(p2, p3);\n"


def test_list_operations(runner: CliRunner, datasets: Path) -> None:
    """Operations are listed in document order."""
    result = runner.invoke(cli_module.app, ["list-operations", "--oas", str(datasets / "places.yaml"), "--json"])

    assert result.exit_code == 0
    assert json.loads(result.stdout)["parameters"][:2] == ["GET /search", "GET /textsearch"]


@pytest.mark.parametrize(
    "arguments",
    [
        ["check-spec"],
        ["check-spec", "--oas", "places.yaml"],
        ["count-requests", "--idl", "or.idl", "--params", "two-bools.params", "--int-window", "9:1"],
        ["check-request", "--idl", "or.idl", "--params", "two-bools.params", "--request", "p3=true"],
        ["check-request", "--idl", "or.idl", "--params", "two-bools.params", "--request", "p1=maybe"],
        ["parse", "--idl", "missing.idl"],
    ],
)
def test_usage_and_input_errors_exit_with_two(runner: CliRunner, datasets: Path, arguments: list[str]) -> None:
    """Bad invocations and unreadable inputs are not verdicts."""
    suffixes = (".yaml", ".idl", ".params")
    resolved = [str(datasets / argument) if argument.endswith(suffixes) else argument for argument in arguments]

    result = runner.invoke(cli_module.app, resolved)

    assert result.exit_code == 2
    assert "error" in result.output.lower()


def test_syntax_error_reports_position(runner: CliRunner, tmp_path: Path) -> None:
    """IDL syntax errors carry line and column."""
    source = tmp_path / "broken.idl"
    source.write_text("Or(p1, p2);\nIF p1 THEN;\n", encoding="utf-8")

    result = runner.invoke(cli_module.app, ["parse", "--idl", str(source)])

    assert result.exit_code == 2
    assert "line 2, column" in result.output


def test_container_value_error(monkeypatch: pytest.MonkeyPatch, runner: CliRunner, datasets: Path) -> None:
    """Container construction failures surface a helpful error message."""

    def _raise_value_error() -> None:
        raise ValueError("bad container config")

    monkeypatch.setattr(cli_module, "build_container", _raise_value_error)

    result = runner.invoke(cli_module.app, ["count-requests", *_files(datasets, "or.idl", "two-bools.params")])

    assert result.exit_code == 2
    assert "Failed to initialize container: bad container config" in result.output
