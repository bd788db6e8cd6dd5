"""Data models for analysis reports and command output."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator


def _empty_names() -> list[str]:
    """Return an empty list of parameter names."""
    return []


class AnalysisReport(BaseModel):
    """Aggregate result of the analysis operations over one operation."""

    model_config = ConfigDict(populate_by_name=True)

    consistent: bool
    valid_spec: bool = Field(alias="validSpec")
    dead_params: list[str] = Field(default_factory=_empty_names, alias="deadParams")
    false_optional_params: list[str] = Field(default_factory=_empty_names, alias="falseOptionalParams")
    request_count: int | None = Field(default=None, alias="requestCount")
    diagnostics: list[str] = Field(default_factory=_empty_names)

    @field_validator("dead_params", "false_optional_params")
    @classmethod
    def _sorted(cls, names: list[str]) -> list[str]:
        return sorted(set(names))


class CommandOutput(BaseModel):
    """The ``--json`` envelope shared by every command; unused fields stay ``null``."""

    command: str
    operation: str | None = None
    verdict: str | None = None
    count: int | None = None
    parameters: list[str] | None = None
    requests: list[dict[str, Any]] | None = None
    violations: list[str] | None = None
    report: AnalysisReport | None = None
    text: str | None = None
