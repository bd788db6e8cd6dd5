"""Shared fixtures for the idlkit test suite."""

from __future__ import annotations

from collections.abc import Callable, Collection, Iterator, Mapping
from pathlib import Path

import pytest
import structlog

from idlkit.api.models import OperationSpec, ParamDomain, Parameter, bind
from idlkit.idl.parser import parse_idl

DATASETS = Path(__file__).resolve().parent.parent / "datasets"

SpecFactory = Callable[..., OperationSpec]


def build_spec(
    idl: str,
    domains: Mapping[str, ParamDomain],
    *,
    required: Collection[str] = (),
    operation_id: str = "GET /test",
) -> OperationSpec:
    """Bind inline parameter domains to inline IDL text."""
    parameters = [Parameter(name, domain, required=name in required) for name, domain in domains.items()]
    return bind(operation_id, parameters, parse_idl(idl))


@pytest.fixture
def datasets() -> Path:
    """Directory holding the example documents."""
    return DATASETS


@pytest.fixture
def make_spec() -> SpecFactory:
    """Return :func:`build_spec` for tests that assemble specifications inline."""
    return build_spec


@pytest.fixture(autouse=True)
def _reset_structlog() -> Iterator[None]:
    """Reset structlog state before and after each test."""
    structlog.reset_defaults()
    yield
    structlog.reset_defaults()
