"""Parameter declarations, their sources and request values."""

from idlkit.api.domains import build_domains, parse_int_window, wildcard_matches
from idlkit.api.models import (
    BooleanDomain,
    Continuous,
    EnumInt,
    EnumString,
    IntRange,
    OpenString,
    OperationSpec,
    Parameter,
    ParamDomain,
    Request,
    Value,
    bind,
)
from idlkit.api.openapi import list_operations, load_idl4oas, load_openapi_document
from idlkit.api.params_file import load_idl_file, load_params_file, load_spec_files
from idlkit.api.requests import coerce_request, load_request_file, parse_request_literal

__all__ = [
    "BooleanDomain",
    "Continuous",
    "EnumInt",
    "EnumString",
    "IntRange",
    "OpenString",
    "OperationSpec",
    "ParamDomain",
    "Parameter",
    "Request",
    "Value",
    "bind",
    "build_domains",
    "coerce_request",
    "list_operations",
    "load_idl4oas",
    "load_idl_file",
    "load_openapi_document",
    "load_params_file",
    "load_request_file",
    "load_spec_files",
    "parse_int_window",
    "parse_request_literal",
    "wildcard_matches",
]
