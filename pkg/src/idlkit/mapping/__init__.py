"""Compilation of IDL dependency models into CSPs, and their text rendering."""

from idlkit.mapping.mapper import (
    ConstraintMapper,
    MappedSpec,
    OnlyOneSemantics,
    ParamVars,
    map_dependency,
    map_predicate,
    map_spec,
    map_term,
)
from idlkit.mapping.render import render_csp, render_expression

__all__ = [
    "ConstraintMapper",
    "MappedSpec",
    "OnlyOneSemantics",
    "ParamVars",
    "map_dependency",
    "map_predicate",
    "map_spec",
    "map_term",
    "render_csp",
    "render_expression",
]
