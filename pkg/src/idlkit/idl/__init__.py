"""Inter-parameter Dependency Language front end: AST, parser, validator and renderer."""

from idlkit.idl.parser import parse_idl
from idlkit.idl.render import render_dependency, render_idl
from idlkit.idl.validate import Diagnostic, validate_model

__all__ = ["Diagnostic", "parse_idl", "render_dependency", "render_idl", "validate_model"]
