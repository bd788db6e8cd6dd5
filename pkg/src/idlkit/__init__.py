"""Specification and automated analysis of inter-parameter dependencies in web APIs."""

from importlib import metadata

__all__ = ["__version__"]

try:
    __version__ = metadata.version("idlkit")
except metadata.PackageNotFoundError:  # pragma: no cover - fallback for editable installs
    __version__ = "0.1.0"
