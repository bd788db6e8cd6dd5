"""Exception hierarchy shared by the loaders, the language front end and the analysis operations."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Sequence

    from idlkit.idl.validate import Diagnostic


class IdlError(Exception):
    """Base class for every error raised by idlkit."""


class IngestionError(IdlError):
    """A parameter or dependency source could not be loaded."""


class SourceNotFoundError(IngestionError):
    """A referenced file does not exist."""

    def __init__(self, path: str) -> None:
        self.path = path
        super().__init__(f"file not found: {path}")


class MalformedSourceError(IngestionError):
    """A document exists but does not have the expected shape."""


class OperationNotFoundError(IngestionError):
    """The requested operation is not part of the OpenAPI document."""

    def __init__(self, operation_id: str) -> None:
        self.operation_id = operation_id
        super().__init__(f"operation not found: {operation_id}")


class SchemaUnsupportedError(IngestionError):
    """A parameter schema has no finite or continuous domain counterpart."""

    def __init__(self, param: str, detail: str) -> None:
        self.param = param
        super().__init__(f"unsupported schema for parameter '{param}': {detail}")


class DuplicateParameterError(IngestionError):
    """Two parameters of one operation share a name."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"duplicate parameter: {name}")


class UndeclaredParameterError(IngestionError):
    """A dependency mentions a parameter the operation does not declare."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"dependency references undeclared parameter: {name}")


class IdlSyntaxError(IdlError):
    """The IDL text does not match the grammar."""

    def __init__(self, message: str, line: int, column: int, entry: int | None = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        self.entry = entry
        super().__init__(self._describe())

    def with_entry(self, entry: int) -> IdlSyntaxError:
        """Return a copy annotated with the ``x-dependencies`` array index."""
        return IdlSyntaxError(self.message, self.line, self.column, entry)

    def _describe(self) -> str:
        prefix = f"x-dependencies[{self.entry}]: " if self.entry is not None else ""
        return f"{prefix}line {self.line}, column {self.column}: {self.message}"


class IdlValidationError(IdlError):
    """The IDL text parses but breaks a structural restriction of the language."""

    def __init__(self, diagnostics: Sequence[Diagnostic], entry: int | None = None) -> None:
        self.diagnostics = tuple(diagnostics)
        self.entry = entry
        prefix = f"x-dependencies[{entry}]: " if entry is not None else ""
        super().__init__(prefix + "; ".join(str(diagnostic) for diagnostic in self.diagnostics))


class UnknownParameterError(IdlError):
    """An operation argument names a parameter the specification does not declare."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown parameter: {name}")


class TypeMismatchError(IdlError):
    """A request value cannot be read as the declared parameter type."""

    def __init__(self, name: str, value: object, expected: str) -> None:
        self.name = name
        self.value = value
        self.expected = expected
        super().__init__(f"parameter '{name}' expects {expected}, got {value!r}")


class NotOptionalError(IdlError):
    """A false-optional query was made for a required parameter."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"parameter '{name}' is declared required")


class InfiniteDomainError(IdlError):
    """Enumeration reached a variable whose domain is not finite."""

    def __init__(self, variable: str) -> None:
        self.variable = variable
        super().__init__(f"variable '{variable}' has an infinite domain; pin it or bound the parameter")


class UnknownVariableError(IdlError):
    """A CSP pin names a variable the problem does not declare."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"unknown CSP variable: {name}")
