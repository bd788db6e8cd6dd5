"""Standalone parameter declarations paired with a separate IDL file."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, StrictBool, ValidationError

from idlkit.api.documents import load_document, read_text
from idlkit.api.models import BooleanDomain, Continuous, EnumInt, EnumString, IntRange, OpenString, Parameter, bind
from idlkit.errors import MalformedSourceError
from idlkit.idl.parser import parse_idl

if TYPE_CHECKING:
    from pathlib import Path

    from idlkit.api.models import OperationSpec, ParamDomain
    from idlkit.idl.ast import DependencyModel

DEFAULT_OPERATION_ID = "operation"


class ParamRecord(BaseModel):
    """One entry of a params file."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    type: Literal["boolean", "integer", "string", "number"]
    required: StrictBool = False
    enum: list[int | str] | None = None
    minimum: int | None = None
    maximum: int | None = None

    def domain(self) -> ParamDomain:
        """Domain described by the record."""
        match self.type:
            case "boolean":
                return BooleanDomain()
            case "integer" if self.enum is not None:
                return EnumInt(tuple(dict.fromkeys(int(value) for value in self.enum)))
            case "integer":
                return IntRange(self.minimum, self.maximum)
            case "string" if self.enum is not None:
                return EnumString(tuple(dict.fromkeys(str(value) for value in self.enum)))
            case "string":
                return OpenString()
            case "number":
                return Continuous()

    def to_parameter(self) -> Parameter:
        return Parameter(self.name, self.domain(), self.required)


def _records(document: Any, origin: str) -> list[Any]:
    if isinstance(document, dict) and "parameters" in document:
        document = document["parameters"]
    if document is None:
        return []
    if not isinstance(document, list):
        message = f"{origin}: expected a list of parameter records or a mapping with 'parameters'"
        raise MalformedSourceError(message)
    return document


def parse_params(document: Any, origin: str = "<params>") -> list[Parameter]:
    """Validate raw params-file content and turn it into parameters."""
    parameters: list[Parameter] = []
    for index, raw in enumerate(_records(document, origin)):
        try:
            record = ParamRecord.model_validate(raw)
            parameters.append(record.to_parameter())
        except ValidationError as exc:
            message = f"{origin}: parameter record {index} is malformed: {exc}"
            raise MalformedSourceError(message) from exc
        except ValueError as exc:
            message = f"{origin}: parameter record {index} has an invalid domain: {exc}"
            raise MalformedSourceError(message) from exc
    return parameters


def load_params_file(path: str | Path) -> list[Parameter]:
    """Read a JSON or YAML params file."""
    return parse_params(load_document(path), str(path))


def load_idl_file(path: str | Path) -> DependencyModel:
    """Read and parse an ``.idl`` file."""
    return parse_idl(read_text(path))


def load_spec_files(
    params_path: str | Path,
    idl_path: str | Path,
    operation_id: str = DEFAULT_OPERATION_ID,
) -> OperationSpec:
    """Bind a params file to an IDL file."""
    return bind(operation_id, load_params_file(params_path), load_idl_file(idl_path))
