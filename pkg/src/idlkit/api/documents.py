"""Reading JSON and YAML documents from disk."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import orjson
import yaml

from idlkit.errors import MalformedSourceError, SourceNotFoundError

JSON_SUFFIXES = frozenset({".json"})


def read_text(path: str | Path) -> str:
    """Return the UTF-8 content of ``path``."""
    file_path = Path(path)
    if not file_path.is_file():
        raise SourceNotFoundError(str(path))
    try:
        return file_path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        message = f"cannot read {path}: {exc}"
        raise MalformedSourceError(message) from exc


def parse_document(text: str, *, json_syntax: bool, origin: str = "<text>") -> Any:
    """Decode ``text`` as JSON (through orjson) or YAML."""
    try:
        if json_syntax:
            return orjson.loads(text)
        return yaml.safe_load(text)
    except (orjson.JSONDecodeError, yaml.YAMLError) as exc:
        message = f"{origin} is not a valid {'JSON' if json_syntax else 'YAML'} document: {exc}"
        raise MalformedSourceError(message) from exc


def load_document(path: str | Path) -> Any:
    """Load a ``.json`` file through orjson and anything else as YAML."""
    text = read_text(path)
    return parse_document(text, json_syntax=Path(path).suffix.lower() in JSON_SUFFIXES, origin=str(path))
