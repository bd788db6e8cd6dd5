"""Application settings loaded from environment variables."""

from __future__ import annotations

from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from idlkit.api.domains import parse_int_window


class Settings(BaseSettings):
    """Configuration object for the idlc runtime."""

    model_config = SettingsConfigDict(env_prefix="IDLC_", env_file=".env", extra="allow")

    # Logging
    log_level: str = "WARNING"
    log_json: bool = False

    # Sampling
    seed: int | None = None

    # Domains
    int_margin: int = 100
    int_window: str | None = None

    # Analysis
    onlyone: Literal["exact", "at-most-one"] = "exact"
    solver_backend: str = "backtracking"
    enumeration_limit: int = 1_000_000

    @field_validator("int_window")
    @classmethod
    def _check_window(cls, value: str | None) -> str | None:
        if value is not None:
            parse_int_window(value)
        return value

    def window(self) -> tuple[int, int] | None:
        """``int_window`` as a pair of integers."""
        return parse_int_window(self.int_window) if self.int_window is not None else None
