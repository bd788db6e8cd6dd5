"""Dependency injection container for idlc."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import TYPE_CHECKING, cast

from idlkit.analysis.analyzer import Analyzer
from idlkit.csp.factory import create_solver
from idlkit.logger import configure
from idlkit.mapping.mapper import OnlyOneSemantics
from idlkit.settings import Settings

if TYPE_CHECKING:  # pragma: no cover - typing only
    from structlog.stdlib import BoundLogger

    from idlkit.api.models import OperationSpec
    from idlkit.csp.protocols import Solver
else:  # pragma: no cover - runtime placeholder
    BoundLogger = object


@dataclass
class Container:
    """Aggregates configured application services."""

    settings: Settings
    logger: BoundLogger
    solver: Solver

    def analyzer(
        self,
        spec: OperationSpec,
        *,
        onlyone: OnlyOneSemantics | str | None = None,
        int_window: tuple[int, int] | None = None,
        seed: int | None = None,
    ) -> Analyzer:
        """Build an :class:`Analyzer` for ``spec``; keyword arguments override the settings."""
        resolved_seed = seed if seed is not None else self.settings.seed
        return Analyzer(
            spec,
            solver=self.solver,
            onlyone=OnlyOneSemantics(onlyone or self.settings.onlyone),
            int_margin=self.settings.int_margin,
            int_window=int_window if int_window is not None else self.settings.window(),
            enumeration_limit=self.settings.enumeration_limit,
            rng=random.Random(resolved_seed),  # noqa: S311
            logger=self.logger,
        )


def build_container(settings: Settings | None = None) -> Container:
    """Build the dependency container using default settings."""
    resolved_settings = settings or Settings()
    logger = cast("BoundLogger", configure(resolved_settings.log_level, resolved_settings.log_json))
    solver = create_solver(resolved_settings.solver_backend, logger=logger)
    logger.info(
        "boot",
        solver=resolved_settings.solver_backend,
        onlyone=resolved_settings.onlyone,
        seed=resolved_settings.seed,
    )
    return Container(settings=resolved_settings, logger=logger, solver=solver)
