"""Analysis operations over operation specifications."""

from idlkit.analysis.analyzer import Analyzer
from idlkit.analysis.oracle import (
    DependencyEvaluator,
    missing_required,
    oracle_all_requests,
    satisfies,
    violated_dependencies,
)

__all__ = [
    "Analyzer",
    "DependencyEvaluator",
    "missing_required",
    "oracle_all_requests",
    "satisfies",
    "violated_dependencies",
]
