"""Human-readable text for mapped CSPs."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING

import jinja2

from idlkit.csp.model import And, Arith, BoolConst, Compare, Implies, Literal, Not, Or, VarRef
from idlkit.csp.values import format_number
from idlkit.idl.ast import RelOp
from idlkit.idl.render import render_string

if TYPE_CHECKING:
    from collections.abc import Sequence

    from idlkit.api.models import Value
    from idlkit.csp.model import Expr, Operand
    from idlkit.mapping.mapper import MappedSpec

TEMPLATES_ROOT = Path(__file__).resolve().parent.parent / "templates"
CSP_TEMPLATE = "csp.txt.j2"
IMPLIES = "⟹"
NEGATION = "¬"
INFINITE = "∞"


@lru_cache(maxsize=1)
def _template_environment(root: Path) -> jinja2.Environment:
    """Return a cached Jinja environment for the text templates."""
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(root),
        autoescape=jinja2.select_autoescape(default=False, default_for_string=False),
        undefined=jinja2.StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def render_value(value: Value) -> str:
    match value:
        case bool():
            return "true" if value else "false"
        case int() | Fraction():
            return format_number(value)
        case str():
            return render_string(value)


def _render_operand(operand: Operand, *, nested: bool = False) -> str:
    match operand:
        case VarRef(name=name):
            return name
        case Literal(value=value):
            return render_value(value)
        case Arith(op=op, left=left, right=right):
            text = f"{_render_operand(left, nested=True)} {op} {_render_operand(right, nested=True)}"
            return f"({text})" if nested else text


def render_expression(expr: Expr) -> str:
    """``⟹``/``¬``/``AND``/``OR`` notation; compound expressions are parenthesised."""
    match expr:
        case Compare(left=left, op=op, right=right):
            separator = str(op) if op in {RelOp.EQ, RelOp.NE} else f" {op} "
            return f"{_render_operand(left)}{separator}{_render_operand(right)}"
        case BoolConst(value=value):
            return "true" if value else "false"
        case Not(inner=inner):
            return f"{NEGATION}{render_expression(inner)}"
        case And(items=items):
            return "(" + " AND ".join(render_expression(item) for item in items) + ")"
        case Or(items=items):
            return "(" + " OR ".join(render_expression(item) for item in items) + ")"
        case Implies(antecedent=antecedent, consequent=consequent):
            return f"({render_expression(antecedent)} {IMPLIES} {render_expression(consequent)})"


def render_domain(domain: Sequence[Value] | None) -> str:
    """Runs of consecutive integers print as ``[lo..hi]``, other domains as a value set."""
    if domain is None:
        return INFINITE
    if isinstance(domain, range) and len(domain) > 2:  # noqa: PLR2004
        return f"[{domain[0]}..{domain[-1]}]"
    if (
        len(domain) > 2  # noqa: PLR2004
        and all(isinstance(value, int) and not isinstance(value, bool) for value in domain)
        and list(domain) == list(range(int(domain[0]), int(domain[0]) + len(domain)))
    ):
        return f"[{render_value(domain[0])}..{render_value(domain[-1])}]"
    return "{" + ", ".join(render_value(value) for value in domain) + "}"


def render_csp(mapped: MappedSpec) -> str:
    """``V``, ``D`` and ``C`` sections, each constraint preceded by its source as a ``//`` comment."""
    problem = mapped.csp
    template = _template_environment(TEMPLATES_ROOT).get_template(CSP_TEMPLATE)
    return template.render(
        operation=mapped.spec.operation_id,
        variables=[variable.name for variable in problem.variables],
        domains=[f"{variable.name}: {render_domain(variable.domain)}" for variable in problem.variables],
        constraints=[
            {"source": constraint.source, "text": render_expression(constraint.expr)}
            for constraint in problem.constraints
        ],
    )


def reset_template_environment_cache() -> None:
    """Clear the cached template environment (useful for tests)."""
    _template_environment.cache_clear()
