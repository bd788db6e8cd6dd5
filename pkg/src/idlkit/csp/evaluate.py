"""Evaluation of constraint expressions under an assignment."""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Final

from idlkit.csp.model import And, Arith, BoolConst, Compare, Implies, Literal, Not, Or, VarRef
from idlkit.csp.values import compare_values, value_kind
from idlkit.idl.ast import ArithOp

if TYPE_CHECKING:
    from collections.abc import Mapping

    from idlkit.api.models import Value
    from idlkit.csp.model import Expr, Operand


class _Undefined:
    """Result of arithmetic that has no value (zero divisor or non-numeric operand)."""

    def __repr__(self) -> str:
        return "UNDEFINED"


UNDEFINED: Final = _Undefined()


def _arith(op: ArithOp, left: Fraction, right: Fraction) -> Fraction | _Undefined:
    match op:
        case ArithOp.ADD:
            return left + right
        case ArithOp.SUB:
            return left - right
        case ArithOp.MUL:
            return left * right
        case ArithOp.DIV:
            return UNDEFINED if right == 0 else left / right


def evaluate_operand(operand: Operand, assignment: Mapping[str, Value]) -> Value | _Undefined:
    """Value of an operand; arithmetic is carried out over exact rationals."""
    match operand:
        case VarRef(name=name):
            return assignment[name]
        case Literal(value=value):
            return value
        case Arith(op=op, left=left, right=right):
            lhs = evaluate_operand(left, assignment)
            rhs = evaluate_operand(right, assignment)
            if value_kind(lhs) != "number" or value_kind(rhs) != "number":
                return UNDEFINED
            return _arith(op, Fraction(lhs), Fraction(rhs))  # type: ignore[arg-type]


def eval_constraint(expr: Expr, assignment: Mapping[str, Value]) -> bool:
    """Truth value of ``expr``; ``assignment`` must bind every variable the expression mentions.

    A comparison with an undefined arithmetic side is false whatever its operator.
    """
    match expr:
        case Compare(left=left, op=op, right=right):
            lhs = evaluate_operand(left, assignment)
            rhs = evaluate_operand(right, assignment)
            if lhs is UNDEFINED or rhs is UNDEFINED:
                return False
            return compare_values(lhs, op, rhs)
        case BoolConst(value=value):
            return value
        case Not(inner=inner):
            return not eval_constraint(inner, assignment)
        case And(items=items):
            return all(eval_constraint(item, assignment) for item in items)
        case Or(items=items):
            return any(eval_constraint(item, assignment) for item in items)
        case Implies(antecedent=antecedent, consequent=consequent):
            return not eval_constraint(antecedent, assignment) or eval_constraint(consequent, assignment)
