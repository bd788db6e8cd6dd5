"""Tests for constraint evaluation."""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

import pytest

from idlkit.csp.evaluate import UNDEFINED, eval_constraint, evaluate_operand
from idlkit.csp.model import FALSE, TRUE, And, Arith, Compare, Implies, Literal, Not, Or, VarRef, equals, is_true
from idlkit.csp.values import compare_values, exact_number, format_number
from idlkit.idl.ast import ArithOp, RelOp


def test_disjunction_of_presence_variables() -> None:
    """``p1Set OR p2Set`` holds when either is true."""
    expr = Or((is_true("p1Set"), is_true("p2Set")))
    assert eval_constraint(expr, {"p1Set": False, "p2Set": True})
    assert not eval_constraint(expr, {"p1Set": False, "p2Set": False})


def test_relational_comparison() -> None:
    """``maxprice >= minprice`` compares the two variables."""
    expr = Compare(VarRef("maxprice"), RelOp.GE, VarRef("minprice"))
    assert not eval_constraint(expr, {"maxprice": 1, "minprice": 3})
    assert eval_constraint(expr, {"maxprice": 3, "minprice": 3})


def test_zero_divisor_makes_the_comparison_false() -> None:
    """``p1*p2/((p3-p4)*p5) < 176.89`` is false when ``p3 == p4``, whatever the operator."""
    divisor = Arith(ArithOp.MUL, Arith(ArithOp.SUB, VarRef("p3"), VarRef("p4")), VarRef("p5"))
    operation = Arith(ArithOp.DIV, Arith(ArithOp.MUL, VarRef("p1"), VarRef("p2")), divisor)
    assignment = {"p1": 1, "p2": 2, "p3": 4, "p4": 4, "p5": 3}

    assert evaluate_operand(operation, assignment) is UNDEFINED
    for op in RelOp:
        assert not eval_constraint(Compare(operation, op, Literal(Fraction("176.89"))), assignment)


def test_arithmetic_is_exact() -> None:
    """Division yields rationals, so ``1/3 * 3 == 1`` holds."""
    operation = Arith(ArithOp.MUL, Arith(ArithOp.DIV, VarRef("a"), VarRef("b")), VarRef("b"))
    assert evaluate_operand(operation, {"a": 1, "b": 3}) == 1
    assert eval_constraint(Compare(operation, RelOp.EQ, Literal(1)), {"a": 1, "b": 3})


def test_arithmetic_on_non_numbers_is_undefined() -> None:
    """Strings and booleans do not take part in arithmetic."""
    assert evaluate_operand(Arith(ArithOp.ADD, VarRef("a"), Literal(1)), {"a": "x"}) is UNDEFINED
    assert evaluate_operand(Arith(ArithOp.ADD, VarRef("a"), Literal(1)), {"a": True}) is UNDEFINED


def test_connectives() -> None:
    """Not, And, Or, Implies and the constants."""
    x, y = is_true("x"), is_true("y")
    assignment = {"x": True, "y": False}

    assert eval_constraint(Implies(y, x), assignment)
    assert not eval_constraint(Implies(x, y), assignment)
    assert eval_constraint(Not(And((x, y))), assignment)
    assert eval_constraint(TRUE, {})
    assert not eval_constraint(FALSE, {})
    assert eval_constraint(And(()), {})
    assert not eval_constraint(Or(()), {})


def test_values_of_different_kinds_are_never_equal() -> None:
    """``true`` is not ``1`` and ``'1'`` is not ``1``."""
    assert not eval_constraint(equals("x", 1), {"x": True})
    assert not compare_values("1", RelOp.EQ, 1)
    assert compare_values("1", RelOp.NE, 1)
    assert not compare_values(True, RelOp.LT, False)  # noqa: FBT003
    assert compare_values("abc", RelOp.LT, "abd")
    assert compare_values(Fraction(1, 2), RelOp.LT, 1)


@pytest.mark.parametrize(
    ("value", "text"),
    [(3, "3"), (Fraction(1, 4), "0.25"), (Fraction(-17689, 100), "-176.89"), (Fraction(1, 3), "1/3")],
)
def test_format_number(value: int | Fraction, text: str) -> None:
    """Terminating decimals print as decimals, other rationals as fractions."""
    assert format_number(value) == text


def test_exact_number_keeps_integers_integral() -> None:
    """Integral decimals become ``int``."""
    assert exact_number(Decimal("100")) == 100
    assert isinstance(exact_number(Decimal("100.0")), int)
    assert exact_number(Decimal("176.89")) == Fraction(17689, 100)
