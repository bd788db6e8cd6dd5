"""Direct evaluation of IDL dependencies over requests, independent of the CSP compilation."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING, Final

from idlkit.api.domains import wildcard_matches
from idlkit.api.models import Request
from idlkit.csp.values import compare_values, exact_number, same_value, value_kind
from idlkit.errors import InfiniteDomainError
from idlkit.idl.ast import (
    ArithBinary,
    ArithGroup,
    ArithOp,
    Arithmetic,
    BoolEq,
    Connective,
    Group,
    Like,
    NumCmp,
    ParamRef,
    Predefined,
    PredefinedKind,
    Relational,
    Requires,
    StringIn,
    Term,
    referenced_params,
)
from idlkit.mapping.mapper import OnlyOneSemantics

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from idlkit.api.models import OperationSpec, Value
    from idlkit.idl.ast import ArithExpr, Clause, Dependency, Predicate

_ABSENT: Final = object()


class DependencyEvaluator:
    """Truth of dependencies for one request, given as a mapping of the parameters it includes."""

    def __init__(self, request: Mapping[str, Value], onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT) -> None:
        self._request = request
        self._onlyone = onlyone

    def term(self, term: Term) -> bool:
        request = self._request
        param = term.param.name
        present = param in request
        match term.content:
            case ParamRef():
                holds = present
            case StringIn(values=values):
                holds = present and any(same_value(request[param], value) for value in values)
            case Like(pattern=pattern):
                holds = present and wildcard_matches(pattern, request[param])
            case BoolEq(value=value):
                holds = present and same_value(request[param], value)
            case NumCmp(op=op, value=value):
                holds = present and compare_values(request[param], op, exact_number(value))
        return holds != term.negated

    def clause(self, clause: Clause) -> bool:
        match clause:
            case Term():
                return self.term(clause)
            case Group(inner=inner, negated=negated):
                return self.predicate(inner) != negated
            case _:
                return self.dependency(clause)

    def predicate(self, predicate: Predicate) -> bool:
        first = self.clause(predicate.first)
        if predicate.rest is None:
            return first
        rest = self.predicate(predicate.rest)
        return first and rest if predicate.connective is Connective.AND else first or rest

    def _predefined(self, dependency: Predefined) -> bool:
        holding = sum(self.predicate(clause) for clause in dependency.clauses)
        match dependency.kind:
            case PredefinedKind.OR:
                result = holding >= 1
            case PredefinedKind.ONLY_ONE:
                result = holding == 1 if self._onlyone is OnlyOneSemantics.EXACT else holding <= 1
            case PredefinedKind.ALL_OR_NONE:
                result = holding in {0, len(dependency.clauses)}
            case PredefinedKind.ZERO_OR_ONE:
                result = holding <= 1
        return result != dependency.negated

    def _arith(self, expr: ArithExpr) -> Fraction | None:
        match expr:
            case ParamRef(name=name):
                value = self._request[name]
                return Fraction(value) if value_kind(value) == "number" else None  # type: ignore[arg-type]
            case ArithGroup(inner=inner):
                return self._arith(inner)
            case ArithBinary(op=op, left=left, right=right):
                lhs, rhs = self._arith(left), self._arith(right)
                if lhs is None or rhs is None:
                    return None
                match op:
                    case ArithOp.ADD:
                        return lhs + rhs
                    case ArithOp.SUB:
                        return lhs - rhs
                    case ArithOp.MUL:
                        return lhs * rhs
                    case ArithOp.DIV:
                        return None if rhs == 0 else lhs / rhs

    def dependency(self, dependency: Dependency) -> bool:
        """Relational and arithmetic dependencies hold vacuously unless all their parameters are present."""
        request = self._request
        match dependency:
            case Requires(condition=condition, consequence=consequence):
                return not self.predicate(condition) or self.predicate(consequence)
            case Predefined():
                return self._predefined(dependency)
            case Relational(left=left, op=op, right=right):
                if left.name not in request or right.name not in request:
                    return True
                return compare_values(request[left.name], op, request[right.name])
            case Arithmetic(operation=operation, op=op, value=value):
                if any(name not in request for name in referenced_params(operation)):
                    return True
                result = self._arith(operation)
                return result is not None and compare_values(result, op, exact_number(value))


def violated_dependencies(
    spec: OperationSpec,
    request: Request,
    onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT,
) -> list[Dependency]:
    """Dependencies ``request`` falsifies, in model order."""
    evaluator = DependencyEvaluator(request.as_dict(), onlyone)
    return [dependency for dependency in spec.model if not evaluator.dependency(dependency)]


def missing_required(spec: OperationSpec, request: Request) -> list[str]:
    """Required parameters ``request`` leaves out, in declaration order."""
    return [parameter.name for parameter in spec.parameters if parameter.required and parameter.name not in request]


def satisfies(spec: OperationSpec, request: Request, onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT) -> bool:
    """Whether a complete request meets the required flags and every dependency."""
    return not missing_required(spec, request) and not violated_dependencies(spec, request, onlyone)


def oracle_all_requests(spec: OperationSpec, onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT) -> set[Request]:
    """Every valid request, found by trying each absent/value combination of the finite domains."""
    choices: list[Sequence[object]] = []
    for parameter in spec.parameters:
        values = parameter.domain.values()
        if values is None:
            raise InfiniteDomainError(parameter.name)
        choices.append(values if parameter.required else (_ABSENT, *values))
    names = spec.names
    valid: set[Request] = set()
    for combination in product(*choices):
        bindings: dict[str, Value] = {
            name: value  # type: ignore[misc]
            for name, value in zip(names, combination, strict=True)
            if value is not _ABSENT
        }
        request = Request.of(bindings)
        if satisfies(spec, request, onlyone):
            valid.add(request)
    return valid
