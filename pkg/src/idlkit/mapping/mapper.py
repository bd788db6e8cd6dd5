"""Compilation of operation specifications into constraint satisfaction problems.

Every API parameter ``p`` becomes two variables: ``p`` over the parameter's domain and the presence
flag ``pSet`` over ``{false, true}``. Each dependency becomes one constraint; required parameters add
``pSet == true``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from itertools import permutations
from typing import TYPE_CHECKING

from idlkit.api.domains import wildcard_matches
from idlkit.csp.model import (
    FALSE,
    And,
    Arith,
    Compare,
    Constraint,
    CspProblem,
    CspVar,
    Implies,
    Literal,
    Not,
    Or,
    VarRef,
    conjunction,
    disjunction,
    equals,
    is_true,
)
from idlkit.csp.values import exact_number
from idlkit.errors import InfiniteDomainError, UnknownParameterError
from idlkit.idl.ast import (
    ArithBinary,
    ArithGroup,
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
from idlkit.idl.render import render_dependency

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from idlkit.api.models import OperationSpec, Value
    from idlkit.csp.model import Expr, Operand
    from idlkit.idl.ast import ArithExpr, Clause, Dependency, Predicate

PRESENCE_SUFFIX = "Set"
PRESENCE_DOMAIN: tuple[Value, ...] = (False, True)


class OnlyOneSemantics(StrEnum):
    """How ``OnlyOne`` is encoded: exactly one argument holds, or at most one does."""

    EXACT = "exact"
    AT_MOST_ONE = "at-most-one"


@dataclass(frozen=True, slots=True)
class ParamVars:
    """The value and presence variable names of one parameter."""

    value: str
    presence: str


@dataclass(frozen=True, slots=True)
class MappedSpec:
    """A specification, its CSP and the parameter-to-variable index."""

    spec: OperationSpec
    csp: CspProblem
    param_index: Mapping[str, ParamVars]
    onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT

    def vars_of(self, name: str) -> ParamVars:
        try:
            return self.param_index[name]
        except KeyError:
            raise UnknownParameterError(name) from None


def presence_name(name: str, taken: set[str]) -> str:
    """``<name>Set``, with ``_`` appended until it clashes with nothing in ``taken``."""
    candidate = f"{name}{PRESENCE_SUFFIX}"
    while candidate in taken:
        candidate += "_"
    return candidate


class ConstraintMapper:
    """Translate terms, predicates and dependencies into constraint expressions."""

    def __init__(
        self,
        param_index: Mapping[str, ParamVars],
        domains: Mapping[str, Sequence[Value] | None],
        onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT,
    ) -> None:
        self._index = param_index
        self._domains = domains
        self._onlyone = onlyone

    def _vars(self, param: ParamRef) -> ParamVars:
        try:
            return self._index[param.name]
        except KeyError:
            raise UnknownParameterError(param.name) from None

    def _present(self, param: ParamRef) -> Expr:
        return is_true(self._vars(param).presence)

    def map_term(self, term: Term) -> Expr:
        """Presence for a bare parameter; relation and presence for a parameter-value relation."""
        expr: Expr
        match term.content:
            case ParamRef() as param:
                expr = self._present(param)
            case StringIn(param=param, values=values):
                relation = disjunction(equals(self._vars(param).value, value) for value in values)
                expr = And((relation, self._present(param)))
            case Like(param=param, pattern=pattern):
                expr = self._map_like(param, pattern)
            case BoolEq(param=param, value=value):
                expr = And((equals(self._vars(param).value, value), self._present(param)))
            case NumCmp(param=param, op=op, value=value):
                relation = Compare(VarRef(self._vars(param).value), op, Literal(exact_number(value)))
                expr = And((relation, self._present(param)))
        return Not(expr) if term.negated else expr

    def _map_like(self, param: ParamRef, pattern: str) -> Expr:
        variable = self._vars(param).value
        domain = self._domains.get(variable)
        if domain is None:
            raise InfiniteDomainError(variable)
        matching = [value for value in domain if wildcard_matches(pattern, value)]
        if not matching:
            return FALSE
        return And((disjunction(equals(variable, value) for value in matching), self._present(param)))

    def map_clause(self, clause: Clause) -> Expr:
        match clause:
            case Term():
                return self.map_term(clause)
            case Group(inner=inner, negated=negated):
                expr = self.map_predicate(inner)
                return Not(expr) if negated else expr
            case _:
                return self.map_dependency(clause)

    def map_predicate(self, predicate: Predicate) -> Expr:
        """Connective chains become one ``And``/``Or``; a change of connective nests to the right."""
        first = self.map_clause(predicate.first)
        connective = predicate.connective
        if predicate.rest is None:
            return first
        items = [first]
        node = predicate.rest
        while node.rest is not None and node.connective == connective:
            items.append(self.map_clause(node.first))
            node = node.rest
        items.append(self.map_predicate(node))
        return And(tuple(items)) if connective is Connective.AND else Or(tuple(items))

    def _only_one(self, arguments: Sequence[Expr]) -> Expr:
        exclusions = [Implies(left, Not(right)) for left, right in permutations(arguments, 2)]
        if self._onlyone is OnlyOneSemantics.AT_MOST_ONE:
            return And(tuple(exclusions))
        return And((Or(tuple(arguments)), *exclusions))

    def _map_predefined(self, dependency: Predefined) -> Expr:
        arguments = [self.map_predicate(clause) for clause in dependency.clauses]
        expr: Expr
        match dependency.kind:
            case PredefinedKind.OR:
                expr = Or(tuple(arguments))
            case PredefinedKind.ONLY_ONE:
                expr = self._only_one(arguments)
            case PredefinedKind.ALL_OR_NONE:
                pairs = list(permutations(arguments, 2))
                positive = [Implies(left, right) for left, right in pairs]
                negative = [Implies(Not(left), Not(right)) for left, right in pairs]
                expr = And((*positive, *negative))
            case PredefinedKind.ZERO_OR_ONE:
                expr = Or((self._only_one(arguments), And(tuple(Not(argument) for argument in arguments))))
        return Not(expr) if dependency.negated else expr

    def _map_arith(self, expr: ArithExpr) -> Operand:
        match expr:
            case ParamRef():
                return VarRef(self._vars(expr).value)
            case ArithGroup(inner=inner):
                return self._map_arith(inner)
            case ArithBinary(op=op, left=left, right=right):
                return Arith(op, self._map_arith(left), self._map_arith(right))

    def _guard(self, names: Sequence[str]) -> Expr:
        return conjunction(is_true(self._vars(ParamRef(name)).presence) for name in names)

    def map_dependency(self, dependency: Dependency) -> Expr:
        """One dependency; relational and arithmetic ones only bind when all their parameters are present."""
        match dependency:
            case Requires(condition=condition, consequence=consequence):
                return Implies(self.map_predicate(condition), self.map_predicate(consequence))
            case Predefined():
                return self._map_predefined(dependency)
            case Relational(left=left, op=op, right=right):
                comparison = Compare(VarRef(self._vars(left).value), op, VarRef(self._vars(right).value))
                return Implies(self._guard(referenced_params(left, right)), comparison)
            case Arithmetic(operation=operation, op=op, value=value):
                comparison = Compare(self._map_arith(operation), op, Literal(exact_number(value)))
                return Implies(self._guard(referenced_params(operation)), comparison)


def map_spec(spec: OperationSpec, onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT) -> MappedSpec:
    """Compile ``spec`` into a CSP with one constraint per dependency plus one per required parameter."""
    taken = set(spec.names)
    index: dict[str, ParamVars] = {}
    variables: list[CspVar] = []
    domains: dict[str, Sequence[Value] | None] = {}
    for parameter in spec.parameters:
        presence = presence_name(parameter.name, taken)
        taken.add(presence)
        index[parameter.name] = ParamVars(parameter.name, presence)
        domains[parameter.name] = parameter.domain.values()
        variables.append(CspVar(parameter.name, domains[parameter.name]))
        variables.append(CspVar(presence, PRESENCE_DOMAIN))
    mapper = ConstraintMapper(index, domains, onlyone)
    constraints = [
        Constraint(mapper.map_dependency(dependency), source=f"{render_dependency(dependency)};")
        for dependency in spec.model
    ]
    constraints.extend(
        Constraint(is_true(index[parameter.name].presence), source=f"required: {parameter.name}")
        for parameter in spec.parameters
        if parameter.required
    )
    return MappedSpec(spec, CspProblem(tuple(variables), tuple(constraints)), index, onlyone)


def map_term(term: Term, mapped: MappedSpec) -> Expr:
    """Map one term against the variables of ``mapped``."""
    return _mapper_for(mapped).map_term(term)


def map_predicate(predicate: Predicate, mapped: MappedSpec) -> Expr:
    """Map one predicate against the variables of ``mapped``."""
    return _mapper_for(mapped).map_predicate(predicate)


def map_dependency(dependency: Dependency, mapped: MappedSpec) -> Expr:
    """Map one dependency against the variables of ``mapped``."""
    return _mapper_for(mapped).map_dependency(dependency)


def _mapper_for(mapped: MappedSpec) -> ConstraintMapper:
    domains = {variable.name: variable.domain for variable in mapped.csp.variables}
    return ConstraintMapper(mapped.param_index, domains, mapped.onlyone)
