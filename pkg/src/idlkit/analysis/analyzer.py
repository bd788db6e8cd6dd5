"""Analysis operations over one operation specification.

Every question is answered by pinning variables of the compiled CSP and asking the solver for a
solution, a count or all solutions. The analysis CSP adds one constraint per parameter forcing the
value variable of an absent parameter to a fixed anchor, so solutions and requests correspond one to one.
"""

from __future__ import annotations

import random
from typing import TYPE_CHECKING, Any

import structlog

from idlkit.analysis import oracle
from idlkit.api.domains import DEFAULT_INT_MARGIN, build_domains, continuous_representatives
from idlkit.api.models import EnumInt, EnumString, Request
from idlkit.csp.factory import create_solver
from idlkit.csp.model import Constraint, Implies, Not, equals, filter_csp, is_true
from idlkit.csp.values import contains, value_kind
from idlkit.errors import NotOptionalError, TypeMismatchError
from idlkit.mapping.mapper import OnlyOneSemantics, map_spec
from idlkit.mapping.render import render_csp
from idlkit.models import AnalysisReport

if TYPE_CHECKING:
    from collections.abc import Sequence

    from idlkit.api.models import OperationSpec, ParamDomain, Value
    from idlkit.csp.model import CspProblem, Solution
    from idlkit.csp.protocols import Solver
    from idlkit.idl.ast import Dependency
    from idlkit.mapping.mapper import MappedSpec

DEFAULT_ENUMERATION_LIMIT = 1_000_000
_KIND_OF_DOMAIN = {"boolean": "boolean", "integer": "number", "number": "number", "string": "string"}


def _anchor(values: Sequence[Value] | None) -> Value:
    """Value taken by the value variable of an absent parameter."""
    return values[0] if values else 0


class Analyzer:
    """Consistency, defect and request questions about one operation."""

    def __init__(  # noqa: PLR0913
        self,
        spec: OperationSpec,
        *,
        solver: Solver | None = None,
        onlyone: OnlyOneSemantics = OnlyOneSemantics.EXACT,
        int_margin: int = DEFAULT_INT_MARGIN,
        int_window: tuple[int, int] | None = None,
        enumeration_limit: int = DEFAULT_ENUMERATION_LIMIT,
        rng: random.Random | None = None,
        logger: Any | None = None,
    ) -> None:
        self._logger = logger if logger is not None else structlog.get_logger()
        self._solver = solver if solver is not None else create_solver("backtracking", logger=self._logger)
        self._onlyone = onlyone
        self._enumeration_limit = enumeration_limit
        self._rng = rng if rng is not None else random.Random()  # noqa: S311
        self.spec = build_domains(spec, int_margin=int_margin, int_window=int_window)
        self.mapped = map_spec(self.spec, onlyone)
        self._analysis_csp = self._canonical(self.mapped)
        self._logger.info(
            "csp.mapped",
            operation=self.spec.operation_id,
            variables=len(self.mapped.csp.variables),
            constraints=len(self.mapped.csp.constraints),
        )

    @property
    def onlyone(self) -> OnlyOneSemantics:
        return self._onlyone

    def _canonical(self, mapped: MappedSpec) -> CspProblem:
        anchors = [
            Constraint(Implies(Not(is_true(variables.presence)), equals(variables.value, _anchor(domain))))
            for variables, domain in (
                (mapped.vars_of(parameter.name), parameter.domain.values()) for parameter in mapped.spec.parameters
            )
        ]
        return mapped.csp.with_constraints(anchors)

    def _decision_csp(self, problem: CspProblem, spec: OperationSpec) -> CspProblem:
        """Give unreferenced infinite parameters a single representative value; their value cannot matter."""
        referenced = set(spec.model.referenced_params())
        representatives: dict[str, Sequence[Value] | None] = {
            parameter.name: (0,)
            for parameter in spec.parameters
            if parameter.domain.values() is None and parameter.name not in referenced
        }
        return problem.with_domains(representatives) if representatives else problem

    def _satisfiable(self, problem: CspProblem) -> bool:
        return self._solver.solve(problem, random.Random(0)) is not None  # noqa: S311

    def _decode(self, solution: Solution) -> Request:
        values: dict[str, Value] = {}
        for parameter in self.spec.parameters:
            variables = self.mapped.vars_of(parameter.name)
            if solution[variables.presence] is True:
                values[parameter.name] = solution[variables.value]
        return Request.of(values)

    def _check_request(self, request: Request) -> None:
        for name, value in request.bindings:
            domain = self.spec.parameter(name).domain
            if value_kind(value) != _KIND_OF_DOMAIN[domain.kind] or (
                domain.kind == "integer" and not isinstance(value, int)
            ):
                raise TypeMismatchError(name, value, f"a value of type {domain.kind}")

    def _extended(self, request: Request) -> tuple[OperationSpec, MappedSpec]:
        """Spec and mapping whose domains also contain the request's values."""
        replacements: dict[str, ParamDomain] = {}
        for name, value in request.bindings:
            domain = self.spec.parameter(name).domain
            values = domain.values()
            if values is None or contains(values, value):
                continue
            match domain:
                case EnumString(options=options):
                    replacements[name] = EnumString((*options, str(value)))
                case EnumInt(options=options):
                    replacements[name] = EnumInt((*options, int(value)))  # type: ignore[arg-type]
                case _:
                    pass
        if not replacements:
            return self.spec, self.mapped
        spec = self.spec.with_domains(replacements)
        return spec, map_spec(spec, self._onlyone)

    def _free_continuous(self, spec: OperationSpec, request: Request) -> dict[str, Sequence[Value] | None]:
        """Representative values for referenced ``number`` parameters a partial request leaves open."""
        referenced = set(spec.model.referenced_params())
        free = [
            parameter.name
            for parameter in spec.parameters
            if parameter.domain.values() is None and parameter.name in referenced and parameter.name not in request
        ]
        if not free:
            return {}
        values = continuous_representatives(spec, (value for _, value in request.bindings), slots=len(free))
        return dict.fromkeys(free, values)

    def _request_problem(self, request: Request, *, complete: bool) -> CspProblem:
        self._check_request(request)
        spec, mapped = self._extended(request)
        pins: list[tuple[str, Value]] = []
        for parameter in spec.parameters:
            variables = mapped.vars_of(parameter.name)
            if parameter.name in request:
                pins.extend(((variables.presence, True), (variables.value, request[parameter.name])))
            elif complete:
                pins.extend(((variables.presence, False), (variables.value, _anchor(parameter.domain.values()))))
        problem = self._decision_csp(self._canonical(mapped), spec)
        if not complete:
            representatives = self._free_continuous(spec, request)
            if representatives:
                problem = problem.with_domains(representatives)
        return filter_csp(problem, pins)

    def _pinned(self, name: str, *, present: bool) -> CspProblem:
        variables = self.mapped.vars_of(self.spec.parameter(name).name)
        return filter_csp(self._decision_csp(self._analysis_csp, self.spec), [(variables.presence, present)])

    def csp_text(self) -> str:
        """The compiled CSP in ``V``/``D``/``C`` notation."""
        return render_csp(self.mapped)

    def is_consistent(self) -> bool:
        """Whether at least one request satisfies every dependency."""
        return self._satisfiable(self._decision_csp(self._analysis_csp, self.spec))

    def is_dead_parameter(self, name: str) -> bool:
        """Whether no valid request can include ``name``."""
        return not self._satisfiable(self._pinned(name, present=True))

    def is_false_optional(self, name: str) -> bool:
        """Whether the optional parameter ``name`` is nevertheless part of every valid request."""
        if self.spec.parameter(name).required:
            raise NotOptionalError(name)
        return self.is_consistent() and not self._satisfiable(self._pinned(name, present=False))

    def dead_parameters(self) -> list[str]:
        return [name for name in self.spec.names if self.is_dead_parameter(name)]

    def false_optional_parameters(self) -> list[str]:
        if not self.is_consistent():
            return []
        return [
            parameter.name
            for parameter in self.spec.parameters
            if not parameter.required and not self._satisfiable(self._pinned(parameter.name, present=False))
        ]

    def is_valid_spec(self) -> bool:
        """Consistent, with neither dead nor false-optional parameters."""
        return self.is_consistent() and not self.dead_parameters() and not self.false_optional_parameters()

    def is_valid_request(self, request: Request) -> bool:
        """Whether ``request``, with every other parameter absent, satisfies all dependencies."""
        verdict = self._satisfiable(self._request_problem(request, complete=True))
        self._logger.info("analysis.request", kind="complete", parameters=len(request), verdict=verdict)
        return verdict

    def is_valid_partial_request(self, request: Request) -> bool:
        """Whether ``request`` can be extended with further parameters into a valid request."""
        verdict = self._satisfiable(self._request_problem(request, complete=False))
        self._logger.info("analysis.request", kind="partial", parameters=len(request), verdict=verdict)
        return verdict

    def all_requests(self) -> list[Request]:
        """Every valid request, each exactly once."""
        return [self._decode(solution) for solution in self._solver.solve_all(self._analysis_csp)]

    def number_of_requests(self) -> int:
        """How many valid requests exist, counted without listing them."""
        return self._solver.count(self._analysis_csp)

    def random_request(self) -> Request | None:
        """A valid request drawn from the analyzer's random stream, ``None`` when the dependencies are inconsistent."""
        solution = self._solver.solve(self._analysis_csp, self._rng)
        return None if solution is None else self._decode(solution)

    def random_requests(self, count: int) -> list[Request]:
        """``count`` successive samples; empty when the dependencies are inconsistent."""
        samples: list[Request] = []
        for _ in range(count):
            request = self.random_request()
            if request is None:
                break
            samples.append(request)
        return samples

    def oracle_all_requests(self) -> set[Request]:
        """Valid requests found by direct evaluation, bypassing the CSP."""
        return oracle.oracle_all_requests(self.spec, self._onlyone)

    def violated_dependencies(self, request: Request) -> list[Dependency]:
        self._check_request(request)
        return oracle.violated_dependencies(self.spec, request, self._onlyone)

    def missing_required(self, request: Request) -> list[str]:
        self._check_request(request)
        return oracle.missing_required(self.spec, request)

    def state_space(self) -> int | None:
        """Number of absent/value combinations over all parameters, ``None`` for an infinite domain."""
        total = 1
        for parameter in self.spec.parameters:
            values = parameter.domain.values()
            if values is None:
                return None
            total *= len(values) + 1
        return total

    def analyze_all(self) -> AnalysisReport:
        """Run the whole catalogue; an inconsistent spec has every parameter dead and none false optional."""
        diagnostics: list[str] = []
        consistent = self.is_consistent()
        if consistent:
            dead = self.dead_parameters()
            false_optional = self.false_optional_parameters()
        else:
            dead = list(self.spec.names)
            false_optional = []
            diagnostics.append("specification is inconsistent: no request satisfies every dependency")
        request_count: int | None = None
        space = self.state_space()
        if space is None:
            infinite = [parameter.name for parameter in self.spec.parameters if parameter.domain.values() is None]
            diagnostics.append(f"request count skipped: infinite domain for {', '.join(infinite)}")
        elif space > self._enumeration_limit:
            diagnostics.append(f"request count skipped: state space {space} exceeds {self._enumeration_limit}")
        else:
            request_count = self.number_of_requests()
        self._logger.info("analysis.sweep", dead=dead, false_optional=false_optional, consistent=consistent)
        return AnalysisReport(
            consistent=consistent,
            valid_spec=consistent and not dead and not false_optional,
            dead_params=dead,
            false_optional_params=false_optional,
            request_count=request_count,
            diagnostics=diagnostics,
        )
