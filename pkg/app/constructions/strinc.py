# app/constructions/strinc.py
"""
A^b Is Not bT-Below A

Given a candidate reduction (Γ, g) of A^b to A, build the index transformer
e ↦ f(e) with

    Φ^C_{f(e)}(x) = 0                  if x ≠ e, or Γ^C(e) = 0
                    Φ^C_e(e) + 1       if x = e and Γ^C(e) ≠ 0
                    diverges           if x = e and Γ^C(e) diverges

take a fixed point m > index(g) and see which way (Γ, g) fails at m:

- value-contradiction: Γ says 1, but Φ_m(m) would equal Φ_m(m) + 1, so
  Φ_m^{A↾g(m)}(m) never halts (the re-entrant calls run into the call-depth
  cap) and m is not in A^b after all.
- membership-contradiction: Γ says 0, yet Φ_m^{A↾g(m)}(m) = 0 halts, so m is in
  A^b with g itself as the bound index.
- bounded-divergence: Γ^{A↾g(m)}(m) does not halt.
- budget-unresolved: none of the above shows within the budget.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Optional

from app.constructions.trace import ConstructionTrace
from app.core.config import settings
from app.jumps.hints import bound_hints
from app.jumps.views import BoundedJump, JumpBudget, MemberWitness
from app.machine.coding import unpair
from app.machine.instructions import CALL, HALT, INC, PAIR, QRY, SET
from app.machine.interpreter import Context, converge, run
from app.machine.program import encode
from app.machine.transforms import constant_program, fixed_point_set, procedure_program
from app.oracles.sets import restrict
from app.oracles.specs import parse_set_spec

logger = logging.getLogger(__name__)

OracleFn = Callable[[int], int]

TOTALITY_POINTS = 10


class NonTotalBoundError(ValueError):
    """Raised when the bound g does not halt on a sample point."""


class Branch(str, Enum):
    VALUE_CONTRADICTION = "value-contradiction"
    MEMBERSHIP_CONTRADICTION = "membership-contradiction"
    BOUNDED_DIVERGENCE = "bounded-divergence"
    BUDGET_UNRESOLVED = "budget-unresolved"


@dataclass
class StrincReport:
    gamma: int
    g: int
    m: int
    bound: int
    gamma_value: Optional[int]
    branch: Branch
    member: Optional[MemberWitness] = None
    evidence: Dict[str, Any] = field(default_factory=dict)
    trace: Optional[ConstructionTrace] = None

    @property
    def refuted(self) -> bool:
        return self.branch is not Branch.BUDGET_UNRESOLVED


def transformer(gamma: int) -> int:
    """Index of e ↦ f(e) = smn(strinc_f, ⟨Γ, e⟩)."""
    return encode((
        SET(1, gamma), PAIR(0, 1, 0),
        SET(1, procedure_program("strinc_f")), PAIR(0, 1, 0),
        CALL("smn", 0, 0), HALT(),
    ))


def proc_strinc_f(ctx: Context, arg: int) -> int:
    params, x = unpair(arg)
    gamma, e = unpair(params)
    if x != e:
        return 0
    if ctx.call(gamma, e) == 0:
        return 0
    return ctx.call(e, e) + 1


def strinc_candidates() -> Dict[str, int]:
    """Functionals Γ to refute: constant 0, constant 1, and x ↦ C(x)."""
    return {
        "constant-0": constant_program(0),
        "constant-1": constant_program(1),
        "oracle-echo": encode((QRY(0, 0), HALT())),
    }


def successor_bound() -> int:
    """Index of g(x) = x + 1."""
    return encode((INC(0), HALT()))


def _require_total(g: int, points, budget: int) -> None:
    for x in points:
        if not converge(g, x, budget).halted:
            raise NonTotalBoundError(f"bound {g} does not halt on {x} within {budget} steps")


def diagonalize_strinc(gamma: int, g: int, A: OracleFn, budget: Optional[int] = None,
                       base_spec: str = "custom") -> StrincReport:
    """
    Refute (Γ, g) as a bT reduction of A^b to A.

    Args:
        gamma: Index of the functional Γ.
        g: Index of the bound, assumed total.
        A: The base oracle.
        budget: Step budget for every run; RUN_BUDGET by default.
        base_spec: Set spec of A, recorded in the trace header.

    Raises:
        NonTotalBoundError: If g does not halt on a sample point or on m.
    """
    budget = settings.RUN_BUDGET if budget is None else budget
    _require_total(g, range(TOTALITY_POINTS), budget)
    m = fixed_point_set(transformer(gamma), 1, lower=g)[0]
    _require_total(g, (m,), budget)
    bound = converge(g, m, budget).value
    restricted = restrict(A, bound)
    trace = ConstructionTrace("strinc", {"gamma": gamma, "g": g, "base": base_spec, "budget": budget})

    claim = run(gamma, m, budget, restricted)
    run_m = run(m, m, budget, restricted)
    evidence = {"phi_m_halted": run_m.halted, "phi_m_value": run_m.value}
    member = None
    if not claim.halted:
        branch = Branch.BOUNDED_DIVERGENCE
    elif claim.value != 0:
        branch = Branch.VALUE_CONTRADICTION if not run_m.halted else Branch.BUDGET_UNRESOLVED
    else:
        hints = bound_hints([(m, (g,))])
        member = BoundedJump(A, JumpBudget(budget, hints=hints)).member(m)
        branch = Branch.MEMBERSHIP_CONTRADICTION if member is not None else Branch.BUDGET_UNRESOLVED
        evidence["member_bound_index"] = member.i if member is not None else None

    trace.record(0, fixed_point=m, bound=bound)
    trace.record(1, gamma_value=claim.value if claim.halted else "diverges", **evidence)
    trace.record(2, branch=branch.value)
    logger.info("strinc: gamma=%d g=%d m=%d bound=%d branch=%s", gamma, g, m, bound, branch.value)
    return StrincReport(gamma, g, m, bound, claim.value if claim.halted else None, branch,
                        member, evidence, trace)


def trace_from_params(params: Dict[str, Any]) -> ConstructionTrace:
    report = diagonalize_strinc(params["gamma"], params["g"], parse_set_spec(params["base"]),
                                params["budget"], params["base"])
    return report.trace
