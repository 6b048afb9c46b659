# app/ershov/omega.py
"""
ω-c.e. Sets and bT-Reductions to ∅′

Both directions of "X is ω-c.e. iff X ≤_bT ∅′", as program constructions.

reduction-from-witness: let γ_n be the ordinal of the first observation of
ψ(n, ·). The least converging ordinal is at most γ_n, so the questions
"does ψ(n, β) converge for some β < c", c = 1 ... γ_n + 1, locate it. Each
question is the ∅′ position q(n, c) of a program that halts iff the answer is
yes; positions grow with c, so q(n, γ_n + 1) bounds the use.

witness-from-reduction: the downward transform applied to the ω-c.e. witness
of ∅′ itself.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional

from app.core.config import settings
from app.machine.coding import pair
from app.machine.interpreter import Context, converge, run
from app.machine.procedures import split_params
from app.machine.transforms import parametric
from app.oracles.functionals import BTWitness
from app.oracles.halting import HaltingApproximation
from app.oracles.sets import EMPTY, restrict
from app.ordinals.cnf import OrdinalCNF, ordinal_code, ordinal_decode
from app.ershov.transforms import downward_transform
from app.ershov.witness import (
    AlphaCEWitness, bit, first_observation, halting_witness, limit_value,
)

logger = logging.getLogger(__name__)

OMEGA_BOUND = OrdinalCNF.omega_power(1)


class Direction(str, Enum):
    WITNESS_FROM_REDUCTION = "witness-from-reduction"
    REDUCTION_FROM_WITNESS = "reduction-from-witness"


def search_position(psi: int, n: int, c: int) -> int:
    """∅′ position answering "ψ(n, β)↓ for some β < c"."""
    return parametric("omega_search_below", psi, n, c)


def _check_bound(w: AlphaCEWitness) -> None:
    if not w.bound <= OMEGA_BOUND:
        raise ValueError(f"{w} is not an ω-c.e. witness")


def reduction_from_witness(w: AlphaCEWitness) -> BTWitness:
    """The bT-reduction of the limit set of w to ∅′."""
    _check_bound(w)
    code = ordinal_code(w.bound)
    return BTWitness(
        parametric("omega_functional", w.psi, code),
        parametric("omega_bound", w.psi, code),
    )


def witness_from_reduction(reduction: BTWitness) -> AlphaCEWitness:
    """An ω-c.e. witness for the set reduced to ∅′ by (Φ, f)."""
    return downward_transform(reduction.functional, reduction.bound, halting_witness(), 1)


def omega_ce_iff_bT_halting(direction: Direction | str, data):
    """
    Build the other side of the ω-c.e. / bT-below-∅′ correspondence.

    Args:
        direction: "reduction-from-witness" takes an AlphaCEWitness with bound
            at most ω; "witness-from-reduction" takes a BTWitness.
        data: The input object.

    Raises:
        ValueError: On an unsupported direction or a witness above ω.
    """
    try:
        direction = Direction(direction)
    except ValueError:
        raise ValueError(f"Unsupported direction: {direction}") from None
    if direction is Direction.REDUCTION_FROM_WITNESS:
        return reduction_from_witness(data)
    return witness_from_reduction(data)


@dataclass
class OmegaReport:
    """Per-point comparison of a witness limit with a reduction over K_s."""
    stage: int
    agree: List[int] = field(default_factory=list)
    mismatch: List[int] = field(default_factory=list)
    unresolved: List[int] = field(default_factory=list)
    values: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.mismatch


def reduce_over_halting(reduction: BTWitness, n: int, stage: int,
                        budget: Optional[int] = None) -> Optional[int]:
    """Φ^{K_s↾f(n)}(n), or None when f(n) or Φ does not halt within budget."""
    budget = settings.RUN_BUDGET if budget is None else budget
    bound = converge(reduction.bound, n, budget)
    if not bound.halted:
        return None
    outcome = run(reduction.functional, n, budget, restrict(HaltingApproximation(stage), bound.value))
    return outcome.value if outcome.halted else None


def compare_limits(w: AlphaCEWitness, reduction: BTWitness, domain: Iterable[int], stage: int,
                   budget: Optional[int] = None) -> OmegaReport:
    """
    Check limit_value(w, n) against Φ^{K_s↾f(n)}(n) on every n in the domain.

    Points where either side has no answer within budget are unresolved.
    """
    budget = settings.RUN_BUDGET if budget is None else budget
    report = OmegaReport(stage)
    for n in domain:
        expected = limit_value(w, n, budget)
        got = reduce_over_halting(reduction, n, stage, budget)
        if expected is None or got is None:
            report.unresolved.append(n)
            continue
        report.values[n] = expected
        if bit(got) == expected:
            report.agree.append(n)
        else:
            report.mismatch.append(n)
    if report.mismatch:
        logger.warning("omega reduction disagrees with its witness at %s", report.mismatch)
    return report


def round_trip(reduction: BTWitness) -> BTWitness:
    """reduction → witness → reduction."""
    return reduction_from_witness(witness_from_reduction(reduction))


# Native procedures ---------------------------------------------------------


def proc_search_below(ctx: Context, arg: int) -> int:
    """Halts at the first convergence of ψ(n, β), β < c; the input is ignored."""
    params, _ = split_params(arg, 3)
    if params is None:
        return ctx.diverge()
    psi, n, c = params
    horizon = ctx.remaining
    first = None
    for beta in range(c):
        outcome = converge(psi, pair(n, ordinal_code(OrdinalCNF.natural(beta))), horizon)
        if outcome.halted and (first is None or outcome.steps < first):
            first = outcome.steps
    if first is None:
        return ctx.exhaust()
    ctx.charge(first)
    return 0


def _omega_bound(bound_code: int) -> Optional[OrdinalCNF]:
    bound = ordinal_decode(bound_code)
    if bound is None or not bound <= OMEGA_BOUND:
        return None
    return bound


def proc_bound(ctx: Context, arg: int) -> int:
    """f(n) = q(n, γ_n + 1)."""
    params, n = split_params(arg, 2)
    if params is None:
        return ctx.diverge()
    psi, bound_code = params
    bound = _omega_bound(bound_code)
    if bound is None:
        return ctx.diverge()
    first = first_observation(AlphaCEWitness(psi, bound), n, ctx.remaining)
    if first is None:
        return ctx.exhaust()
    ctx.charge(first.stage)
    return search_position(psi, n, first.ordinal.units + 1)


def proc_functional(ctx: Context, arg: int) -> int:
    """Find the least converging β < γ_n + 1 from ∅′ and answer ψ(n, β)."""
    params, n = split_params(arg, 2)
    if params is None:
        return ctx.diverge()
    psi, bound_code = params
    bound = _omega_bound(bound_code)
    if bound is None:
        return ctx.diverge()
    first = first_observation(AlphaCEWitness(psi, bound), n, ctx.remaining)
    if first is None:
        return ctx.exhaust()
    ctx.charge(first.stage)
    for c in range(1, first.ordinal.units + 2):
        if ctx.query(search_position(psi, n, c)):
            beta = OrdinalCNF.natural(c - 1)
            return bit(ctx.call(psi, pair(n, ordinal_code(beta)), EMPTY))
    return ctx.diverge()

