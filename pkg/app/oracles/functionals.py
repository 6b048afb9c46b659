# app/oracles/functionals.py
"""
Oracle Functionals and bT-Reductions

A bT (bounded Turing, wtt) reduction of A to B is a pair (Φ_i, φ_j) with φ_j
total and A(x) = Φ_i^{B↾φ_j(x)}(x) for every x. B↾b is handed to the
functional as a finite set, so positions above b answer 0 rather than block.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, List, Sequence

from app.machine.interpreter import Outcome, converge, run
from app.oracles.sets import FiniteSetOracle, PrefixOracle, restrict

logger = logging.getLogger(__name__)


def apply_bounded(e: int, oracle_set: FiniteSetOracle, x: int, budget: int) -> Outcome:
    """Φ_e^D(x) with D a finite set; the outcome carries the use."""
    return run(e, x, budget, oracle_set)


def apply_prefix(e: int, bits: Sequence[int], x: int, budget: int) -> Outcome:
    """Φ_e^σ(x) where queries at or past |σ| block."""
    return run(e, x, budget, PrefixOracle(tuple(bits)))


@dataclass(frozen=True, slots=True)
class BTWitness:
    functional: int
    bound: int


class FailureReason(str, Enum):
    BOUND_DIVERGENT = "bound-divergent"
    FUNCTIONAL_DIVERGENT = "functional-divergent"
    WRONG_VALUE = "wrong-value"


@dataclass(frozen=True, slots=True)
class ReductionFailure:
    x: int
    reason: FailureReason
    expected: int | None = None
    got: int | None = None


@dataclass
class ReductionReport:
    checked: List[int] = field(default_factory=list)
    failures: List[ReductionFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def reasons(self) -> set:
        return {f.reason for f in self.failures}


def verify_bT(witness: BTWitness, target: Callable[[int], int], source: Callable[[int], int],
              domain: Iterable[int], budget: int) -> ReductionReport:
    """
    Check A(x) = Φ_i^{B↾φ_j(x)}(x) on every x in the domain.

    Args:
        witness: The pair (Φ_i, φ_j).
        target: The reduced set A.
        source: The oracle set B.
        domain: Points to check.
        budget: Step budget for φ_j(x) and for the functional.

    Returns:
        ReductionReport: failures carry bound-divergent, functional-divergent
        or wrong-value.
    """
    report = ReductionReport()
    for x in domain:
        report.checked.append(x)
        bound = converge(witness.bound, x, budget)
        if not bound.halted:
            report.failures.append(ReductionFailure(x, FailureReason.BOUND_DIVERGENT))
            continue
        outcome = run(witness.functional, x, budget, restrict(source, bound.value))
        if not outcome.halted:
            report.failures.append(ReductionFailure(x, FailureReason.FUNCTIONAL_DIVERGENT))
            continue
        expected = target(x)
        if outcome.value != expected:
            report.failures.append(
                ReductionFailure(x, FailureReason.WRONG_VALUE, expected, outcome.value)
            )
    if report.failures:
        logger.warning("bT witness %s failed on %d of %d points", witness,
                       len(report.failures), len(report.checked))
    return report
