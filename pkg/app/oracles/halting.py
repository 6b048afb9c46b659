# app/oracles/halting.py
"""
Stage Approximations of ∅′

K = {x | φ_x(x)↓}. Its stage-s approximation K_s answers 1 at x when φ_x(x)
halts within s steps. With index 1 the identity and index 0 divergent, every
x in K also lies in ∅^b (the identity is a total bound with 1 ≤ x), so in
this numbering ∅^b and K coincide as sets.
"""

from dataclasses import dataclass

from app.machine.interpreter import converge


@dataclass(frozen=True, slots=True)
class HaltingApproximation:
    stage: int

    def __call__(self, x: int) -> int:
        return 1 if converge(x, x, self.stage).halted else 0

    def halting_stage(self, x: int) -> int | None:
        outcome = converge(x, x, self.stage)
        return outcome.steps if outcome.halted else None
