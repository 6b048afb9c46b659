# app/jumps/views.py
"""
Bounded-Jump Enumerators

Stage-bounded enumerations of the jump operators over a base oracle A.

    b    x ∈ A^b      iff ∃ i ≤ x [φ_i(x)↓ ∧ Φ_x^{A↾φ_i(x)}(x)↓]
    b0   ⟨e,i,j⟩ ∈ A^{b0} iff φ_i(j)↓ ∧ Φ_e^{A↾φ_i(j)}(j)↓
    b1   x ∈ A^{b1}   iff φ_x(x)↓ ∧ Φ_x^{A↾φ_x(x)}(x)↓
    i    x ∈ A^i      iff Φ_x^{A↾x}(x)↓
    tt   x ∈ A_tt     iff φ_x(x)↓ = c and A satisfies condition c
    bk   x ∈ A_bk     iff additionally condition c has at most k positions

At stage s every φ and Φ above runs for s steps. Since ∃ i ≤ x cannot be
searched at once, the b variant tries i ≤ min(x, search_width(s, width)),
which grows with the bit length of s, plus the bound indices hinted by the
reductions that built x.

Enumerators are callables, so an enumerator of A^b is the oracle of the
next jump (A^b)^b.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set

from app.core.config import settings
from app.jumps.hints import NO_HINTS, BoundHints, search_width
from app.machine.coding import untriple
from app.machine.interpreter import Outcome, converge, run
from app.oracles.sets import EMPTY, restrict
from app.oracles.truth_tables import decode_condition, tt_eval

logger = logging.getLogger(__name__)

OracleFn = Callable[[int], int]


class UnsupportedVariantError(ValueError):
    """Raised for an unknown jump variant."""


@dataclass(frozen=True)
class JumpBudget:
    steps: int
    width: int = field(default_factory=lambda: settings.JUMP_WIDTH)
    hints: BoundHints = field(default_factory=dict, hash=False, compare=False)

    def with_hints(self, hints: BoundHints) -> "JumpBudget":
        return replace(self, hints=hints)


@dataclass(frozen=True, slots=True)
class MemberWitness:
    """Why x is in: the bound index i (if the variant has one), the bound, the run."""
    i: Optional[int]
    bound: Optional[int]
    steps: int
    use: int

    def to_json(self) -> dict:
        return {"i": self.i, "bound": self.bound, "steps": self.steps}


class PointStatus(str, Enum):
    MEMBER = "member"
    PENDING = "pending"


@dataclass(frozen=True)
class JumpStageView:
    variant: str
    stage: int
    members: FrozenSet[int]
    pendings: FrozenSet[int]
    witnesses: Mapping[int, MemberWitness] = field(default_factory=dict)
    fragile: FrozenSet[int] = frozenset()

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def to_points(self) -> List[dict]:
        points = []
        for x in sorted(self.members | self.pendings):
            witness = self.witnesses.get(x)
            points.append({
                "x": x,
                "status": (PointStatus.MEMBER if x in self.members else PointStatus.PENDING).value,
                "witness": witness.to_json() if witness is not None else None,
            })
        return points


class RecordingOracle:
    """Wraps an enumerator and records the positions it answered 0."""

    def __init__(self, inner: "JumpEnumerator"):
        self.inner = inner
        self._zeros: Optional[Set[int]] = None

    def __call__(self, position: int) -> int:
        answer = self.inner(position)
        if not answer and self._zeros is not None:
            self._zeros.add(position)
        return answer

    def start(self) -> None:
        self._zeros = set()

    def stop(self) -> FrozenSet[int]:
        zeros = frozenset(self._zeros or ())
        self._zeros = None
        return zeros


class JumpEnumerator:
    """
    Base class of the stage-bounded jump enumerators.

    Subclasses implement `_member(x, steps)`; answers are memoized per
    (x, steps).
    """

    variant = "jump"

    def __init__(self, base: OracleFn, budget: JumpBudget):
        self.base = base
        self.budget = budget
        self._memo: Dict[tuple, Optional[MemberWitness]] = {}
        self.read_zeros: Dict[int, FrozenSet[int]] = {}

    def member(self, x: int, steps: Optional[int] = None) -> Optional[MemberWitness]:
        steps = self.budget.steps if steps is None else steps
        key = (x, steps)
        if key not in self._memo:
            recording = isinstance(self.base, RecordingOracle) and steps == self.budget.steps
            if recording:
                self.base.start()
            try:
                self._memo[key] = self._member(x, steps)
            finally:
                if recording:
                    self.read_zeros[x] = self.base.stop()
        return self._memo[key]

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        raise NotImplementedError("Subclasses must implement _member")

    def __call__(self, x: int) -> int:
        return 1 if self.member(x) is not None else 0

    def fragile(self, x: int) -> bool:
        """True when a 0 read from the inner level flips at the escalated inner budget."""
        if not isinstance(self.base, RecordingOracle):
            return False
        self.member(x)
        inner = self.base.inner
        escalated = inner.budget.steps * settings.ESCALATION
        return any(inner.member(p, escalated) is not None for p in self.read_zeros.get(x, ()))

    def view(self, domain: Optional[Iterable[int]] = None) -> JumpStageView:
        points = range(settings.VIEW_SPAN) if domain is None else domain
        members, pendings, witnesses, fragile = set(), set(), {}, set()
        for x in points:
            found = self.member(x)
            if found is None:
                pendings.add(x)
            else:
                members.add(x)
                witnesses[x] = found
            if self.fragile(x):
                fragile.add(x)
        if fragile:
            logger.debug("%s view at %d: fragile points %s", self.variant, self.budget.steps,
                         sorted(fragile))
        return JumpStageView(self.variant, self.budget.steps, frozenset(members),
                             frozenset(pendings), witnesses, frozenset(fragile))

    def _bounded_run(self, e: int, x: int, bound: int, steps: int) -> Outcome:
        return run(e, x, steps, restrict(self.base, bound))

    @classmethod
    def create(cls, variant: str, base: OracleFn, budget: JumpBudget, **options) -> "JumpEnumerator":
        """
        Factory for the jump variants.

        Args:
            variant: One of b, b0, b1, i, tt, bk.
            base: The oracle A.
            budget: Stage budget and candidate width.
            options: `k` for bk, `renumbering` for b1.

        Raises:
            UnsupportedVariantError: For an unknown variant name.

        Example:
            >>> JumpEnumerator.create("b", EMPTY, JumpBudget(200)).member(0) is None
            True
        """
        variant_classes = {
            "b": BoundedJump,
            "b0": BoundedJumpB0,
            "b1": BoundedJumpB1,
            "i": SimpleBoundedJump,
            "tt": TruthTableJump,
            "bk": BoundedTruthTableJump,
        }
        variant_class = variant_classes.get(variant.lower())
        if variant_class is None:
            raise UnsupportedVariantError(f"Unsupported jump variant: {variant}")
        return variant_class(base, budget, **options)


class BoundedJump(JumpEnumerator):
    variant = "b"

    def candidates(self, x: int, steps: Optional[int] = None) -> List[int]:
        """Hinted indices first, then every i ≤ min(x, search width at `steps`)."""
        steps = self.budget.steps if steps is None else steps
        hinted = sorted(i for i in self.budget.hints.get(x, ()) if i <= x)
        scanned = range(min(x, search_width(steps, self.budget.width)) + 1)
        return hinted + [i for i in scanned if i not in self.budget.hints.get(x, ())]

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        tried: Set[int] = set()
        for i in self.candidates(x, steps):
            bound = converge(i, x, steps)
            if not bound.halted or bound.value in tried:
                continue
            tried.add(bound.value)
            outcome = self._bounded_run(x, x, bound.value, steps)
            if outcome.halted:
                return MemberWitness(i, bound.value, outcome.steps, outcome.use)
        return None


class BoundedJumpB0(JumpEnumerator):
    variant = "b0"

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        e, i, j = untriple(x)
        bound = converge(i, j, steps)
        if not bound.halted:
            return None
        outcome = self._bounded_run(e, j, bound.value, steps)
        if outcome.halted:
            return MemberWitness(i, bound.value, outcome.steps, outcome.use)
        return None


class BoundedJumpB1(JumpEnumerator):
    """
    The diagonal variant. `renumbering` maps x to the program that plays φ_x,
    which shows how A^{b1} depends on the numbering.
    """

    variant = "b1"

    def __init__(self, base: OracleFn, budget: JumpBudget,
                 renumbering: Optional[Mapping[int, int]] = None):
        super().__init__(base, budget)
        self.renumbering = dict(renumbering or {})

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        e = self.renumbering.get(x, x)
        bound = converge(e, x, steps)
        if not bound.halted:
            return None
        outcome = self._bounded_run(e, x, bound.value, steps)
        if outcome.halted:
            return MemberWitness(x, bound.value, outcome.steps, outcome.use)
        return None


class SimpleBoundedJump(JumpEnumerator):
    variant = "i"

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        outcome = self._bounded_run(x, x, x, steps)
        if outcome.halted:
            return MemberWitness(None, x, outcome.steps, outcome.use)
        return None


class TruthTableJump(JumpEnumerator):
    variant = "tt"

    def accepts(self, size: int) -> bool:
        return True

    def _member(self, x: int, steps: int) -> Optional[MemberWitness]:
        computed = converge(x, x, steps)
        if not computed.halted:
            return None
        condition = decode_condition(computed.value)
        if condition is None or not self.accepts(condition.size):
            return None
        if not tt_eval(condition, self.base):
            return None
        use = max(condition.positions) + 1 if condition.positions else 0
        return MemberWitness(None, computed.value, computed.steps, use)


class BoundedTruthTableJump(TruthTableJump):
    variant = "bk"

    def __init__(self, base: OracleFn, budget: JumpBudget, k: int = 1):
        if k < 0:
            raise ValueError(f"bk jump needs k >= 0, got {k}")
        super().__init__(base, budget)
        self.k = k

    def accepts(self, size: int) -> bool:
        return size <= self.k


def renumbered_b1(base: OracleFn, budget: JumpBudget, swap: Sequence[int]) -> BoundedJumpB1:
    """A^{b1} under the numbering that exchanges the two indices in `swap`."""
    a, b = swap
    return BoundedJumpB1(base, budget, renumbering={a: b, b: a})


def _view(variant: str, A: OracleFn, s: int, domain: Optional[Iterable[int]], **options) -> JumpStageView:
    return JumpEnumerator.create(variant, A, JumpBudget(s), **options).view(domain)


def enum_b(A: OracleFn, s: int, domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("b", A, s, domain)


def enum_b0(A: OracleFn, s: int, domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("b0", A, s, domain)


def enum_b1(A: OracleFn, s: int, domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("b1", A, s, domain)


def enum_i(A: OracleFn, s: int, domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("i", A, s, domain)


def gerla_tt_jump(A: OracleFn, s: int, domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("tt", A, s, domain)


def gerla_bk_jump(A: OracleFn, k: int, s: int,
                  domain: Optional[Iterable[int]] = None) -> JumpStageView:
    return _view("bk", A, s, domain, k=k)


# Iterated jumps ------------------------------------------------------------


def nested_budgets(n: int, budgets: Optional[Sequence[int]] = None) -> List[int]:
    """
    Budgets for ∅^{nb}, outermost first. Missing inner budgets default to the
    square of the next outer one, capped at NESTED_BUDGET_CAP.
    """
    if not 1 <= n <= 3:
        raise ValueError(f"iterated jumps are supported for n in 1..3, got {n}")
    filled = list(budgets or [settings.RUN_BUDGET])[:n]
    if any(b <= 0 for b in filled):
        raise ValueError(f"budgets must be positive, got {filled}")
    while len(filled) < n:
        filled.append(min(filled[-1] ** 2, settings.NESTED_BUDGET_CAP))
    return filled


def nested_jump(n: int, budgets: Optional[Sequence[int]] = None, variant: str = "b",
                width: Optional[int] = None, hints: BoundHints = NO_HINTS) -> JumpEnumerator:
    """
    The enumerator of ∅^{nb}; each level reads the level below through a
    RecordingOracle. Every level gets the same `hints`.
    """
    width = settings.JUMP_WIDTH if width is None else width
    levels = nested_budgets(n, budgets)
    oracle: OracleFn = EMPTY
    enumerator: Optional[JumpEnumerator] = None
    for steps in reversed(levels):
        base = oracle if enumerator is None else RecordingOracle(enumerator)
        enumerator = JumpEnumerator.create(variant, base, JumpBudget(steps, width, hints))
    return enumerator


def iterate_jump(n: int, budgets: Optional[Sequence[int]] = None,
                 domain: Optional[Iterable[int]] = None) -> JumpStageView:
    """
    The stage view of ∅^{nb}, n ≤ 3.

    Args:
        n: Number of jumps.
        budgets: Step budgets, outermost first.
        domain: Points to decide; [0, VIEW_SPAN) by default.

    Returns:
        JumpStageView whose `fragile` points read an inner 0 that turns into a
        1 at ESCALATION times the inner budget.
    """
    return nested_jump(n, budgets).view(domain)


# Matched budgets -----------------------------------------------------------


class Match(str, Enum):
    AGREE = "agree"
    DISAGREE = "disagree"
    UNRESOLVED = "unresolved"


def matched_check(left: Callable[[int], bool], right: Callable[[int], bool],
                  budget: int) -> Match:
    """
    Compare two budgeted membership tests.

    Both sides are evaluated at `budget` and at `budget * ESCALATION`. They
    agree when they match at the larger budget; they disagree when they differ
    there and neither side moved between the two budgets.
    """
    escalated = budget * settings.ESCALATION
    left_small, left_large = bool(left(budget)), bool(left(escalated))
    right_small, right_large = bool(right(budget)), bool(right(escalated))
    if left_large == right_large:
        return Match.AGREE
    if left_small == left_large and right_small == right_large:
        return Match.DISAGREE
    return Match.UNRESOLVED
