# app/constructions/ttsep.py
"""
A c.e. Set A with A^b Not bT-Below A_tt

Requirement R_n: the opponent (Φ, φ) = (Φ_{π1(n)}, φ_{π2(n)}), or the n-th
pair of an explicit opponent list, does not compute A^b from A_tt with use
bound φ. R_n holds a movable marker x_n, always one of the controlled indices
e_0 < e_1 < ..., whose behavior the construction declares as it goes.

Stage s, every computation run for s + STAGE_SLACK steps:
- r(m) = max φ_y(y) over the watched y ≤ φ_l(x_l), l < m. Markers x_m with m
  at least the least k whose restraint grew are undefined.
- Case 1: no R_n, n < k, sees Φ^{A_tt↾φ(x_n)}(x_n) = A^b(x_n). Define the
  least undefined marker as the next unused controlled index.
- Case 2: take the least such n and undefine every x_m, m > n. Declare
  φ_{x_n}(x_n) = r(n) + max(A) + φ(x_n) once per marker value, then
    2A (A^b(x_n) = 0): declare Φ_{x_n} halting on the snapshot A_s↾φ_{x_n}(x_n);
    2B (A^b(x_n) = 1): enumerate the least x > r(n) not in A.

The watched y are those below VIEW_SPAN plus the controlled indices in use.
A controlled program Φ_x on input x halts with the declared value B exactly
when its oracle restricted to [0, B] is empty or equals a declared snapshot.
The declarations belong to the run: they only take effect inside
`controlling(run programs, run cache)`, and elsewhere a controlled program
diverges.
"""

import logging
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from app.constructions.trace import ConstructionTrace
from app.core.config import settings
from app.jumps.hints import BoundHints, bound_hints
from app.jumps.views import BoundedJump, JumpBudget, TruthTableJump
from app.machine.coding import decode_seq, encode_seq, unpair
from app.machine.interpreter import Context, HaltingCache, converge, halting_scope, run
from app.machine.procedures import split_params
from app.machine.transforms import least_padding_above, parametric
from app.oracles.approx import ApproxSet
from app.oracles.sets import restrict

logger = logging.getLogger(__name__)

STAGE_SLACK = 32


class RequirementStatus(str, Enum):
    UNRESOLVED = "unresolved"
    DISAGREE = "disagree"
    AGREE = "agree"


@dataclass
class Controlled:
    index: int
    value: Optional[Tuple[int, int]] = None
    snapshots: List[Tuple[int, frozenset]] = field(default_factory=list)


@dataclass
class ControlledPrograms:
    """The controlled indices of one run and what the run has declared about them."""
    config: int
    slots: Dict[int, Controlled] = field(default_factory=dict)
    indices: List[int] = field(default_factory=list)

    def index(self, i: int) -> int:
        while len(self.indices) <= i:
            floor = self.indices[-1] if self.indices else -1
            index = least_padding_above(
                parametric("ttsep_controlled", self.config, len(self.indices)), floor)
            self.slots[len(self.indices)] = Controlled(index)
            self.indices.append(index)
        return self.indices[i]

    def hints(self) -> BoundHints:
        """Every controlled index is its own bound index."""
        return bound_hints((x, (x,)) for x in self.indices)


_ACTIVE: ContextVar[Optional[ControlledPrograms]] = ContextVar("ttsep_controlled", default=None)


@contextmanager
def controlling(programs: ControlledPrograms, cache: HaltingCache) -> Iterator[None]:
    """Give the controlled programs of one run their behavior, with that run's halting cache."""
    token = _ACTIVE.set(programs)
    try:
        with halting_scope(cache):
            yield
    finally:
        _ACTIVE.reset(token)


def config_code(N: int, stages: int, opponents: Sequence[Tuple[int, int]] = ()) -> int:
    flat = [v for pair_ in opponents for v in pair_]
    return encode_seq((N, stages, *flat))


def opponent(config: int, n: int) -> Tuple[int, int]:
    """(functional, bound) of R_n; canonical projections when no list is given."""
    items = decode_seq(config) or ()
    flat = items[2:]
    if 2 * n + 1 < len(flat):
        return flat[2 * n], flat[2 * n + 1]
    return unpair(n)


def proc_controlled(ctx: Context, arg: int) -> int:
    params, y = split_params(arg, 2)
    if params is None:
        return ctx.diverge()
    cfg, i = params
    programs = _ACTIVE.get()
    if programs is None or programs.config != cfg:
        return ctx.diverge()
    state = programs.slots.get(i)
    if state is None or y != state.index or state.value is None:
        return ctx.diverge()
    stage, bound = state.value
    if bound > ctx.remaining:
        return ctx.exhaust()
    seen = frozenset(p for p in range(bound + 1) if ctx.query(p))
    need = stage
    if seen:
        stages = [t for t, snapshot in state.snapshots if snapshot == seen]
        if not stages:
            return ctx.diverge()
        need = max(stage, stages[0])
    if need > ctx.remaining:
        return ctx.exhaust()
    ctx.charge(need)
    return bound


@dataclass(frozen=True)
class Action:
    stage: int
    n: int
    marker: int
    case: str
    bound: int


@dataclass
class TTSeparationResult:
    config: int
    approx: ApproxSet
    markers: Dict[int, int]
    actions: List[Action]
    convergences: Dict[int, List[int]]
    trace: ConstructionTrace
    final_steps: int
    controlled: ControlledPrograms
    halting: HaltingCache

    @property
    def size(self) -> int:
        return decode_seq(self.config)[0]

    def attention_counts(self) -> Dict[int, int]:
        counts = {n: 0 for n in range(self.size)}
        for action in self.actions:
            counts[action.n] += 1
        return counts

    def is_ce(self) -> bool:
        return all(self.approx.change_count(x) <= 1 for x in self.approx.changes)

    def requirement_status(self, n: int, steps: Optional[int] = None) -> RequirementStatus:
        """
        R_n at the final stage, evaluated at `steps` and ESCALATION times it.

        AGREE means both budgets show Φ^{A_tt↾φ(x_n)}(x_n) = A^b(x_n).
        """
        steps = self.final_steps if steps is None else steps
        marker = self.markers.get(n)
        if marker is None:
            return RequirementStatus.UNRESOLVED
        functional, bound_index = opponent(self.config, n)
        hints = self.controlled.hints()
        answers = []
        with controlling(self.controlled, self.halting):
            for budget in (steps, steps * settings.ESCALATION):
                claim = _opponent_claim(functional, bound_index, marker, self.approx, budget)
                if claim is None:
                    return RequirementStatus.UNRESOLVED
                answers.append(claim == _in_bounded_jump(marker, self.approx, budget, hints))
        return RequirementStatus.AGREE if all(answers) else RequirementStatus.DISAGREE

    def double_action_violations(self) -> List[Action]:
        """
        2A followed by 2B on the same marker with no new φ_y(y), y ≤ φ(x_n),
        logged in between.
        """
        violations = []
        by_marker: Dict[Tuple[int, int], List[Action]] = {}
        for action in self.actions:
            by_marker.setdefault((action.n, action.marker), []).append(action)
        for sequence in by_marker.values():
            for first, second in zip(sequence, sequence[1:]):
                if first.case != "2A" or second.case != "2B":
                    continue
                explained = any(
                    y <= first.bound
                    for stage, ys in self.convergences.items()
                    if first.stage < stage <= second.stage
                    for y in ys
                )
                if not explained:
                    violations.append(second)
        return violations


def _opponent_claim(functional: int, bound_index: int, x: int, A: ApproxSet,
                    steps: int) -> Optional[int]:
    bound = converge(bound_index, x, steps)
    if not bound.halted:
        return None
    tt = TruthTableJump(A, JumpBudget(steps))
    outcome = run(functional, x, steps, restrict(tt, bound.value))
    if not outcome.halted:
        return None
    return outcome.value


def _in_bounded_jump(x: int, A: ApproxSet, steps: int, hints: BoundHints) -> int:
    return 1 if BoundedJump(A, JumpBudget(steps, hints=hints)).member(x) is not None else 0


def tt_separation(N: int, budget: Optional[int] = None,
                  opponents: Sequence[Tuple[int, int]] = ()) -> TTSeparationResult:
    """
    Run the construction for requirements n < N over `budget` stages.

    Args:
        N: Number of requirements.
        budget: Stages; CONSTRUCTION_BUDGET by default.
        opponents: Optional (functional, bound) index pairs replacing the
            canonical projections of n.

    Raises:
        ValueError: If N < 1 or the opponent list is shorter than N.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if opponents and len(opponents) < N:
        raise ValueError(f"need {N} opponents, got {len(opponents)}")
    stages = settings.CONSTRUCTION_BUDGET if budget is None else budget
    cfg = config_code(N, stages, opponents)
    programs = ControlledPrograms(cfg)
    cache = HaltingCache(settings.CACHE_LIMIT)

    trace = ConstructionTrace("ttsep", {"N": N, "stages": stages,
                                        "opponents": [list(p) for p in opponents]})
    approx = ApproxSet()
    markers: Dict[int, int] = {}
    slots: Dict[int, int] = {}
    restraints: Dict[int, int] = {m: 0 for m in range(N)}
    converged: Set[int] = set()
    convergences: Dict[int, List[int]] = {}
    actions: List[Action] = []
    next_slot = 0

    def define(m: int) -> dict:
        nonlocal next_slot
        markers[m] = programs.index(next_slot)
        slots[m] = next_slot
        next_slot += 1
        return {"marker": m, "value": markers[m]}

    with controlling(programs, cache):
        trace.record(0, defined=[define(0)])

        for s in range(1, stages + 1):
            steps = s + STAGE_SLACK
            approx = approx.at_stage(s)
            watched = set(range(settings.VIEW_SPAN)) | set(programs.indices[:next_slot])
            new = sorted(y for y in watched - converged if converge(y, y, steps).halted)
            converged.update(new)
            if new:
                convergences[s] = new

            bounds: Dict[int, int] = {}
            for l, x in markers.items():
                b = converge(opponent(cfg, l)[1], x, steps)
                if b.halted:
                    bounds[l] = b.value
            updated = {}
            for m in range(N):
                values = [
                    converge(y, y, steps).value for y in converged
                    if any(y <= bounds[l] for l in bounds if l < m)
                ]
                updated[m] = max(values, default=0)
            k = next((m for m in range(N) if updated[m] > restraints[m]), N)
            restraint_changed = updated != restraints
            restraints = updated
            undefined = [m for m in sorted(markers) if m >= k]
            for m in undefined:
                del markers[m]

            acting = None
            for n in sorted(m for m in markers if m < k):
                functional, bound_index = opponent(cfg, n)
                claim = _opponent_claim(functional, bound_index, markers[n], approx, steps)
                member = _in_bounded_jump(markers[n], approx, steps, programs.hints())
                if claim is not None and claim == member:
                    acting = (n, member)
                    break

            defined, enumerated, attention = [], [], []
            if acting is None:
                free = next((m for m in range(N) if m not in markers), None)
                if free is not None:
                    defined.append(define(free))
            else:
                n, member = acting
                dropped = [m for m in sorted(markers) if m > n]
                for m in dropped:
                    del markers[m]
                undefined.extend(dropped)
                x_n = markers[n]
                state = programs.slots[slots[n]]
                bound = bounds[n]
                if state.value is None:
                    state.value = (s, restraints[n] + approx.max_member() + bound)
                    cache.forget(x_n, x_n)
                declared = state.value[1]
                if not member:
                    state.snapshots.append((s, approx.below(declared)))
                    case = "2A"
                else:
                    x = restraints[n] + 1
                    while x in approx:
                        x += 1
                    if x > declared:
                        logger.warning("stage %d: R_%d enumerates %d above its declared use %d",
                                       s, n, x, declared)
                    approx = approx.with_value(x, 1)
                    enumerated.append(x)
                    case = "2B"
                actions.append(Action(s, n, x_n, case, bound))
                attention.append({"n": n, "case": case, "use": declared})
                logger.debug("stage %d: R_%d case %s", s, n, case)

            trace.record(
                s,
                convergences=new,
                restraints=({str(m): r for m, r in restraints.items()}
                            if restraint_changed else None),
                undefined=undefined,
                defined=defined,
                enumerated=enumerated,
                attention=attention,
            )

    result = TTSeparationResult(cfg, approx, dict(markers), actions, convergences, trace,
                                stages + STAGE_SLACK, programs, cache)
    logger.info("ttsep: N=%d stages=%d, |A|=%d, attention %s", N, stages, len(approx.members),
                result.attention_counts())
    return result


def trace_from_params(params: Dict[str, Any]) -> ConstructionTrace:
    opponents = [tuple(p) for p in params.get("opponents", [])]
    return tt_separation(params["N"], params["stages"], opponents).trace
