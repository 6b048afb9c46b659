# app/constructions/shoenfield.py
"""
Shoenfield Inversion for the Bounded Jump

Given an ω²-c.e. witness ψ for B, build an ω-c.e. set A (via f(x) = x + 1)
with n ∈ B iff g(n) ∈ A^b.

Key Concepts:
- i_n: the level (coefficient of ω) of the first observation of ψ(n, ·).
- n-markers x_n^i, i ≤ i_n, sit at the stage that defined them. At most one
  n-marker is defined at a time and its level never increases.
- Stage s:
    Step 1: a new convergence φ_{e,s}(x) with e ≤ x ≤ g(k), k least, extracts
            every m-marker with m > k from A and undefines it. Only x < W
            are watched, W being the convergence window.
    Step 2: take the least n ≤ s with an observation whose marker is missing,
            sits above the current level, or disagrees with B_s(n).
            (a) if there is no marker on the current level, define x_n^i = s
                and extract every m-marker with m > n and the old n-marker;
            (b) set A(x_n^i) = B_s(n).
- h(0) = i_0 and h(n) = Σ_{t<n} h(t) + Σ_{t=1}^{g(n−1)} (t² − t)/2 + i_n bound
  the number of n-marker definitions. The middle sum is C(g(n−1) + 1, 3).
- Θ_q lays out k(n, 0) < ... < k(n, h(n) − 1) < g(n) as packed copies of the
  controlled programs with consecutive constants; the fixed point i of
  q ↦ (index of Θ_q's g) makes φ_i = g. φ_{k(n, r)} outputs the r-th
  n-marker; Φ_{g(n)} halts exactly when its oracle holds a position where an
  n-marker was defined.

g(n) has about six times the bits of g(n − 1), so plans are only ever built
for a handful of n and their values are reported as bit lengths.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Set, Tuple

from app.constructions.trace import ConstructionTrace
from app.core.config import settings
from app.ershov.witness import (
    AlphaCEWitness, MindChange, UnresolvedWitnessError, first_observation, mind_changes,
    reading_at,
)
from app.jumps.hints import bound_hints
from app.jumps.views import BoundedJump, JumpBudget
from app.machine.coding import decode_seq, encode_seq, unpair
from app.machine.instructions import CALL, HALT, PAIR, SET
from app.machine.interpreter import Context, converge, run
from app.machine.program import encode
from app.machine.transforms import (
    constant_above, fixed_point_set, packed, procedure_program, unpack,
)
from app.oracles.approx import ApproxSet
from app.ordinals.cnf import OrdinalCNF, ordinal_code, ordinal_decode

logger = logging.getLogger(__name__)

OMEGA_SQUARED = OrdinalCNF.omega_power(2)
PLAN_CHECK_POINTS = 4
CHAIN_CHECK_PAIRS = 16
# a row's bit length is about six times the previous one
ROW_GROWTH = 6


class PlanExhaustedError(ValueError):
    """Raised when the controlled-index plan cannot be built or checked."""


# Configuration code ------------------------------------------------------


@dataclass(frozen=True)
class ShoenfieldConfig:
    witness: AlphaCEWitness
    window: int
    stages: int
    levels: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def code(self) -> int:
        return encode_seq((self.witness.psi, ordinal_code(self.witness.bound), self.window,
                           self.stages, *self.levels))

    @classmethod
    def decode(cls, code: int) -> Optional["ShoenfieldConfig"]:
        items = decode_seq(code)
        if items is None or len(items) < 4:
            return None
        psi, bound_code, window, stages, *levels = items
        bound = ordinal_decode(bound_code)
        if bound is None:
            return None
        return cls(AlphaCEWitness(psi, bound), window, stages, tuple(levels))

    def level(self, n: int) -> int:
        """i_n; zero past the table."""
        return self.levels[n] if n < len(self.levels) else 0


def first_levels(w: AlphaCEWitness, size: int, horizon: int) -> Tuple[int, ...]:
    """
    i_n for n < size.

    Raises:
        UnresolvedWitnessError: If some ψ(n, ·) shows nothing within the horizon.
    """
    levels = []
    for n in range(size):
        first = first_observation(w, n, horizon)
        if first is None:
            raise UnresolvedWitnessError(f"{w} has no observation at n={n} within {horizon}")
        levels.append(first.ordinal.coefficient(1))
    return tuple(levels)




def step_one_allowance(previous_g: int) -> int:
    """Σ_{t=1}^{g(n−1)} (t² − t)/2 = C(g(n−1) + 1, 3); zero for g(−1) = −1."""
    return comb(max(previous_g + 1, 0), 3)


# Controlled indices ------------------------------------------------------


@dataclass(frozen=True)
class ThetaRow:
    """Row n of Θ_q. k(n, r) is the packed ψ program with constant base + r."""
    n: int
    h: int
    total: int
    base: int
    g: int


def _psi_index(config_code: int, q: int, n: int, c: int) -> int:
    return packed("shoenfield_psi", config_code, q, n, c)


def _gamma_index(config_code: int, q: int, n: int, c: int) -> int:
    return packed("shoenfield_gamma", config_code, q, n, c)


@lru_cache(maxsize=64)
def theta_row(config_code: int, q: int, n: int) -> ThetaRow:
    """
    Row n of Θ_q, built from row n − 1.

    Raises:
        PlanExhaustedError: If config_code is not a construction config.
    """
    config = ShoenfieldConfig.decode(config_code)
    if config is None:
        raise PlanExhaustedError("not a construction config")
    if n == 0:
        total, previous_g = 0, -1
    else:
        previous = theta_row(config_code, q, n - 1)
        total, previous_g = previous.total, previous.g
    h = total + step_one_allowance(previous_g) + config.level(n)
    base = constant_above(lambda c: _psi_index(config_code, q, n, c), previous_g)
    top = _psi_index(config_code, q, n, base + h - 1) if h else previous_g
    z = constant_above(lambda c: _gamma_index(config_code, q, n, c), top)
    return ThetaRow(n, h, total + h, base, _gamma_index(config_code, q, n, z))


@dataclass(frozen=True)
class ControlledIndexPlan:
    config_code: int
    q: int
    rows: Tuple[ThetaRow, ...]

    @property
    def h(self) -> Tuple[int, ...]:
        return tuple(row.h for row in self.rows)

    @property
    def g(self) -> Tuple[int, ...]:
        return tuple(row.g for row in self.rows)

    def k(self, n: int, r: int) -> int:
        """
        Raises:
            IndexError: If r is outside [0, h(n)).
        """
        row = self.rows[n]
        if not 0 <= r < row.h:
            raise IndexError(f"k({n}, {r}) needs r < h({n})")
        return _psi_index(self.config_code, self.q, n, row.base + r)

    def chain_holds(self, n: int) -> bool:
        """
        g(n−1) < k(n, 0) < ... < k(n, h(n) − 1) < g(n).

        Checks both ends and the first neighbouring pairs; k is strictly
        increasing in r in between.
        """
        row = self.rows[n]
        previous = self.rows[n - 1].g if n > 0 else -1
        if row.h == 0:
            return previous < row.g
        rs = sorted({*range(min(row.h, CHAIN_CHECK_PAIRS)), row.h - 1})
        chain = [previous, *(self.k(n, r) for r in rs), row.g]
        return all(a < b for a, b in zip(chain, chain[1:]))


def theta(config_code: int, q: int, size: int) -> ControlledIndexPlan:
    """Θ_q for n < size."""
    return ControlledIndexPlan(config_code, q, tuple(theta_row(config_code, q, n) for n in range(size)))


def theta_transformer(config_code: int) -> int:
    """Index of q ↦ (index of x ↦ Θ_q's g(x))."""
    return encode((
        SET(1, config_code), PAIR(0, 1, 0),
        SET(1, procedure_program("shoenfield_theta")), PAIR(0, 1, 0),
        CALL("smn", 0, 0), HALT(),
    ))


@lru_cache(maxsize=8)
def controlled_fixed_point(config_code: int) -> int:
    """The least fixed point i of theta_transformer, so φ_i = g."""
    return fixed_point_set(theta_transformer(config_code), 1)[0]


def build_theta_plan(config_code: int, size: int, budget: Optional[int] = None) -> ControlledIndexPlan:
    """
    Close the Θ loop with a fixed point i and return Θ_i.

    Raises:
        PlanExhaustedError: If φ_i disagrees with g on a check point.
    """
    budget = settings.RUN_BUDGET if budget is None else budget
    i = controlled_fixed_point(config_code)
    plan = theta(config_code, i, size)
    for n in range(min(size, PLAN_CHECK_POINTS)):
        outcome = run(i, n, budget)
        if not outcome.halted or outcome.value != plan.g[n]:
            raise PlanExhaustedError(f"the fixed point does not compute g at {n}")
    return plan


def _charged_row(ctx: Context, config_code: int, q: int, n: int) -> ThetaRow:
    """theta_row after charging for rows 0..n; malformed configs diverge."""
    if ShoenfieldConfig.decode(config_code) is None:
        ctx.diverge()
    cost = sum(ROW_GROWTH ** t for t in range(n + 1))
    if cost > ctx.remaining:
        ctx.exhaust()
    ctx.charge(cost)
    return theta_row(config_code, q, n)


def proc_theta(ctx: Context, arg: int) -> int:
    params, x = unpair(arg)
    config_code, q = unpair(params)
    return _charged_row(ctx, config_code, q, x).g


def proc_psi(ctx: Context, arg: int) -> int:
    """φ_{k(n, r)}: the r-th n-marker definition, seen at its stage."""
    config_code, q, n, c = unpack(arg, 4)
    row = _charged_row(ctx, config_code, q, n)
    r = c - row.base
    if not 0 <= r < row.h:
        return ctx.diverge()
    stages = construction_history(config_code).definition_stages(n)
    if r >= len(stages):
        return ctx.diverge()
    if stages[r] > ctx.remaining:
        return ctx.exhaust()
    ctx.charge(stages[r])
    return stages[r]


def proc_gamma(ctx: Context, arg: int) -> int:
    """Φ_{g(n)}: halt once a position where an n-marker was defined reads 1."""
    config_code, _q, n, _z = unpack(arg, 4)
    if ShoenfieldConfig.decode(config_code) is None:
        return ctx.diverge()
    for x in construction_history(config_code).definition_stages(n):
        if x > ctx.remaining:
            return ctx.exhaust()
        if ctx.query(x):
            ctx.charge(x)
            return 0
    return ctx.diverge()


# Markers and the construction --------------------------------------------


@dataclass
class Marker:
    n: int
    level: int
    value: Optional[int] = None
    history: List[Tuple[int, Optional[int], str]] = field(default_factory=list)

    @property
    def name(self) -> List[int]:
        return [self.n, self.level]

    def define(self, stage: int) -> None:
        self.value = stage
        self.history.append((stage, stage, "defined"))

    def undefine(self, stage: int, event: str) -> None:
        self.history.append((stage, self.value, event))
        self.value = None


@dataclass
class ShoenfieldHistory:
    """Everything one run of the stages leaves behind."""
    config: ShoenfieldConfig
    q: int
    approx: ApproxSet
    markers: Dict[Tuple[int, int], Marker]
    live: Dict[int, Marker]
    definitions: Dict[int, List[int]]
    oracles: Dict[int, Set[FrozenSet[int]]]
    trace: ConstructionTrace

    def definition_stages(self, n: int) -> List[int]:
        return self.definitions.get(n, [])


def _convergence_stages(window: int, stages: int) -> Dict[int, List[Tuple[int, int]]]:
    """Stage ↦ the (e, x), e ≤ x < window, whose φ_e(x) first converges there."""
    found: Dict[int, List[Tuple[int, int]]] = {}
    for x in range(window):
        for e in range(x + 1):
            outcome = converge(e, x, stages)
            if outcome.halted:
                found.setdefault(max(outcome.steps, x + 1), []).append((e, x))
    return found


def extraction_floor(config_code: int, q: int, size: int, x: int) -> int:
    """Least k with x ≤ g(k); size when x lies above every g(n), n < size."""
    for k in range(size):
        if x <= theta_row(config_code, q, k).g:
            return k
    return size


def run_construction(config: ShoenfieldConfig) -> ShoenfieldHistory:
    """Run stages 1..S of the construction. Deterministic in the config."""
    w, size, stages = config.witness, config.size, config.stages
    q = controlled_fixed_point(config.code)
    readings: Dict[int, Tuple[MindChange, ...]] = {n: mind_changes(w, n, stages) for n in range(size)}
    convergences = _convergence_stages(config.window, stages)
    trace = ConstructionTrace("shoenfield", {
        "psi": w.psi, "bound": w.bound.to_json(), "N": size, "stages": stages,
        "window": config.window,
    })
    approx = ApproxSet()
    markers: Dict[Tuple[int, int], Marker] = {}
    live: Dict[int, Marker] = {}
    definitions: Dict[int, List[int]] = {n: [] for n in range(size)}
    oracles: Dict[int, Set[FrozenSet[int]]] = {n: set() for n in range(size)}

    def extract(marker: Marker, stage: int, event: str, log: Dict[str, list]) -> None:
        nonlocal approx
        if marker.value in approx:
            log["removed"].append(marker.value)
            approx = approx.with_value(marker.value, 0)
        log[event].append(marker.name)
        marker.undefine(stage, event)
        del live[marker.n]

    for s in range(1, stages + 1):
        log: Dict[str, list] = {"extracted": [], "undefined": [], "removed": [], "enumerated": []}
        approx = approx.at_stage(s)
        changed = False

        seen = convergences.get(s, [])
        if seen:
            k = min(extraction_floor(config.code, q, size, x) for _, x in seen)
            for m in sorted(n for n in live if n > k):
                extract(live[m], s, "extracted", log)
            changed = True

        defined, declared = [], []
        for n in range(min(size, s + 1)):
            reading = reading_at(readings[n], s)
            if reading is None:
                continue
            level = reading.ordinal.coefficient(1)
            marker = live.get(n)
            if marker is not None and marker.level == level and approx(marker.value) == reading.value:
                continue
            if marker is None or marker.level != level:
                for m in sorted(m for m in live if m > n):
                    extract(live[m], s, "extracted", log)
                if marker is not None:
                    extract(marker, s, "undefined", log)
                marker = markers.setdefault((n, level), Marker(n, level))
                marker.define(s)
                live[n] = marker
                defined.append({"marker": marker.name, "value": s})
                declared.append({"n": n, "r": len(definitions[n]), "value": s})
                definitions[n].append(s)
            if approx(marker.value) != reading.value:
                approx = approx.with_value(marker.value, reading.value)
                log["enumerated" if reading.value else "removed"].append(marker.value)
            logger.debug("stage %d: %d-marker at %d on level %d, B_s(%d) = %d",
                         s, n, marker.value, level, n, reading.value)
            changed = True
            break

        if changed:
            for n, marker in live.items():
                if marker.value in approx:
                    oracles[n].add(approx.below(marker.value))
        trace.record(s, convergences=[list(p) for p in seen], defined=defined, declared=declared,
                     **log)

    logger.info("shoenfield: N=%d stages=%d, %d definitions, |A|=%d", size, stages,
                sum(len(d) for d in definitions.values()), len(approx.members))
    return ShoenfieldHistory(config, q, approx, markers, live, definitions, oracles, trace)


@lru_cache(maxsize=8)
def construction_history(config_code: int) -> ShoenfieldHistory:
    config = ShoenfieldConfig.decode(config_code)
    if config is None:
        raise ValueError("not a construction config")
    return run_construction(config)


# Entry point -------------------------------------------------------------


def within_power_of_two(count: int, exponent: int) -> bool:
    """count ≤ 2^exponent without building 2^exponent for large exponents."""
    return exponent >= count.bit_length() or count <= 1 << exponent


@dataclass
class ShoenfieldResult:
    approx: ApproxSet
    plan: ControlledIndexPlan
    trace: ConstructionTrace
    history: ShoenfieldHistory

    @property
    def size(self) -> int:
        return self.history.config.size

    def definition_counts(self) -> Dict[int, int]:
        return {n: len(self.history.definition_stages(n)) for n in range(self.size)}

    def count_violations(self) -> Dict[int, Tuple[int, int]]:
        """n ↦ (definitions, h(n)) wherever the count exceeds h(n)."""
        counts = self.definition_counts()
        return {n: (c, self.plan.h[n]) for n, c in counts.items() if c > self.plan.h[n]}

    def change_violations(self) -> List[int]:
        """Positions x flipped more than x + 1 times."""
        return sorted(x for x in self.approx.changes if self.approx.change_count(x) > x + 1)

    def final_levels(self) -> Dict[int, int]:
        return {n: marker.level for n, marker in self.history.live.items()}

    def oracle_evidence(self) -> Dict[int, Tuple[int, int]]:
        """n ↦ (distinct oracles seen witnessing g(n) ∈ A^b, h(0) + ... + h(n))."""
        return {n: (len(self.history.oracles[n]), self.plan.rows[n].total) for n in range(self.size)}

    def oracle_violations(self) -> List[int]:
        """n whose oracle count exceeds 2^(h(0) + ... + h(n))."""
        return [n for n, (seen, exponent) in self.oracle_evidence().items()
                if not within_power_of_two(seen, exponent)]

    def jump_hints(self) -> Dict[int, FrozenSet[int]]:
        """g(n) ↦ the k(n, r) the run declared, r below the definition count."""
        return bound_hints(
            (self.plan.g[n], [self.plan.k(n, r) for r in range(min(count, self.plan.h[n]))])
            for n, count in self.definition_counts().items()
        )

    def jump_members(self, steps: Optional[int] = None) -> Dict[int, bool]:
        """g(n) ∈ A^b at the final stage, n < N."""
        steps = 4 * self.history.config.stages + 1000 if steps is None else steps
        enumerator = BoundedJump(self.approx, JumpBudget(steps, hints=self.jump_hints()))
        return {n: enumerator.member(self.plan.g[n]) is not None for n in range(self.size)}


def shoenfield_inversion(wB: AlphaCEWitness, N: int, budget: Optional[int] = None,
                         window: Optional[int] = None) -> ShoenfieldResult:
    """
    Run the construction for n < N over `budget` stages.

    Args:
        wB: Witness with bound at most ω².
        N: Number of requirements.
        budget: Stages; CONSTRUCTION_BUDGET by default.
        window: Step 1 watches x < window; CONVERGENCE_WINDOW by default.

    Raises:
        ValueError: If the bound exceeds ω² or N < 1.
        UnresolvedWitnessError: If some n < N shows nothing within the budget.
        PlanExhaustedError: If the fixed point does not compute g.
    """
    if not wB.bound <= OMEGA_SQUARED:
        raise ValueError(f"witness bound {wB.bound} exceeds w^2")
    if N < 1:
        raise ValueError("N must be positive")
    stages = settings.CONSTRUCTION_BUDGET if budget is None else budget
    window = settings.CONVERGENCE_WINDOW if window is None else window
    config = ShoenfieldConfig(wB, window, stages, first_levels(wB, N, stages))
    history = construction_history(config.code)
    plan = build_theta_plan(config.code, N)
    return ShoenfieldResult(history.approx, plan, history.trace, history)


def trace_from_params(params: Dict[str, Any]) -> ConstructionTrace:
    w = AlphaCEWitness(params["psi"], OrdinalCNF(params["bound"]))
    config = ShoenfieldConfig(w, params["window"], params["stages"],
                              first_levels(w, params["N"], params["stages"]))
    return run_construction(config).trace
