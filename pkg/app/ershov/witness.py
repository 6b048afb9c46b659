# app/ershov/witness.py
"""
α-c.e. Witnesses

A witness is a program ψ of two arguments (n, β), called on pair(n, code(β)),
together with an ordinal bound α. The set it describes takes at n the value
ψ(n, γ) for the least γ < α on which ψ(n, ·) converges.

Key Concepts:
- Observation: ψ(n, β) converging with s steps is seen at stage
  max(code(β) + s, u(β) + 2). The code offset dovetails ordinals with steps;
  the u(β) + 2 delay makes every convergence at ω·i + j appear after stage
  j + 1, which the Shoenfield construction relies on.
- Mind-change history: the stages at which the least observed ordinal drops,
  with the ordinal and its value. Ordinals strictly decrease along it.
- Any nonzero output counts as the bit 1.
- Scripted witnesses are tables of (n, ordinal, value, time) entries compiled
  into a program that charges `time` steps and answers `value`, so their
  limits are known exactly.
"""

import bisect
import json
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.memo import HorizonMemo
from app.machine.coding import decode_seq, encode_seq, pair, unpair
from app.machine.interpreter import Context, converge
from app.machine.procedures import split_params
from app.machine.transforms import parametric, procedure_program
from app.oracles.sets import EMPTY
from app.ordinals.cnf import OrdinalCNF, ordinal_code, ordinal_decode, ordinals_below

logger = logging.getLogger(__name__)

FIRST_HORIZON = 64


class UnresolvedWitnessError(ValueError):
    """Raised when a witness has no converged ordinal within the budget."""


@dataclass(frozen=True, slots=True)
class AlphaCEWitness:
    psi: int
    bound: OrdinalCNF

    def __str__(self) -> str:
        return f"AlphaCEWitness(psi={self.psi}, bound={self.bound})"


@dataclass(frozen=True, slots=True)
class Observation:
    stage: int
    ordinal: OrdinalCNF
    value: int


@dataclass(frozen=True, slots=True)
class MindChange:
    stage: int
    ordinal: OrdinalCNF
    value: int


@dataclass(frozen=True)
class WitnessState:
    n: int
    stage: int
    history: Tuple[MindChange, ...] = ()

    @property
    def current(self) -> Optional[MindChange]:
        return self.history[-1] if self.history else None

    @property
    def flips(self) -> int:
        return sum(1 for a, b in zip(self.history, self.history[1:]) if a.value != b.value)


def bit(value: int) -> int:
    return 1 if value else 0


def observation_stage(ordinal: OrdinalCNF, code: int, steps: int) -> int:
    return max(code + steps, ordinal.units + 2)


def _observe(key: Tuple[int, Tuple[int, ...], int], horizon: int) -> Tuple[List[Observation], List[int]]:
    psi, coeffs, n = key
    items = []
    for code, alpha in ordinals_below(OrdinalCNF(coeffs), horizon):
        outcome = converge(psi, pair(n, code), horizon - code)
        if not outcome.halted:
            continue
        stage = observation_stage(alpha, code, outcome.steps)
        if stage <= horizon:
            items.append(Observation(stage, alpha, bit(outcome.value)))
    items.sort(key=lambda o: (o.stage, o.ordinal))
    return items, [o.stage for o in items]


_OBSERVATIONS: HorizonMemo = HorizonMemo(_observe, settings.MEMO_LIMIT)


def observations(w: AlphaCEWitness, n: int, horizon: int) -> List[Observation]:
    """
    Every observation of ψ(n, ·) with stage <= horizon, ordered by (stage, ordinal).

    Results are memoized per (ψ, α, n) in a bounded HorizonMemo.
    """
    _, (items, stages) = _OBSERVATIONS.lookup((w.psi, w.bound.coeffs, n), horizon)
    return items[:bisect.bisect_right(stages, horizon)]


def mind_changes(w: AlphaCEWitness, n: int, horizon: int) -> Tuple[MindChange, ...]:
    history: List[MindChange] = []
    for ob in observations(w, n, horizon):
        if not history or ob.ordinal < history[-1].ordinal:
            history.append(MindChange(ob.stage, ob.ordinal, ob.value))
    return tuple(history)


def witness_history(w: AlphaCEWitness, n: int, s: int) -> WitnessState:
    return WitnessState(n, s, mind_changes(w, n, s))


def reading_at(history: Sequence[MindChange], stage: int) -> Optional[MindChange]:
    """The latest mind change at or before `stage`."""
    current = None
    for change in history:
        if change.stage > stage:
            break
        current = change
    return current


def eval_witness(w: AlphaCEWitness, n: int, s: int) -> Optional[MindChange]:
    """
    Least ordinal converged by stage s, with its value; None when unresolved.

    Example:
        For ψ(n, 5) = 1 seen early and ψ(n, 2) = 0 seen late, a small s gives
        (5, 1) and a large s gives (2, 0).
    """
    history = mind_changes(w, n, s)
    return history[-1] if history else None


def limit_value(w: AlphaCEWitness, n: int, budget: int) -> Optional[int]:
    reading = eval_witness(w, n, budget)
    return reading.value if reading is not None else None


def require_limit(w: AlphaCEWitness, n: int, budget: int) -> int:
    value = limit_value(w, n, budget)
    if value is None:
        raise UnresolvedWitnessError(f"{w} has no converged ordinal at n={n} within {budget}")
    return value


def first_observation(w: AlphaCEWitness, n: int, horizon: int) -> Optional[Observation]:
    """The earliest observation (least stage, then least ordinal) within the horizon."""
    h = min(FIRST_HORIZON, horizon)
    while True:
        seen = observations(w, n, h)
        if seen:
            return seen[0]
        if h >= horizon:
            return None
        h = min(2 * h, horizon)


def earliest_observation(w: AlphaCEWitness, n: int, horizon: int,
                         match: Callable[[OrdinalCNF], bool]) -> Optional[Observation]:
    """The earliest observation within the horizon whose ordinal satisfies `match`."""
    h = min(FIRST_HORIZON, horizon)
    while True:
        for ob in observations(w, n, h):
            if match(ob.ordinal):
                return ob
        if h >= horizon:
            return None
        h = min(2 * h, horizon)


def on_level(ordinal: OrdinalCNF, level: int, k: int) -> bool:
    """ordinal = ω^k·level + β with β < ω^k."""
    return ordinal.degree <= k and ordinal.coefficient(k) == level


def level_observation(w: AlphaCEWitness, n: int, level: int, k: int,
                      horizon: int) -> Optional[Observation]:
    """The earliest observation at an ordinal ω^k·level + β with β < ω^k."""
    return earliest_observation(w, n, horizon, lambda alpha: on_level(alpha, level, k))


# Scripted witnesses ------------------------------------------------------


@dataclass(frozen=True, slots=True)
class ScriptEntry:
    n: int
    ordinal: OrdinalCNF
    value: int
    time: int = 1


@dataclass(frozen=True)
class WitnessScript:
    entries: Tuple[ScriptEntry, ...]
    bound: Optional[OrdinalCNF] = None

    @property
    def effective_bound(self) -> OrdinalCNF:
        if self.bound is not None:
            return self.bound
        degree = max((e.ordinal.degree for e in self.entries), default=0)
        return OrdinalCNF.omega_power(max(degree, 0) + 1)

    @property
    def table_code(self) -> int:
        flat: List[int] = []
        for entry in self.entries:
            flat.extend((entry.n, ordinal_code(entry.ordinal), bit(entry.value), entry.time))
        return encode_seq(flat)

    def compile(self) -> AlphaCEWitness:
        bound = self.effective_bound
        for entry in self.entries:
            if not entry.ordinal < bound:
                raise ValueError(f"script ordinal {entry.ordinal} is not below {bound}")
        return AlphaCEWitness(parametric("scripted_witness", self.table_code), bound)

    def domain(self) -> List[int]:
        return sorted({e.n for e in self.entries})

    def limit(self, n: int) -> Optional[int]:
        """Exact limit: the value at the least scripted ordinal for n."""
        mine = [e for e in self.entries if e.n == n]
        if not mine:
            return None
        return bit(min(mine, key=lambda e: e.ordinal).value)

    def limit_set(self) -> frozenset:
        return frozenset(n for n in self.domain() if self.limit(n))

    def to_json(self) -> dict:
        payload = {
            "entries": [
                {"n": e.n, "ordinal": e.ordinal.to_json(), "value": e.value, "time": e.time}
                for e in self.entries
            ]
        }
        if self.bound is not None:
            payload["bound"] = self.bound.to_json()
        return payload

    @classmethod
    def from_json(cls, payload) -> "WitnessScript":
        from app.schemas.witness import WitnessScriptSchema

        if isinstance(payload, list):
            payload = {"entries": payload}
        schema = WitnessScriptSchema.model_validate(payload)
        entries = tuple(
            ScriptEntry(e.n, OrdinalCNF(e.ordinal), e.value, e.time) for e in schema.entries
        )
        bound = OrdinalCNF(schema.bound) if schema.bound is not None else None
        return cls(entries, bound)

    @classmethod
    def load(cls, path: str | Path) -> "WitnessScript":
        return cls.from_json(json.loads(Path(path).read_text()))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2))


def script(rows: Iterable[Tuple[int, OrdinalCNF | int, int, int]],
           bound: Optional[OrdinalCNF] = None) -> WitnessScript:
    """Build a script from (n, ordinal, value, time) rows; naturals allowed as ordinals."""
    entries = []
    for n, ordinal, value, time in rows:
        if isinstance(ordinal, int):
            ordinal = OrdinalCNF.natural(ordinal)
        entries.append(ScriptEntry(n, ordinal, value, time))
    return WitnessScript(tuple(entries), bound)


@lru_cache(maxsize=256)
def _script_table(table_code: int) -> Dict[Tuple[int, int], Tuple[int, int]]:
    flat = decode_seq(table_code) or ()
    table: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for i in range(0, len(flat) - 3, 4):
        n, code, value, time = flat[i:i + 4]
        table.setdefault((n, code), (value, time))
    return table


def proc_scripted_witness(ctx: Context, arg: int) -> int:
    params, x = split_params(arg, 1)
    if params is None:
        return ctx.diverge()
    n, code = unpair(x)
    entry = _script_table(params[0]).get((n, code))
    if entry is None:
        return ctx.diverge()
    value, time = entry
    ctx.charge(time)
    return value


def constant_witness(value: int) -> AlphaCEWitness:
    """ψ(n, 0) = value for every n."""
    from app.machine.instructions import DECJZ, HALT, SET, CALL
    from app.machine.program import encode

    # r1 := ordinal code of the argument; answer only at ordinal 0
    return AlphaCEWitness(
        encode((CALL("snd", 0, 1), DECJZ(1, 3), DECJZ(2, 2), SET(0, value), HALT())),
        OrdinalCNF.natural(1),
    )


# The ω-c.e. witness of ∅′ -------------------------------------------------

HALTING_BOUND = OrdinalCNF.natural(2)


def halting_witness() -> AlphaCEWitness:
    """ψ(x, 1) = 0 at once; ψ(x, 0) = 1 once φ_x(x) halts."""
    return AlphaCEWitness(procedure_program("halting_witness"), HALTING_BOUND)


def proc_halting_witness(ctx: Context, arg: int) -> int:
    x, code = unpair(arg)
    alpha = ordinal_decode(code)
    if alpha == 1:
        return 0
    if alpha == 0:
        ctx.call(x, x, EMPTY)
        return 1
    return ctx.diverge()
