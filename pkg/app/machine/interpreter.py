# app/machine/interpreter.py
"""
Step-Bounded Interpreter

run(e, x, s, oracle) executes program e on input x for at most s steps and
reports one of three outcomes: halted with a value, still running, or blocked
on an oracle query (prefix oracles only).

Key Concepts:
- One executed instruction is one step; falling off the end of the program is
  an implicit HALT and also costs one step.
- The universal calls apply / apply_below / apply_plain run on an explicit
  frame stack sharing the caller's meter, so Φ_e computed through apply costs
  exactly what a direct run would, plus the call itself.
- Native procedures charge their own steps to the shared meter through a
  Context. Their results may only depend on the remaining budget through
  fast-forwarding, i.e. they must answer exactly what stepping stage by stage
  would have answered within that budget.
- Use is 1 + the largest position that reached the root oracle.
- φ_e is Φ_e run with the empty oracle.
"""

import logging
import threading
from collections import OrderedDict, defaultdict
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, Optional, Tuple

from app.core.config import settings
from app.machine.coding import pair, unpair
from app.machine.instructions import Opcode
from app.machine.procedures import APPLY, APPLY_BELOW, APPLY_PLAIN, resolve
from app.machine.program import decode
from app.oracles.sets import EMPTY, OracleBlocked, restrict

logger = logging.getLogger(__name__)

OracleFn = Callable[[int], int]


class RunStatus(str, Enum):
    HALTED = "halted"
    RUNNING = "still-running"
    BLOCKED = "oracle-blocked"


@dataclass(frozen=True, slots=True)
class Outcome:
    status: RunStatus
    value: Optional[int] = None
    steps: int = 0
    use: int = 0
    blocked_at: Optional[int] = None

    @property
    def halted(self) -> bool:
        return self.status is RunStatus.HALTED

    def within(self, budget: int) -> "Outcome":
        """This outcome as seen by a run with a smaller budget."""
        if self.halted and self.steps > budget:
            return Outcome(RunStatus.RUNNING, steps=budget, use=self.use)
        return self


class OutOfSteps(Exception):
    """Internal signal: the meter ran out. Never escapes `run`."""


class Meter:
    __slots__ = ("budget", "used")

    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0

    @property
    def remaining(self) -> int:
        return self.budget - self.used

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.budget:
            self.used = self.budget
            raise OutOfSteps()

    def exhaust(self) -> None:
        self.used = self.budget
        raise OutOfSteps()


class TrackingOracle:
    __slots__ = ("base", "top")

    def __init__(self, base: OracleFn):
        self.base = base
        self.top = -1

    def __call__(self, position: int) -> int:
        if position > self.top:
            self.top = position
        return self.base(position)

    @property
    def use(self) -> int:
        return self.top + 1


_local = threading.local()


def _depth() -> int:
    return getattr(_local, "depth", 0)


class Context:
    """What a native procedure sees of the running machine."""

    __slots__ = ("meter", "oracle")

    def __init__(self, meter: Meter, oracle: OracleFn):
        self.meter = meter
        self.oracle = oracle

    def query(self, position: int) -> int:
        return self.oracle(position)

    def charge(self, steps: int) -> None:
        if steps > 0:
            self.meter.tick(steps)

    @property
    def remaining(self) -> int:
        return self.meter.remaining

    def diverge(self) -> int:
        """The computation never halts."""
        self.meter.exhaust()
        return 0

    def exhaust(self) -> int:
        """No answer within the remaining budget."""
        self.meter.exhaust()
        return 0

    def call(self, e: int, x: int, oracle: Optional[OracleFn] = None) -> int:
        """Φ_e(x) on the shared meter, with the current oracle by default."""
        return _execute(e, x, self.meter, self.oracle if oracle is None else oracle)

    def simulate(self, e: int, x: int, budget: int, oracle: OracleFn = EMPTY) -> Outcome:
        """An independent sub-run with its own meter."""
        return run(e, x, budget, oracle)


def _execute(e: int, x: int, meter: Meter, oracle: OracleFn) -> int:
    depth = _depth() + 1
    if depth > settings.MAX_CALL_DEPTH:
        meter.exhaust()
    _local.depth = depth
    try:
        return _loop(e, x, meter, oracle)
    finally:
        _local.depth = depth - 1


def _loop(e: int, x: int, meter: Meter, oracle: OracleFn) -> int:
    stack: list[Tuple] = []
    code = decode(e)
    pc = 0
    regs: Dict[int, int] = defaultdict(int)
    regs[0] = x
    tick = meter.tick
    while True:
        tick()
        if pc >= len(code):
            op = Opcode.HALT
            args = ()
        else:
            instr = code[pc]
            op = instr.op
            args = instr.args
        if op is Opcode.HALT:
            value = regs[0]
            if not stack:
                return value
            code, pc, regs, oracle, dest = stack.pop()
            regs[dest] = value
        elif op is Opcode.INC:
            regs[args[0]] += 1
            pc += 1
        elif op is Opcode.DECJZ:
            r, target = args
            if regs[r] == 0:
                if target == pc:
                    # the machine state is a fixed point of this step
                    meter.exhaust()
                pc = target
            else:
                regs[r] -= 1
                pc += 1
        elif op is Opcode.QRY:
            regs[args[1]] = oracle(regs[args[0]])
            pc += 1
        elif op is Opcode.SET:
            regs[args[0]] = args[1]
            pc += 1
        elif op is Opcode.PAIR:
            regs[args[0]] = pair(regs[args[1]], regs[args[2]])
            pc += 1
        else:
            pid, ra, rd = args
            arg = regs[ra]
            if pid in (APPLY, APPLY_BELOW, APPLY_PLAIN):
                target_e, inner = unpair(arg)
                if pid == APPLY:
                    callee_oracle = oracle
                elif pid == APPLY_PLAIN:
                    callee_oracle = EMPTY
                else:
                    bound, inner = unpair(inner)
                    callee_oracle = restrict(oracle, bound)
                stack.append((code, pc + 1, regs, oracle, rd))
                code = decode(target_e)
                pc = 0
                regs = defaultdict(int)
                regs[0] = inner
                oracle = callee_oracle
            else:
                regs[rd] = resolve(pid)(Context(meter, oracle), arg)
                pc += 1


def run(e: int, x: int, budget: int, oracle: OracleFn = EMPTY) -> Outcome:
    """
    Run program e on input x for at most `budget` steps.

    Args:
        e: Program index.
        x: Input, placed in r0.
        budget: Step budget, s >= 0.
        oracle: Oracle answering QRY; the empty set by default.

    Returns:
        Outcome: halted (value, steps, use), still-running or oracle-blocked.

    Example:
        >>> run(1, 5, 10).value
        5
    """
    meter = Meter(max(budget, 0))
    tracker = TrackingOracle(oracle)
    try:
        value = _execute(e, x, meter, tracker)
    except OutOfSteps:
        return Outcome(RunStatus.RUNNING, steps=meter.budget, use=tracker.use)
    except OracleBlocked as blocked:
        return Outcome(RunStatus.BLOCKED, steps=meter.used, use=tracker.use,
                       blocked_at=blocked.position)
    return Outcome(RunStatus.HALTED, value=value, steps=meter.used, use=tracker.use)


class HaltingCache:
    """
    LRU memo of oracle-free runs keyed by (e, x), safe to share between threads.

    A miss reruns with at least twice the largest budget tried so far, and
    every answer is cut back to the budget asked for, so callers see exactly
    what run(e, x, budget) would return. Runs happen outside the lock; the
    least recently used entries go once more than `limit` are held.
    """

    def __init__(self, limit: int):
        self.limit = limit
        self._entries: "OrderedDict[Tuple[int, int], Tuple[int, Outcome]]" = OrderedDict()
        self._lock = threading.Lock()

    def converge(self, e: int, x: int, budget: int) -> Outcome:
        key = (e, x)
        with self._lock:
            entry = self._entries.get(key)
            if entry is not None:
                self._entries.move_to_end(key)
        if entry is not None:
            tried, outcome = entry
            if outcome.halted or budget <= tried:
                return outcome.within(budget) if outcome.halted else Outcome(
                    RunStatus.RUNNING, steps=budget)
            budget_to_try = max(budget, 2 * tried)
        else:
            budget_to_try = budget
        outcome = run(e, x, budget_to_try)
        with self._lock:
            current = self._entries.get(key)
            if current is None or current[0] < budget_to_try:
                self._entries[key] = (budget_to_try, outcome)
            self._entries.move_to_end(key)
            while len(self._entries) > self.limit:
                self._entries.popitem(last=False)
        if outcome.halted:
            return outcome.within(budget)
        return Outcome(RunStatus.RUNNING, steps=budget)

    def forget(self, e: int, x: int) -> None:
        """Drop (e, x); for programs whose behavior the owner of this cache extends."""
        with self._lock:
            self._entries.pop((e, x), None)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()

    def __len__(self) -> int:
        return len(self._entries)


HALTING = HaltingCache(settings.CACHE_LIMIT)

_SCOPED: ContextVar[Optional[HaltingCache]] = ContextVar("halting_cache", default=None)


def halting_cache() -> HaltingCache:
    """The cache converge uses here: the innermost halting_scope, else HALTING."""
    scoped = _SCOPED.get()
    return HALTING if scoped is None else scoped


@contextmanager
def halting_scope(cache: Optional[HaltingCache] = None) -> Iterator[HaltingCache]:
    """
    Route converge through `cache`, a fresh one by default, inside the block.

    Constructions whose programs change behavior while they run keep their
    runs in a cache of their own and never touch HALTING.
    """
    cache = HaltingCache(settings.CACHE_LIMIT) if cache is None else cache
    token = _SCOPED.set(cache)
    try:
        yield cache
    finally:
        _SCOPED.reset(token)


def converge(e: int, x: int, budget: int) -> Outcome:
    """φ_{e,budget}(x) through the current halting cache."""
    return halting_cache().converge(e, x, budget)


def phi(e: int, x: int, budget: Optional[int] = None) -> Optional[int]:
    """φ_e(x) if it halts within the budget, else None."""
    outcome = converge(e, x, settings.RUN_BUDGET if budget is None else budget)
    return outcome.value if outcome.halted else None
