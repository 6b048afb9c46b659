# app/ershov/transforms.py
"""
Witness Transformations

Two ways of building a new α-c.e. witness χ from an old one.

downward_transform: A ≤_bT B by (Φ, f) and B is ω^k-c.e. by ψ. Once f(n) has
converged and every α_i (i ≤ f(n)) is defined, and again whenever one of them
drops, χ is defined at α_0 +_c ... +_c α_{f(n)} with the value Φ^σ(n), where
σ is the current guess at B on [0, f(n)]. The natural sum strictly decreases
with every definition.

jump_transform: A is ω^k-c.e. by ψ; χ makes A^b ω^{k+1}-c.e. χ(n, ω^k·n) = 0
first. The bookkeeping pair (l, m) starts at (n, -1); each time some φ_i(n),
1 <= i <= n, converges with a value above m (i above the width is only
watched from its admission stage on), l drops by one and m takes that
value. With α_0 ... α_m the current guesses, rank r(l, α...) + 2 is set to 0
whenever the guesses move, and r(l, α...) + 1 is set to 1 as soon as Φ_n(n)
converges on the guess at A below one of the observed bounds.

Both χ programs are native procedures that replay these definitions up to
their remaining budget: χ(n, γ) halts after `stage` steps when γ is defined
at that stage.
"""

import logging
from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

from app.core.config import settings
from app.core.memo import HorizonMemo
from app.jumps.hints import admission_stage
from app.machine.interpreter import Context, converge, run
from app.machine.procedures import split_params
from app.machine.transforms import parametric
from app.machine.coding import unpair
from app.ordinals.cnf import (
    OrdinalCNF, natural_sum, ordinal_code, ordinal_decode, rank_r,
)
from app.oracles.sets import FiniteSetOracle
from app.ershov.witness import AlphaCEWitness, MindChange, mind_changes, reading_at

logger = logging.getLogger(__name__)


class NonTotalReductionError(ValueError):
    """Raised when the bound f of a reduction does not converge within budget."""


@dataclass(frozen=True, slots=True)
class Definition:
    stage: int
    ordinal: OrdinalCNF
    value: Optional[int] = None
    oracle: FrozenSet[int] = frozenset()


class StagedMemo(HorizonMemo):
    """Definition lists in stage order, cut back to the horizon asked for."""

    def __init__(self, compute: Callable):
        super().__init__(compute, settings.MEMO_LIMIT)

    def get(self, key: tuple, horizon: int) -> list:
        _, definitions = self.lookup(key, horizon)
        return [d for d in definitions if d.stage <= horizon]


def _lookup(ctx: Context, definitions: Sequence[Definition], gamma: OrdinalCNF) -> Optional[Definition]:
    for d in definitions:
        if d.ordinal == gamma:
            return d
    if definitions and definitions[-1].ordinal < gamma:
        # definitions only decrease, so gamma is never defined
        ctx.diverge()
    return None


# Downward closure ----------------------------------------------------------


def _downward(key: tuple, horizon: int) -> List[Definition]:
    (phi, f, psi_b, bound_b), n = key
    source = AlphaCEWitness(psi_b, bound_b)
    bound = converge(f, n, horizon)
    if not bound.halted:
        return []
    histories = [mind_changes(source, i, horizon) for i in range(bound.value + 1)]
    stages = sorted({bound.steps} | {c.stage for h in histories for c in h if c.stage > bound.steps})
    definitions: List[Definition] = []
    previous: Optional[Tuple[OrdinalCNF, ...]] = None
    for s in stages:
        readings = [reading_at(h, s) for h in histories]
        if any(r is None for r in readings):
            continue
        ordinals = tuple(r.ordinal for r in readings)
        if previous is None or ordinals != previous:
            sigma = frozenset(i for i, r in enumerate(readings) if r.value)
            definitions.append(Definition(s, natural_sum(ordinals), None, sigma))
            previous = ordinals
    return definitions


DOWNWARD = StagedMemo(_downward)


def downward_transform(phi: int, f: int, source: AlphaCEWitness, k: int) -> AlphaCEWitness:
    """
    χ witnessing that A ≤_bT B is ω^k-c.e. when B is.

    Args:
        phi: Index of the functional Φ.
        f: Index of the total bound.
        source: ω^k-c.e. witness ψ of B.
        k: Exponent of the bound, k >= 1.

    Raises:
        ValueError: If the source bound exceeds ω^k.
    """
    if k < 1 or not source.bound <= OrdinalCNF.omega_power(k):
        raise ValueError(f"source bound {source.bound} is not at most w^{k}")
    psi = parametric("downward_chi", phi, f, source.psi, ordinal_code(source.bound))
    return AlphaCEWitness(psi, OrdinalCNF.omega_power(k))


def downward_definitions(phi: int, f: int, source: AlphaCEWitness, n: int,
                         horizon: int) -> List[Definition]:
    return DOWNWARD.get(((phi, f, source.psi, source.bound), n), horizon)


def proc_downward_chi(ctx: Context, arg: int) -> int:
    params, x = split_params(arg, 4)
    if params is None:
        return ctx.diverge()
    phi, f, psi_b, bound_code = params
    bound_b = ordinal_decode(bound_code)
    n, code = unpair(x)
    gamma = ordinal_decode(code)
    if bound_b is None or gamma is None:
        return ctx.diverge()
    definitions = DOWNWARD.get(((phi, f, psi_b, bound_b), n), ctx.remaining)
    found = _lookup(ctx, definitions, gamma)
    if found is None:
        return ctx.exhaust()
    ctx.charge(found.stage)
    return ctx.call(phi, n, FiniteSetOracle(found.oracle))


# Jump ----------------------------------------------------------------------


@dataclass(frozen=True)
class JumpBookkeeping:
    definitions: Tuple[Definition, ...]
    decrements: Tuple[int, ...]


def _jump(key: tuple, horizon: int) -> JumpBookkeeping:
    (psi_a, bound_a, k, width), n = key
    source = AlphaCEWitness(psi_a, bound_a)
    definitions = [Definition(0, OrdinalCNF.omega_power(k, n), 0)]
    defined = {definitions[0].ordinal}

    def define(stage: int, ordinal: OrdinalCNF, value: int) -> None:
        if ordinal not in defined:
            defined.add(ordinal)
            definitions.append(Definition(stage, ordinal, value))

    # index 0 never converges, so at most n decrements; i above width enters late
    convergences = []
    for i in range(1, n + 1):
        admitted = admission_stage(i, width)
        if admitted > horizon:
            break
        outcome = converge(i, n, horizon)
        if outcome.halted:
            convergences.append((max(outcome.steps, admitted), outcome.value))
    top = max((v for _, v in convergences), default=-1)
    histories: List[Tuple[MindChange, ...]] = [
        mind_changes(source, j, horizon) for j in range(top + 1)
    ]
    stages = sorted({t for t, _ in convergences} | {c.stage for h in histories for c in h})

    l, m = n, -1
    bounds: set = set()
    decrements: List[int] = []
    rank: Optional[OrdinalCNF] = None
    guesses: Optional[Tuple[OrdinalCNF, ...]] = None
    sigma: FrozenSet[int] = frozenset()
    wrote_one = False
    for idx, s in enumerate(stages):
        arrived = [v for t, v in convergences if t == s]
        bounds.update(arrived)
        grew = bool(arrived) and max(arrived) > m
        if grew:
            l -= 1
            m = max(arrived)
            decrements.append(s)
        if m < 0:
            continue
        readings = [reading_at(histories[j], s) for j in range(m + 1)]
        if any(r is None for r in readings):
            rank = None
            continue
        ordinals = tuple(r.ordinal for r in readings)
        if grew or rank is None or ordinals != guesses:
            rank = rank_r(k, l, ordinals)
            guesses = ordinals
            sigma = frozenset(j for j, r in enumerate(readings) if r.value)
            define(s, rank + 2, 0)
            wrote_one = False
        if wrote_one:
            continue
        end = stages[idx + 1] - 1 if idx + 1 < len(stages) else horizon
        first = None
        for b in sorted(bounds):
            outcome = run(n, n, end, FiniteSetOracle(sigma).below(b))
            if outcome.halted:
                t = max(s, outcome.steps)
                if first is None or t < first:
                    first = t
        if first is not None and first <= end:
            define(first, rank + 1, 1)
            wrote_one = True
    return JumpBookkeeping(tuple(definitions), tuple(decrements))


class _JumpMemo(StagedMemo):
    def get(self, key: tuple, horizon: int) -> JumpBookkeeping:
        _, book = self.lookup(key, horizon)
        return JumpBookkeeping(
            tuple(d for d in book.definitions if d.stage <= horizon),
            tuple(s for s in book.decrements if s <= horizon),
        )


JUMP = _JumpMemo(_jump)


def jump_transform(source: AlphaCEWitness, k: int, width: Optional[int] = None) -> AlphaCEWitness:
    """
    χ witnessing that A^b is ω^{k+1}-c.e. when A is ω^k-c.e.

    Bound indices i ≤ n are tried from stage admission_stage(i, width) on,
    the schedule the bounded-jump enumerators use.

    Raises:
        ValueError: If k < 1 or the source bound exceeds ω^k.
    """
    if k < 1 or not source.bound <= OrdinalCNF.omega_power(k):
        raise ValueError(f"source bound {source.bound} is not at most w^{k}")
    width = settings.JUMP_WIDTH if width is None else width
    psi = parametric("jump_chi", source.psi, ordinal_code(source.bound), k, width)
    return AlphaCEWitness(psi, OrdinalCNF.omega_power(k + 1))


def jump_bookkeeping(source: AlphaCEWitness, k: int, n: int, horizon: int,
                     width: Optional[int] = None) -> JumpBookkeeping:
    width = settings.JUMP_WIDTH if width is None else width
    return JUMP.get(((source.psi, source.bound, k, width), n), horizon)


def proc_jump_chi(ctx: Context, arg: int) -> int:
    params, x = split_params(arg, 4)
    if params is None:
        return ctx.diverge()
    psi_a, bound_code, k, width = params
    bound_a = ordinal_decode(bound_code)
    n, code = unpair(x)
    gamma = ordinal_decode(code)
    if bound_a is None or gamma is None or k < 1:
        return ctx.diverge()
    book = JUMP.get(((psi_a, bound_a, k, width), n), ctx.remaining)
    found = _lookup(ctx, book.definitions, gamma)
    if found is None:
        return ctx.exhaust()
    ctx.charge(found.stage)
    return found.value
