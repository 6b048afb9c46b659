# app/machine/natives.py
"""Native procedures of the machine itself: projections, currying, set oracles."""

from app.machine.coding import decode_seq, unpair
from app.machine.interpreter import Context, converge
from app.machine.procedures import split_params
from app.oracles.sets import EMPTY, FiniteSetOracle


def proc_fst(ctx: Context, arg: int) -> int:
    return unpair(arg)[0]


def proc_snd(ctx: Context, arg: int) -> int:
    return unpair(arg)[1]


def proc_smn(ctx: Context, arg: int) -> int:
    from app.machine.transforms import smn

    e, y = unpair(arg)
    return smn(e, y)


def proc_apply_set(ctx: Context, arg: int) -> int:
    """⟨e, ⟨d, x⟩⟩ ↦ Φ_e^D(x) with D the finite set coded by d."""
    e, rest = unpair(arg)
    d, x = unpair(rest)
    members = decode_seq(d)
    if members is None:
        return ctx.diverge()
    return ctx.call(e, x, FiniteSetOracle(frozenset(members)))


def proc_empty_jump_search(ctx: Context, arg: int) -> int:
    """
    Halts iff x ∈ ∅^b: some i ≤ x has φ_i(x)↓, then φ_x(x)↓.

    The search over i is dovetailed; the first stage at which a bound
    converges is charged before φ_x(x) runs on the shared meter.
    """
    params, _ = split_params(arg, 1)
    if params is None:
        return ctx.diverge()
    (x,) = params
    horizon = ctx.remaining
    first = None
    for i in range(x + 1):
        outcome = converge(i, x, horizon)
        if outcome.halted and (first is None or outcome.steps < first):
            first = outcome.steps
            if first == 1:
                break
    if first is None:
        return ctx.exhaust()
    ctx.charge(first)
    return ctx.call(x, x, EMPTY)
