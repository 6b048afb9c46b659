# app/ershov/reductions.py
"""
1-Reductions of ω^k-c.e. Sets into ∅^{kb}

For a witness ψ with bound ω^k the reduction f sends n to a program that
converges, with ∅^{kb} as its oracle, exactly when n is in the limit set.
f is uniform in ψ: every helper below is a parametric program over
(ψ, code(α), ...).

Key Concepts (levels are the coefficients of ω^{k-1}):
- g(n): level of the first observation of ψ(n, ·).
- p(n): least level on which ψ(n, ·) converges at all.
- r̃(n, i): a position in every jump C^b that is a member iff level i has a
  convergence. The program ignores its oracle, so C^b contains it exactly when
  it halts.
- k = 2: q(i, n) is the units part of the first convergence on level i and
  h̃(i, x, n) is a position that is a member iff level i converges at some
  ω·i + m with m ≤ x. φ_{v(i,n)} outputs h̃(i, q(i, n), n) + r̃(n, g(n)),
  which bounds every position Φ_{f(n)} reads.
- k ≥ 3: χ_i(n, α) = ψ(n, ω^{k-1}·i + α) is sliced out, restricted to n, and
  reduced one level down; e_i(n) is that reduction at n. φ_{v(i,n)} outputs
  max(e_i(n), r̃(n, g(n))).
- u(n) = max v(i, n) over i ≤ g(n) and f(n) = pad(F_n, u(n)) > u(n).

Positions r̃ and h̃ increase with their last argument, so reading a truncated
∅^{kb} gives either the right answer or divergence.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from app.core.config import settings
from app.jumps.hints import BoundHints, bound_hints, merge_hints
from app.machine.coding import pair, unpair
from app.machine.interpreter import Context, converge
from app.machine.procedures import split_params
from app.machine.transforms import pad, parametric
from app.oracles.sets import EMPTY
from app.ordinals.cnf import OrdinalCNF, level_ordinal, ordinal_code, ordinal_decode
from app.ershov.witness import (
    AlphaCEWitness, UnresolvedWitnessError, bit, earliest_observation, first_observation,
    level_observation, observations, on_level,
)

logger = logging.getLogger(__name__)


def _bound_code(w: AlphaCEWitness) -> int:
    return ordinal_code(w.bound)


def _witness(psi: int, bound_code: int, k: int) -> Optional[AlphaCEWitness]:
    bound = ordinal_decode(bound_code)
    if bound is None or k < 2 or not bound <= OrdinalCNF.omega_power(k):
        return None
    return AlphaCEWitness(psi, bound)


def level_position(w: AlphaCEWitness, k: int, n: int, i: int) -> int:
    """r̃(n, i) for levels at ω^{k-1}."""
    return parametric("level_search", w.psi, _bound_code(w), k - 1, n, i)


def below_position(w: AlphaCEWitness, n: int, i: int, x: int) -> int:
    """h̃(i, x, n), levels at ω."""
    return parametric("level_search_below", w.psi, _bound_code(w), n, i, x)


def slice_witness(w: AlphaCEWitness, k: int, i: int, n: int) -> AlphaCEWitness:
    """χ_i restricted to n: ψ(n, ω^{k-1}·i + α) at n and 0 elsewhere, bound ω^{k-1}."""
    return AlphaCEWitness(
        parametric("slice_witness", w.psi, _bound_code(w), k - 1, i, n),
        OrdinalCNF.omega_power(k - 1),
    )


@dataclass(frozen=True, slots=True)
class ReductionValue:
    value: int
    stage: int
    bounds: Tuple[int, ...]


def reduction_value(w: AlphaCEWitness, k: int, n: int, horizon: int) -> Optional[ReductionValue]:
    """
    f(n) for the reduction of w into ∅^{kb}, read off the first observation.

    Returns:
        The value with the stage of the observation it needed, or None when
        nothing is observed within the horizon.
    """
    first = first_observation(w, n, horizon)
    if first is None:
        return None
    g = first.ordinal.coefficient(k - 1)
    code = _bound_code(w)
    if k == 2:
        bounds = tuple(parametric("erbase_v", w.psi, code, i, n) for i in range(g + 1))
        body = parametric("erbase_f", w.psi, code, n)
    else:
        bounds = tuple(parametric("inductive_v", w.psi, code, k, i, n) for i in range(g + 1))
        body = parametric("inductive_f", w.psi, code, k, n)
    return ReductionValue(pad(body, max(bounds)), first.stage, bounds)


def reduction_hints(w: AlphaCEWitness, k: int, n: int, horizon: int) -> BoundHints:
    """
    v(i, n), i ≤ g(n), as the bound indices of f(n); for k ≥ 3 also the hints
    of every lower e_i(n), which the enumerator of the level below needs.
    """
    found = reduction_value(w, k, n, horizon)
    if found is None:
        return {}
    maps = [bound_hints([(found.value, found.bounds)])]
    if k >= 3:
        maps.extend(reduction_hints(slice_witness(w, k, i, n), k - 1, n, horizon)
                    for i in range(len(found.bounds)))
    return merge_hints(*maps)


@dataclass(frozen=True)
class ErshovReduction:
    """
    The reduction of an ω^k-c.e. set into ∅^{kb} with the helpers that build it.

    Python-side helpers evaluate at `budget`; partial ones return None where
    nothing is observed.
    """
    witness: AlphaCEWitness
    k: int
    budget: int

    @property
    def index(self) -> int:
        """A program computing f."""
        return parametric("ershov_reduction", self.witness.psi, _bound_code(self.witness), self.k)

    @property
    def l(self) -> Optional[int]:
        """Index of m ↦ p(m) read from the oracle (k ≥ 3)."""
        if self.k < 3:
            return None
        return parametric("inductive_p", self.witness.psi, _bound_code(self.witness), self.k)

    def g(self, n: int) -> int:
        first = first_observation(self.witness, n, self.budget)
        if first is None:
            raise UnresolvedWitnessError(
                f"{self.witness} has no observation at n={n} within {self.budget}"
            )
        return first.ordinal.coefficient(self.k - 1)

    def p(self, n: int) -> Optional[int]:
        levels = [ob.ordinal.coefficient(self.k - 1) for ob in observations(self.witness, n, self.budget)]
        return min(levels) if levels else None

    def q(self, i: int, n: int) -> Optional[int]:
        ob = level_observation(self.witness, n, i, self.k - 1, self.budget)
        return ob.ordinal.units if ob is not None else None

    def r_tilde(self, n: int, i: int) -> int:
        return level_position(self.witness, self.k, n, i)

    def h_tilde(self, i: int, x: int, n: int) -> int:
        return below_position(self.witness, n, i, x)

    def h(self, i: int, n: int) -> Optional[int]:
        q = self.q(i, n)
        return None if q is None else self.h_tilde(i, q, n)

    def r(self, n: int) -> int:
        return self.r_tilde(n, self.g(n))

    def v(self, i: int, n: int) -> int:
        code = _bound_code(self.witness)
        if self.k == 2:
            return parametric("erbase_v", self.witness.psi, code, i, n)
        return parametric("inductive_v", self.witness.psi, code, self.k, i, n)

    def v_value(self, i: int, n: int) -> Optional[int]:
        """φ_{v(i,n)}(0) within the budget."""
        outcome = converge(self.v(i, n), 0, self.budget)
        return outcome.value if outcome.halted else None

    def u(self, n: int) -> int:
        return max(self.v(i, n) for i in range(self.g(n) + 1))

    def e(self, i: int, n: int) -> Optional[int]:
        """e_i(n): the lower reduction of the i-th slice at n (k ≥ 3)."""
        if self.k < 3 or level_observation(self.witness, n, i, self.k - 1, self.budget) is None:
            return None
        inner = reduction_value(slice_witness(self.witness, self.k, i, n), self.k - 1, n, self.budget)
        return inner.value if inner is not None else None

    def f(self, n: int) -> int:
        found = reduction_value(self.witness, self.k, n, self.budget)
        if found is None:
            raise UnresolvedWitnessError(
                f"{self.witness} has no observation at n={n} within {self.budget}"
            )
        return found.value

    def hints(self, ns: Iterable[int]) -> BoundHints:
        return merge_hints(*(reduction_hints(self.witness, self.k, n, self.budget) for n in ns))


def _check(w: AlphaCEWitness, k: int) -> None:
    if k < 2:
        raise ValueError(f"reductions into jumps of the empty set need k >= 2, got {k}")
    if not w.bound <= OrdinalCNF.omega_power(k):
        raise ValueError(f"{w} is not an w^{k}-c.e. witness")


def erbase_reduce(w: AlphaCEWitness, budget: Optional[int] = None) -> ErshovReduction:
    """
    The 1-reduction of an ω²-c.e. set into ∅^{2b}.

    Args:
        w: Witness with bound at most ω².
        budget: Budget for the Python-side helpers; RUN_BUDGET by default.

    Raises:
        ValueError: If the bound exceeds ω².
    """
    _check(w, 2)
    return ErshovReduction(w, 2, settings.RUN_BUDGET if budget is None else budget)


def inductive_reduce(w: AlphaCEWitness, k: int, budget: Optional[int] = None) -> ErshovReduction:
    """The 1-reduction of an ω^k-c.e. set into ∅^{kb}; k = 2 is `erbase_reduce`."""
    _check(w, k)
    if k == 2:
        return erbase_reduce(w, budget)
    logger.debug("reduction of %s into the %d-th bounded jump", w, k)
    return ErshovReduction(w, k, settings.RUN_BUDGET if budget is None else budget)


# Native procedures ---------------------------------------------------------


def proc_level_search(ctx: Context, arg: int) -> int:
    """Halts at the first convergence on level i; the input is ignored."""
    params, _ = split_params(arg, 5)
    if params is None:
        return ctx.diverge()
    psi, bound_code, exponent, n, i = params
    w = _witness(psi, bound_code, exponent + 1)
    if w is None:
        return ctx.diverge()
    ob = level_observation(w, n, i, exponent, ctx.remaining)
    if ob is None:
        return ctx.exhaust()
    ctx.charge(ob.stage)
    return 0


def proc_level_search_below(ctx: Context, arg: int) -> int:
    """Halts at the first convergence at some ω·i + m with m ≤ x."""
    params, _ = split_params(arg, 5)
    if params is None:
        return ctx.diverge()
    psi, bound_code, n, i, x = params
    w = _witness(psi, bound_code, 2)
    if w is None:
        return ctx.diverge()
    ob = earliest_observation(w, n, ctx.remaining,
                              lambda alpha: on_level(alpha, i, 1) and alpha.units <= x)
    if ob is None:
        return ctx.exhaust()
    ctx.charge(ob.stage)
    return 0


def _first_level(ctx: Context, w: AlphaCEWitness, n: int, exponent: int) -> Optional[int]:
    first = first_observation(w, n, ctx.remaining)
    if first is None:
        return None
    ctx.charge(first.stage)
    return first.ordinal.coefficient(exponent)


def proc_erbase_v(ctx: Context, arg: int) -> int:
    """φ_{v(i,n)}(y) = h(i, n) + r(n)."""
    params, _ = split_params(arg, 4)
    if params is None:
        return ctx.diverge()
    psi, bound_code, i, n = params
    w = _witness(psi, bound_code, 2)
    if w is None:
        return ctx.diverge()
    g = _first_level(ctx, w, n, 1)
    if g is None:
        return ctx.exhaust()
    ob = level_observation(w, n, i, 1, ctx.remaining)
    if ob is None:
        return ctx.exhaust()
    ctx.charge(ob.stage)
    return below_position(w, n, i, ob.ordinal.units) + level_position(w, 2, n, g)


def proc_erbase_f(ctx: Context, arg: int) -> int:
    """
    Converges iff n is in the limit set, reading ∅^b from the oracle.

    x is the least level ≤ g(n) whose r̃ position is in the oracle, t the
    units part of the first convergence on level x, z the least m ≤ t whose
    h̃(x, m, n) is in the oracle; halt iff ψ(n, ω·x + z) = 1.
    """
    params, _ = split_params(arg, 3)
    if params is None:
        return ctx.diverge()
    psi, bound_code, n = params
    w = _witness(psi, bound_code, 2)
    if w is None:
        return ctx.diverge()
    g = _first_level(ctx, w, n, 1)
    if g is None:
        return ctx.exhaust()
    x = next((i for i in range(g + 1) if ctx.query(level_position(w, 2, n, i))), None)
    if x is None:
        return ctx.diverge()
    ob = level_observation(w, n, x, 1, ctx.remaining)
    if ob is None:
        return ctx.exhaust()
    ctx.charge(ob.stage)
    z = next((m for m in range(ob.ordinal.units + 1) if ctx.query(below_position(w, n, x, m))), None)
    if z is None:
        return ctx.diverge()
    value = ctx.call(psi, pair(n, ordinal_code(OrdinalCNF((z, x)))), EMPTY)
    return 0 if bit(value) else ctx.diverge()


def proc_slice_witness(ctx: Context, arg: int) -> int:
    params, x = split_params(arg, 5)
    if params is None:
        return ctx.diverge()
    psi, _, exponent, i, n0 = params
    m, code = unpair(x)
    alpha = ordinal_decode(code)
    if alpha is None or not alpha.below_power(exponent):
        return ctx.diverge()
    if m != n0:
        return 0
    return ctx.call(psi, pair(n0, ordinal_code(level_ordinal(exponent, i, alpha))), EMPTY)


def _slice_value(ctx: Context, w: AlphaCEWitness, k: int, i: int, n: int) -> Optional[int]:
    """e_i(n) on the shared meter; None when the budget runs out first."""
    level = level_observation(w, n, i, k - 1, ctx.remaining)
    if level is None:
        return None
    ctx.charge(level.stage)
    inner = reduction_value(slice_witness(w, k, i, n), k - 1, n, ctx.remaining)
    if inner is None:
        return None
    ctx.charge(inner.stage)
    return inner.value


def proc_inductive_v(ctx: Context, arg: int) -> int:
    """φ_{v(i,n)}(y) = max(e_i(n), r̃(n, g(n)))."""
    params, _ = split_params(arg, 5)
    if params is None:
        return ctx.diverge()
    psi, bound_code, k, i, n = params
    w = _witness(psi, bound_code, k)
    if w is None or k < 3:
        return ctx.diverge()
    e = _slice_value(ctx, w, k, i, n)
    if e is None:
        return ctx.exhaust()
    g = _first_level(ctx, w, n, k - 1)
    if g is None:
        return ctx.exhaust()
    return max(e, level_position(w, k, n, g))


def proc_inductive_p(ctx: Context, arg: int) -> int:
    """m ↦ the least level ≤ g(m) whose r̃ position is in the oracle."""
    params, m = split_params(arg, 3)
    if params is None:
        return ctx.diverge()
    psi, bound_code, k = params
    w = _witness(psi, bound_code, k)
    if w is None or k < 3:
        return ctx.diverge()
    g = _first_level(ctx, w, m, k - 1)
    if g is None:
        return ctx.exhaust()
    x = next((i for i in range(g + 1) if ctx.query(level_position(w, k, m, i))), None)
    return ctx.diverge() if x is None else x


def proc_inductive_f(ctx: Context, arg: int) -> int:
    """Converges iff Φ_l(n) converges to some p and e_p(n) is in the oracle."""
    params, _ = split_params(arg, 4)
    if params is None:
        return ctx.diverge()
    psi, bound_code, k, n = params
    w = _witness(psi, bound_code, k)
    if w is None or k < 3:
        return ctx.diverge()
    p = ctx.call(parametric("inductive_p", psi, bound_code, k), n)
    e = _slice_value(ctx, w, k, p, n)
    if e is None:
        return ctx.exhaust()
    return 0 if ctx.query(e) else ctx.diverge()


def proc_ershov_reduction(ctx: Context, arg: int) -> int:
    """n ↦ f(n)."""
    params, n = split_params(arg, 3)
    if params is None:
        return ctx.diverge()
    psi, bound_code, k = params
    w = _witness(psi, bound_code, k)
    if w is None:
        return ctx.diverge()
    found = reduction_value(w, k, n, ctx.remaining)
    if found is None:
        return ctx.exhaust()
    ctx.charge(found.stage)
    return found.value
