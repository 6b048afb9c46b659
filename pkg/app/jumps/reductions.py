# app/jumps/reductions.py
"""
Reductions Between Jump Operators

Explicit index constructions relating the jump variants, ∅′ and the
truth-table jumps.

Key Concepts:
- k(i, j): φ_{k(i,j)}(x) = φ_i(j) for every x.
- g(⟨e,i,j⟩) = pad(G_{e,i,j}, k(i, j)) with Φ^C_G(x) = Φ_e^{C↾φ_i(j)}(j), so
  ⟨e,i,j⟩ ∈ A^{b0} iff g(⟨e,i,j⟩) ∈ A^b, with k(i, j) ≤ g as the bound index.
- x ∈ A^b iff some ⟨x, i, x⟩, i ≤ x, is in A^{b0}: a disjunctive tt-reduction.
- Order preservation: a bT reduction (Ψ, f) of A to B gives a 1-reduction
  of A^{b0} to B^{b0}.
- A_tt ≤_1 A^{b0} from any bT reduction of A^{tt} to A.
- decide_b answers A^b(x) from A and a stage approximation of ∅′.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

from app.core.config import settings
from app.jumps.hints import BoundHints, bound_hints
from app.machine.coding import encode_seq, triple, untriple
from app.machine.instructions import CALL, DECJZ, HALT, Opcode, PAIR, QRY, SET
from app.machine.interpreter import Context, converge
from app.machine.procedures import split_params
from app.machine.program import decode, encode
from app.machine.transforms import compose_programs, constant_program, pad, parametric
from app.oracles.functionals import BTWitness
from app.oracles.halting import HaltingApproximation
from app.oracles.sets import EMPTY, FiniteSetOracle, members_below, restrict
from app.oracles.truth_tables import TTCondition

logger = logging.getLogger(__name__)

OracleFn = Callable[[int], int]


def k_index(i: int, j: int) -> int:
    """Index of x ↦ φ_i(j)."""
    return encode((SET(1, j), SET(2, i), PAIR(0, 2, 1), CALL("apply_plain", 0, 0), HALT()))


# A^{b0} ≤_1 A^b ------------------------------------------------------------


def reduce_b0_to_b(code: int) -> int:
    """
    g(⟨e,i,j⟩), a 1-reduction of A^{b0} to A^b for every A.

    The program reads b = φ_{k(i,j)}(x) and runs Φ_e^{C↾b}(j); k(i, j) is the
    bound index, see b0_to_b_hints.
    """
    e, i, j = untriple(code)
    k = k_index(i, j)
    body = encode((
        SET(1, k), PAIR(2, 1, 0), CALL("apply_plain", 2, 3),
        SET(1, j), PAIR(3, 3, 1),
        SET(1, e), PAIR(0, 1, 3), CALL("apply_below", 0, 0),
        HALT(),
    ))
    return pad(body, k)


def b0_to_b_hints(codes: Iterable[int]) -> BoundHints:
    """k(i, j) as the bound index of g(⟨e,i,j⟩), for each code."""
    return bound_hints((reduce_b0_to_b(c), (k_index(*untriple(c)[1:]),)) for c in codes)


# A^b ≤_tt A^{b0} -----------------------------------------------------------


@dataclass(frozen=True)
class DisjunctiveReduction:
    """x ↦ the positions ⟨x, i, x⟩, i ≤ x, read with an OR table."""

    def queries(self, x: int) -> Tuple[int, ...]:
        return tuple(triple(x, i, x) for i in range(x + 1))

    def condition(self, x: int) -> TTCondition:
        return TTCondition.from_function(self.queries(x), any)

    def evaluate(self, x: int, oracle: OracleFn) -> int:
        return 1 if any(oracle(q) for q in self.queries(x)) else 0


def reduce_b_to_b0() -> DisjunctiveReduction:
    return DisjunctiveReduction()


# Order preservation --------------------------------------------------------


def _uncompose(outer: int, index: int) -> Optional[int]:
    """i when index = compose_programs(outer, i)."""
    code = decode(index)
    if not code or code[0].op is not Opcode.SET or code[0].args[0] != 1:
        return None
    inner = code[0].args[1]
    return inner if compose_programs(outer, inner) == index else None


@dataclass(frozen=True)
class OrderPreservingReduction:
    """
    The 1-reduction ⟨e,i,j⟩ ↦ ⟨g(⟨e,h(i),j⟩), h(i), j⟩ of A^{b0} to B^{b0}.

    φ_{h(i)} = f ∘ φ_i. The g program recomputes A↾φ_i(j) from B through Ψ,
    reading B below f(y) for each y, so f is assumed nondecreasing.
    """
    psi: int
    f: int

    def h(self, i: int) -> int:
        return compose_programs(self.f, i)

    def g(self, code: int) -> int:
        e, k, j = untriple(code)
        return parametric("order_g", e, k, j, self.psi, self.f)

    def __call__(self, code: int) -> int:
        e, i, j = untriple(code)
        k = self.h(i)
        return triple(self.g(triple(e, k, j)), k, j)


def order_preserving_reduce(psi: int, f: int) -> OrderPreservingReduction:
    return OrderPreservingReduction(psi, f)


def proc_order_g(ctx: Context, arg: int) -> int:
    params, _ = split_params(arg, 5)
    if params is None:
        return ctx.diverge()
    e, k, j, psi, f = params
    i = _uncompose(f, k)
    if i is None:
        return ctx.diverge()
    b = ctx.call(i, j, EMPTY)
    members = set()
    for y in range(b + 1):
        fy = ctx.call(f, y, EMPTY)
        if ctx.call(psi, y, restrict(ctx.oracle, fy)):
            members.add(y)
    return ctx.call(e, j, FiniteSetOracle(frozenset(members)))


# A_tt ≤_1 A^{b0} -----------------------------------------------------------


@dataclass(frozen=True)
class TruthTableJumpReduction:
    """x ↦ ⟨J(x), H(x), 0⟩ built from a bT reduction (Φ_k, f) of A^{tt} to A."""
    k_tt: BTWitness

    def H(self, x: int) -> int:
        """φ_{H(x)}(z) = f(φ_x(x))."""
        return encode((
            SET(1, x), PAIR(2, 1, 1), CALL("apply_plain", 2, 2),
            SET(1, self.k_tt.bound), PAIR(0, 1, 2), CALL("apply_plain", 0, 0),
            HALT(),
        ))

    def J(self, x: int) -> int:
        """Φ^C_{J(x)}(z) converges iff φ_x(x)↓ = c and Φ_k^C(c) ≠ 0."""
        return encode((
            SET(1, x), PAIR(2, 1, 1), CALL("apply_plain", 2, 2),
            SET(1, self.k_tt.functional), PAIR(0, 1, 2), CALL("apply", 0, 3),
            DECJZ(3, 8), HALT(), DECJZ(4, 8),
        ))

    def __call__(self, x: int) -> int:
        return triple(self.J(x), self.H(x), 0)


def reduce_Att_to_b0(k_tt: BTWitness) -> TruthTableJumpReduction:
    return TruthTableJumpReduction(k_tt)


# ∅^b ≡_1 ∅′ and A ≤_1 A^b ----------------------------------------------------


@dataclass(frozen=True)
class HaltingTranslations:
    def to_halting(self, x: int) -> int:
        """x ∈ ∅^b iff this index is in ∅′."""
        return parametric("empty_jump_search", x)

    def from_halting(self, x: int) -> int:
        """x ∈ ∅′ iff this index is in ∅^b."""
        return k_index(x, x)


def halting_translations() -> HaltingTranslations:
    return HaltingTranslations()


def embed_into_jump(x: int) -> int:
    """Index y with y ∈ A^b iff x ∈ A: query x, halt on 1, loop on 0."""
    return encode((SET(1, x), QRY(1, 2), DECJZ(2, 2), HALT()))


def embed_hints(xs: Iterable[int]) -> BoundHints:
    """The constant x + 1 as the bound index of embed_into_jump(x)."""
    return bound_hints((embed_into_jump(x), (constant_program(x + 1),)) for x in xs)


# A^b ≤_T A ⊕ ∅′ ------------------------------------------------------------


def bounded_query_position(x: int, members) -> int:
    """∅′ position of the oracle-free program running Φ_x^D(x), D the given finite set."""
    d = encode_seq(sorted(members))
    return encode((
        SET(1, x), SET(2, d), PAIR(2, 2, 1), PAIR(0, 1, 2),
        CALL("apply_set", 0, 0), HALT(),
    ))


@dataclass(frozen=True)
class TuringDecision:
    x: int
    member: bool
    fragile: bool
    queries: Tuple[int, ...]


def decide_b(A: OracleFn, stage: int, x: int) -> TuringDecision:
    """
    Decide x ∈ A^b from A and the stage approximation K_s of ∅′.

    For each i ≤ x: ask ∅′ whether φ_i(x) converges; if it does, with value b,
    ask whether Φ_x^{A↾b}(x) converges. A K_s answer of 0 that becomes 1 at
    stage s·ESCALATION marks the decision fragile.
    """
    current = HaltingApproximation(stage)
    later = HaltingApproximation(stage * settings.ESCALATION)
    queries = []
    fragile = False
    for i in range(x + 1):
        position = k_index(i, x)
        queries.append(position)
        if not current(position):
            fragile = fragile or bool(later(position))
            continue
        bound = converge(i, x, stage)
        if not bound.halted:
            continue
        position = bounded_query_position(x, members_below(A, bound.value))
        queries.append(position)
        if current(position):
            return TuringDecision(x, True, fragile, tuple(queries))
        fragile = fragile or bool(later(position))
    return TuringDecision(x, False, fragile, tuple(queries))
