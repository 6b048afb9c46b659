# tests/unit/test_jump_reductions.py
"""
Unit Tests for the Reductions Between Jump Operators

Each test builds a reduction on a concrete program and checks both sides of
the equivalence it claims at a budget large enough for the small programs
involved.
"""

import pytest

from app.jumps.hints import NO_HINTS
from app.jumps.reductions import (
    b0_to_b_hints, bounded_query_position, decide_b, embed_hints, embed_into_jump, halting_translations, k_index,
    order_preserving_reduce, reduce_Att_to_b0, reduce_b0_to_b, reduce_b_to_b0,
)
from app.jumps.views import BoundedJump, JumpBudget, JumpEnumerator
from app.machine.coding import triple
from app.machine.corpus import DOUBLE_PLUS_ONE, DOUBLE_QUERY, HALT_IF_MEMBER, QUERY_INPUT, SUCCESSOR
from app.machine.interpreter import run
from app.machine.program import IDENTITY, LOOP_INDEX
from app.machine.transforms import constant_program, pad
from app.oracles.halting import HaltingApproximation
from app.oracles.sets import EMPTY, EVENS, PRIMES, finite
from app.oracles.truth_tables import canonical_tt_witness, singleton, tt_eval

PADDED_HALTER = pad(SUCCESSOR, 3)


def b_member(A, x: int, steps: int = 2000, hints=NO_HINTS) -> bool:
    return BoundedJump(A, JumpBudget(steps, hints=hints)).member(x) is not None


def b0_member(A, code: int, steps: int = 2000) -> bool:
    return JumpEnumerator.create("b0", A, JumpBudget(steps)).member(code) is not None


# ============================================================================
# Index helpers
# ============================================================================

def test_k_index_ignores_its_input() -> None:
    k = k_index(SUCCESSOR, 4)
    assert run(k, 0, 100).value == 5
    assert run(k, 99, 100).value == 5


def test_k_index_diverges_with_its_target() -> None:
    assert not run(k_index(LOOP_INDEX, 4), 0, 1000).halted


# ============================================================================
# A^{b0} ≤_1 A^b
# ============================================================================

@pytest.mark.parametrize(
    "code, A, expected",
    [
        (triple(QUERY_INPUT, SUCCESSOR, 3), EVENS, True),
        (triple(HALT_IF_MEMBER, SUCCESSOR, 3), EVENS, False),
        (triple(HALT_IF_MEMBER, SUCCESSOR, 3), finite({3}), True),
        (triple(QUERY_INPUT, LOOP_INDEX, 3), EVENS, False),
    ],
    ids=["total_functional", "non_member_loops", "member_halts", "divergent_bound"],
)
def test_reduce_b0_to_b(code: int, A, expected: bool) -> None:
    g = reduce_b0_to_b(code)
    assert b0_member(A, code) is expected
    assert b_member(A, g, hints=b0_to_b_hints([code])) is expected, "g disagrees with the b0 side"


def test_reduce_b0_to_b_hands_back_its_bound_hint() -> None:
    code = triple(QUERY_INPUT, SUCCESSOR, 3)
    g = reduce_b0_to_b(code)
    assert b0_to_b_hints([code]) == {g: frozenset({k_index(SUCCESSOR, 3)})}
    assert g > k_index(SUCCESSOR, 3)


def test_building_a_reduction_leaves_other_enumerators_alone() -> None:
    """A^b membership depends on the budget's hints only, not on what ran before."""
    code = triple(QUERY_INPUT, SUCCESSOR, 3)
    g = reduce_b0_to_b(code)
    before = BoundedJump(EVENS, JumpBudget(2000)).candidates(g)
    b0_to_b_hints([code])
    after = BoundedJump(EVENS, JumpBudget(2000)).candidates(g)
    assert after == before
    assert k_index(SUCCESSOR, 3) not in after


# ============================================================================
# A^b ≤_tt A^{b0}
# ============================================================================

def test_disjunctive_reduction_queries() -> None:
    reduction = reduce_b_to_b0()
    assert reduction.queries(0) == (0,)
    assert reduction.queries(2) == (triple(2, 0, 2), triple(2, 1, 2), triple(2, 2, 2))


def test_disjunctive_reduction_is_an_or() -> None:
    reduction = reduce_b_to_b0()
    hit = finite({triple(2, 1, 2)})
    assert reduction.evaluate(2, hit) == 1
    assert reduction.evaluate(2, EMPTY) == 0
    assert tt_eval(reduction.condition(2), hit) == 1
    assert reduction.condition(2).table_code == 0b11111110


def test_disjunctive_reduction_against_the_enumerators() -> None:
    """x = 1 is in ∅^b through i = 1, so ⟨1, 1, 1⟩ is in ∅^{b0}."""
    b0 = JumpEnumerator.create("b0", EMPTY, JumpBudget(200))
    assert reduce_b_to_b0().evaluate(1, b0) == 1
    assert b_member(EMPTY, 1, 200)
    assert reduce_b_to_b0().evaluate(0, b0) == 0
    assert not b_member(EMPTY, 0, 200)


# ============================================================================
# Order preservation
# ============================================================================

@pytest.mark.parametrize("j, expected", [(1, True), (0, False)], ids=["member", "non_member"])
def test_order_preserving_reduce(j: int, expected: bool) -> None:
    """
    Steps:
    1. A(y) = B(2y) through Ψ = DOUBLE_QUERY with bound f(y) = 2y + 1, B = primes.
       So A = {1}.
    2. ⟨HALT_IF_MEMBER, SUCCESSOR, j⟩ ∈ A^{b0} iff j ∈ A↾(j + 1).
    3. Assert the reduced triple is in B^{b0} exactly then.
    """
    reduction = order_preserving_reduce(DOUBLE_QUERY, DOUBLE_PLUS_ONE)
    code = triple(HALT_IF_MEMBER, SUCCESSOR, j)
    assert b0_member(finite({1}), code) is expected
    assert b0_member(PRIMES, reduction(code)) is expected


def test_order_preserving_h_composes_with_f() -> None:
    reduction = order_preserving_reduce(DOUBLE_QUERY, DOUBLE_PLUS_ONE)
    assert run(reduction.h(SUCCESSOR), 2, 1000).value == 7


# ============================================================================
# A_tt ≤_1 A^{b0}
# ============================================================================

@pytest.mark.parametrize("A, expected", [(finite({3}), True), (EMPTY, False)], ids=["satisfied", "unsatisfied"])
def test_reduce_Att_to_b0(A, expected: bool) -> None:
    x = constant_program(singleton(3))
    reduction = reduce_Att_to_b0(canonical_tt_witness())
    tt = JumpEnumerator.create("tt", A, JumpBudget(200)).member(x) is not None
    assert tt is expected
    assert b0_member(A, reduction(x)) is expected


def test_reduce_Att_to_b0_bound_reads_the_condition() -> None:
    x = constant_program(singleton(3))
    reduction = reduce_Att_to_b0(canonical_tt_witness())
    assert run(reduction.H(x), 0, 200).value == 3


# ============================================================================
# ∅^b and ∅′, A ≤_1 A^b
# ============================================================================

def test_halting_translations() -> None:
    translations = halting_translations()
    K = HaltingApproximation(2000)
    assert K(translations.to_halting(PADDED_HALTER)) == 1
    assert K(translations.to_halting(0)) == 0
    assert b_member(EMPTY, translations.from_halting(IDENTITY))
    assert not b_member(EMPTY, translations.from_halting(LOOP_INDEX))


@pytest.mark.parametrize("A, expected", [(finite({5}), True), (EMPTY, False)], ids=["member", "non_member"])
def test_embed_into_jump(A, expected: bool) -> None:
    y = embed_into_jump(5)
    assert b_member(A, y, 200, embed_hints([5])) is expected


# ============================================================================
# A^b ≤_T A ⊕ ∅′
# ============================================================================

def test_decide_b_agrees_with_the_enumerator() -> None:
    decision = decide_b(EVENS, 200, 1)
    assert decision.member
    assert not decision.fragile
    assert decision.queries == (k_index(0, 1), k_index(1, 1), bounded_query_position(1, {0}))
    assert b_member(EVENS, 1, 200)


def test_decide_b_rejects_zero() -> None:
    decision = decide_b(EMPTY, 200, 0)
    assert not decision.member
    assert decision.queries == (k_index(0, 0),)
