# tests/unit/test_jumps.py

import pytest

from app.core.config import settings
from app.machine.coding import triple
from app.machine.corpus import HALT_IF_MEMBER, QUERY_INPUT, SUCCESSOR
from app.machine.instructions import DECJZ, HALT, INC, QRY
from app.machine.program import IDENTITY, LOOP_INDEX, encode
from app.machine.transforms import constant_program, pad
from app.oracles.sets import EMPTY, EVENS, finite
from app.oracles.truth_tables import ALWAYS_TRUE, singleton
from app.jumps.hints import admission_stage, search_width
from app.jumps.views import (
    BoundedJump, JumpBudget, JumpEnumerator, Match, MemberWitness, UnsupportedVariantError,
    enum_b, enum_b0, enum_b1, enum_i, gerla_bk_jump, gerla_tt_jump, iterate_jump, matched_check,
    nested_budgets, renumbered_b1,
)

# pad(SUCCESSOR, 3) ignores its oracle and halts in 7 steps.
PADDED_HALTER = pad(SUCCESSOR, 3)


# ---------------------------------------------
# Factory
# ---------------------------------------------

@pytest.mark.parametrize("variant", ["b", "b0", "b1", "i", "tt", "B"], ids=["b", "b0", "b1", "i", "tt", "upper_case"])
def test_create_builds_each_variant(variant: str) -> None:
    enumerator = JumpEnumerator.create(variant, EMPTY, JumpBudget(50))
    assert enumerator.variant == variant.lower()


def test_create_passes_k_to_bk() -> None:
    assert JumpEnumerator.create("bk", EMPTY, JumpBudget(50), k=3).k == 3


def test_create_rejects_unknown_variants() -> None:
    with pytest.raises(UnsupportedVariantError, match="Unsupported jump variant: bb"):
        JumpEnumerator.create("bb", EMPTY, JumpBudget(50))


def test_bk_rejects_negative_k() -> None:
    with pytest.raises(ValueError, match="k >= 0"):
        JumpEnumerator.create("bk", EMPTY, JumpBudget(50), k=-1)


def test_default_width_comes_from_settings() -> None:
    assert JumpBudget(10).width == settings.JUMP_WIDTH


@pytest.mark.parametrize(
    "steps, width, expected",
    [(0, 16, 16), (1, 16, 17), (1000, 16, 26), (100_000, 16, 33), (100_000, 4, 21)],
    ids=["no_steps", "one_step", "thousand", "hundred_thousand", "narrow"],
)
def test_search_width_grows_with_the_budget(steps: int, width: int, expected: int) -> None:
    assert search_width(steps, width) == expected


@pytest.mark.parametrize("i", [1, 16, 17, 20, 31], ids=["small", "at_width", "first_above", "twenty", "thirty_one"])
def test_each_index_is_tried_from_its_admission_stage(i: int) -> None:
    stage = admission_stage(i, 16)
    assert search_width(stage, 16) >= i
    if stage > 0:
        assert search_width(stage - 1, 16) < i


# ---------------------------------------------
# A^b
# ---------------------------------------------

def test_zero_is_never_in_the_bounded_jump() -> None:
    """The only candidate bound index for 0 is the divergent program 0."""
    assert BoundedJump(EVENS, JumpBudget(500)).member(0) is None


def test_padded_halter_is_in_the_bounded_jump() -> None:
    """
    Steps:
    1. Take x the padded index of an oracle-ignoring halter.
    2. The identity (index 1 <= x) is a total bound with φ_1(x) = x.
    3. Assert membership with that witness.
    """
    witness = BoundedJump(EMPTY, JumpBudget(200)).member(PADDED_HALTER)
    assert witness == MemberWitness(IDENTITY, PADDED_HALTER, 7, 0)


def test_bounded_jump_respects_the_step_budget() -> None:
    assert BoundedJump(EMPTY, JumpBudget(5)).member(PADDED_HALTER) is None


# Halts iff A(x + 2) = 1, so only a bound of at least x + 2 lets it in. The only
# index up to 31 that computes such a bound is 31 = (INC 0, INC 0).
NEEDS_PLUS_TWO = encode((INC(0), INC(0), QRY(0, 1), DECJZ(1, 3), HALT()))


@pytest.mark.parametrize(
    "steps, expected_i",
    [(8000, None), (20000, 31), (100_000, 31)],
    ids=["width_29", "width_31", "width_33"],
)
def test_bound_index_above_the_fixed_width_is_reached(steps: int, expected_i) -> None:
    witness = BoundedJump(EVENS, JumpBudget(steps, width=16)).member(NEEDS_PLUS_TWO)
    assert (witness.i if witness is not None else None) == expected_i


def test_candidates_put_hints_first_and_drop_hints_above_x() -> None:
    hints = {40: frozenset({35, 3})}
    jump = BoundedJump(EMPTY, JumpBudget(1, width=2, hints=hints))
    assert jump.candidates(40) == [3, 35, 0, 1, 2]
    assert jump.candidates(2) == [0, 1, 2]


def test_enumerator_is_an_oracle() -> None:
    jump = BoundedJump(EMPTY, JumpBudget(200))
    assert jump(PADDED_HALTER) == 1
    assert jump(0) == 0


def test_stage_views_grow_with_the_budget() -> None:
    small = enum_b(EVENS, 20, range(24))
    large = enum_b(EVENS, 200, range(24))
    assert small.members <= large.members
    assert small.members | small.pendings == frozenset(range(24))


def test_view_points() -> None:
    view = enum_b(EMPTY, 200, [0, PADDED_HALTER])
    assert view.variant == "b"
    assert view.stage == 200
    assert view.to_points() == [
        {"x": 0, "status": "pending", "witness": None},
        {"x": PADDED_HALTER, "status": "member",
         "witness": {"i": IDENTITY, "bound": PADDED_HALTER, "steps": 7}},
    ]
    assert PADDED_HALTER in view
    assert view.fragile == frozenset()


# ---------------------------------------------
# A^{b0}, A^{b1}, A^i
# ---------------------------------------------

def test_b0_with_divergent_bound_is_never_in() -> None:
    code = triple(QUERY_INPUT, LOOP_INDEX, 3)
    assert enum_b0(EVENS, 1000, [code]).members == frozenset()


def test_b0_reads_below_the_bound() -> None:
    code = triple(QUERY_INPUT, SUCCESSOR, 3)
    witness = JumpEnumerator.create("b0", EVENS, JumpBudget(100)).member(code)
    assert witness == MemberWitness(SUCCESSOR, 4, 2, 4)


def test_b0_functional_sees_only_the_restricted_oracle() -> None:
    """HALT_IF_MEMBER on 3 with bound φ_1(3) = 3 halts iff 3 ∈ A."""
    code = triple(HALT_IF_MEMBER, IDENTITY, 3)
    assert enum_b0(finite({3}), 100, [code]).members == frozenset({code})
    assert enum_b0(finite({4}), 100, [code]).members == frozenset()


def test_b1_depends_on_the_numbering() -> None:
    standard = enum_b1(EMPTY, 100, [0, 1])
    swapped = renumbered_b1(EMPTY, JumpBudget(100), (0, 1)).view([0, 1])
    assert standard.members == frozenset({1})
    assert swapped.members == frozenset({0})


def test_simple_bounded_jump() -> None:
    assert enum_i(finite({7}), 100, [SUCCESSOR]).members == frozenset({SUCCESSOR})
    assert enum_i(finite({HALT_IF_MEMBER}), 100, [HALT_IF_MEMBER]).members == frozenset({HALT_IF_MEMBER})
    assert enum_i(EMPTY, 100, [HALT_IF_MEMBER]).members == frozenset()


# ---------------------------------------------
# Truth-table jumps
# ---------------------------------------------

def test_tt_jump_reads_the_condition() -> None:
    always = constant_program(ALWAYS_TRUE)
    three = constant_program(singleton(3))
    assert gerla_tt_jump(EMPTY, 50, [always, three, LOOP_INDEX]).members == frozenset({always})
    assert gerla_tt_jump(finite({3}), 50, [always, three]).members == frozenset({always, three})


def test_tt_witness_reports_condition_and_use() -> None:
    three = constant_program(singleton(3))
    witness = JumpEnumerator.create("tt", finite({3}), JumpBudget(50)).member(three)
    assert witness == MemberWitness(None, singleton(3), 2, 4)


def test_bk_jump_limits_condition_size() -> None:
    always = constant_program(ALWAYS_TRUE)
    three = constant_program(singleton(3))
    assert gerla_bk_jump(finite({3}), 0, 50, [always, three]).members == frozenset({always})
    assert gerla_bk_jump(finite({3}), 1, 50, [always, three]).members == frozenset({always, three})


# ---------------------------------------------
# Iterated jumps and matched budgets
# ---------------------------------------------

def test_nested_budgets_square_inner_levels() -> None:
    assert nested_budgets(1, [300]) == [300]
    assert nested_budgets(2, [300]) == [300, 90000]
    assert nested_budgets(3, [300]) == [300, 90000, settings.NESTED_BUDGET_CAP]
    assert nested_budgets(2, [300, 20]) == [300, 20]


@pytest.mark.parametrize(
    "n, budgets, message",
    [(0, [10], "n in 1..3"), (4, [10], "n in 1..3"), (2, [10, 0], "must be positive")],
    ids=["too_few", "too_many", "zero_budget"],
)
def test_nested_budgets_rejects_bad_arguments(n: int, budgets, message: str) -> None:
    with pytest.raises(ValueError, match=message):
        nested_budgets(n, budgets)


@pytest.mark.parametrize(
    "left, right, expected",
    [
        (lambda b: True, lambda b: True, Match.AGREE),
        (lambda b: True, lambda b: False, Match.DISAGREE),
        (lambda b: b > 100, lambda b: False, Match.UNRESOLVED),
        (lambda b: b > 100, lambda b: True, Match.AGREE),
    ],
    ids=["agree", "stable_disagreement", "left_moves", "agree_after_escalation"],
)
def test_matched_check(left, right, expected: Match) -> None:
    assert matched_check(left, right, 50) is expected


def test_iterate_jump_single_level_is_the_bounded_jump() -> None:
    view = iterate_jump(1, [200], [0, PADDED_HALTER])
    assert view.members == frozenset({PADDED_HALTER})
    assert view.members == enum_b(EMPTY, 200, [0, PADDED_HALTER]).members


def test_iterate_jump_rejects_deep_towers() -> None:
    with pytest.raises(ValueError, match="n in 1..3"):
        iterate_jump(4, [10])
