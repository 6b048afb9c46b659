# tests/unit/test_oracles.py

import pytest

from app.machine.coding import pair
from app.machine.corpus import QUERY_INPUT
from app.machine.program import IDENTITY, LOOP_INDEX
from app.oracles.approx import ApproxSet, StageMismatchError, join
from app.oracles.functionals import BTWitness, FailureReason, apply_bounded, verify_bT
from app.oracles.halting import HaltingApproximation
from app.oracles.sets import (
    EMPTY, EVENS, PRIMES, ComputedOracle, OracleBlocked, PrefixOracle, RestrictedOracle,
    finite, members_below, restrict,
)
from app.oracles.specs import SetSpecError, parse_set_spec
from app.oracles.truth_tables import (
    ALWAYS_TRUE, TTCondition, UndecidedPositionError, canonical_tt_witness, decode_condition,
    enum_Att_base, in_att, singleton, tt_eval,
)


# ---------------------------------------------
# Set oracles
# ---------------------------------------------

def test_finite_sets_answer_zero_outside() -> None:
    A = finite([2, 5])
    assert [A(x) for x in range(7)] == [0, 0, 1, 0, 0, 1, 0]
    assert EMPTY(0) == 0


def test_restrict_cuts_above_the_bound() -> None:
    cut = restrict(EVENS, 4)
    assert cut(4) == 1
    assert cut(6) == 0


def test_nested_restrictions_compose_by_min() -> None:
    cut = restrict(restrict(EVENS, 10), 4)
    assert isinstance(cut, RestrictedOracle)
    assert cut.bound == 4
    assert restrict(restrict(EVENS, 4), 10).bound == 4


def test_restricting_a_finite_set_stays_finite() -> None:
    cut = restrict(finite([1, 3, 8]), 3)
    assert cut == finite([1, 3])


def test_prefix_oracle_blocks_past_its_length() -> None:
    prefix = PrefixOracle.of_set({1, 3}, 5)
    assert tuple(prefix.bits) == (0, 1, 0, 1, 0)
    with pytest.raises(OracleBlocked) as exc_info:
        prefix(5)
    assert exc_info.value.position == 5


def test_predicate_oracles() -> None:
    assert members_below(PRIMES, 20) == frozenset({2, 3, 5, 7, 11, 13, 17, 19})
    capped = EVENS.capped(10)
    assert capped(10) == 1
    assert capped(12) == 0


def test_computed_oracle_memoizes() -> None:
    calls = []

    def compute(n: int) -> int:
        calls.append(n)
        return n > 3

    oracle = ComputedOracle("above-three", compute)
    assert [oracle(4), oracle(4), oracle(1)] == [1, 1, 0]
    assert calls == [4, 1]


# ---------------------------------------------
# Stage approximations
# ---------------------------------------------

def test_approx_set_records_changes() -> None:
    """
    Steps:
    1. Build {1, 3} at stage 0.
    2. Remove 1 and add it back.
    3. Assert membership and the change log.
    """
    approx = ApproxSet.of({3, 1})
    assert approx.to_json() == [1, 3]
    approx = approx.with_value(1, 0).with_value(1, 1)
    assert 1 in approx
    assert approx.change_count(1) == 3
    assert approx.change_count(3) == 1
    assert approx.change_count(7) == 0


def test_setting_the_current_value_is_a_no_op() -> None:
    approx = ApproxSet.of({2})
    assert approx.with_value(2, 1) is approx


def test_approx_set_helpers() -> None:
    approx = ApproxSet.of({1, 4, 9}, stage=3)
    assert approx.below(4) == frozenset({1, 4})
    assert approx.max_member() == 9
    assert approx.at_stage(5).stage == 5
    assert ApproxSet().max_member() == 0


def test_join_interleaves() -> None:
    joined = join(ApproxSet.of({1}), ApproxSet.of({0, 2}))
    assert joined.to_json() == [1, 2, 5]
    assert joined.change_count(2) == 1


def test_join_rejects_different_stages() -> None:
    with pytest.raises(StageMismatchError, match="cannot join stage 0 with stage 1"):
        join(ApproxSet.of({1}), ApproxSet.of({1}, stage=1))


def test_halting_approximation() -> None:
    K = HaltingApproximation(100)
    assert K(IDENTITY) == 1
    assert K.halting_stage(IDENTITY) == 1
    assert K(LOOP_INDEX) == 0
    assert K.halting_stage(LOOP_INDEX) is None


# ---------------------------------------------
# Truth-table conditions
# ---------------------------------------------

def test_condition_from_function() -> None:
    xor = TTCondition.from_function((1, 2), lambda bits: bits[0] ^ bits[1])
    assert xor.table_code == 0b0110
    assert tt_eval(xor, finite({1})) == 1
    assert tt_eval(xor, finite({1, 2})) == 0
    assert decode_condition(xor.code) == xor


def test_singleton_condition() -> None:
    assert singleton(3) == TTCondition.of((3,), (0, 1)).code
    assert in_att(singleton(3), finite({3})) == 1
    assert in_att(singleton(3), EMPTY) == 0


def test_always_true_condition() -> None:
    assert ALWAYS_TRUE == 2
    assert decode_condition(ALWAYS_TRUE) == TTCondition((), 1)
    assert in_att(ALWAYS_TRUE, EMPTY) == 1


def test_codes_with_oversized_tables_code_nothing() -> None:
    assert decode_condition(pair(0, 2)) is None
    assert in_att(pair(0, 2), EVENS) == 0


@pytest.mark.parametrize(
    "build, message",
    [
        (lambda: TTCondition.of((1, 2), (0, 1)), "needs 4 rows"),
        (lambda: TTCondition((1,), 8), "does not fit"),
    ],
    ids=["short_table", "oversized_code"],
)
def test_malformed_conditions(build, message: str) -> None:
    with pytest.raises(ValueError, match=message):
        build()


def test_tt_eval_refuses_undecided_positions() -> None:
    condition = TTCondition.of((0, 2), (0, 1, 1, 1))
    assert tt_eval(condition, finite({2}), decided_below=3) == 1
    with pytest.raises(UndecidedPositionError, match="position 2"):
        tt_eval(condition, finite({2}), decided_below=2)


def test_enum_att_base() -> None:
    top = singleton(3) + 1
    assert ALWAYS_TRUE in enum_Att_base(EMPTY, 3)
    assert singleton(3) in enum_Att_base(finite({3}), top)
    assert singleton(3) not in enum_Att_base(EMPTY, top)


# ---------------------------------------------
# bT reductions
# ---------------------------------------------

def test_apply_bounded_reports_use() -> None:
    outcome = apply_bounded(QUERY_INPUT, finite({3}), 3, 10)
    assert outcome.value == 1
    assert outcome.use == 4


def test_canonical_tt_witness_reduces_att() -> None:
    """A^{tt} ≤_bT A through the functional that reads every position of the condition."""
    report = verify_bT(canonical_tt_witness(), lambda c: in_att(c, EVENS), EVENS, range(80), 500)
    assert report.passed, f"Unexpected failures: {report.failures}"
    assert len(report.checked) == 80


def test_identity_reduction_passes() -> None:
    report = verify_bT(BTWitness(QUERY_INPUT, IDENTITY), EVENS, EVENS, range(20), 100)
    assert report.passed


@pytest.mark.parametrize(
    "witness, target, reason",
    [
        (BTWitness(QUERY_INPUT, LOOP_INDEX), EVENS, FailureReason.BOUND_DIVERGENT),
        (BTWitness(LOOP_INDEX, IDENTITY), EVENS, FailureReason.FUNCTIONAL_DIVERGENT),
        (BTWitness(QUERY_INPUT, IDENTITY), lambda x: 1 - EVENS(x), FailureReason.WRONG_VALUE),
    ],
    ids=["bound_divergent", "functional_divergent", "wrong_value"],
)
def test_failing_reductions_name_their_reason(witness, target, reason) -> None:
    report = verify_bT(witness, target, EVENS, range(5), 100)
    assert not report.passed
    assert report.reasons() == {reason}
    assert len(report.failures) == 5


# ---------------------------------------------
# Set specs
# ---------------------------------------------

def test_named_set_specs() -> None:
    assert parse_set_spec("empty") is EMPTY
    assert parse_set_spec("evens") is EVENS
    assert parse_set_spec("list:1,4,9")(4) == 1


@pytest.mark.parametrize(
    "spec, error, message",
    [
        ("odds", ValueError, "Unsupported set spec"),
        ("evens:3", ValueError, "Unsupported set spec"),
        ("list:1,x", SetSpecError, "comma-separated naturals"),
        ("wscript:/no/such/script.json", SetSpecError, "does not exist"),
    ],
    ids=["unknown_name", "argument_on_constant", "malformed_list", "missing_script"],
)
def test_bad_set_specs(spec: str, error, message: str) -> None:
    with pytest.raises(error, match=message):
        parse_set_spec(spec)
