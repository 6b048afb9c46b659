# tests/unit/test_transforms.py

import pytest

from app.machine.coding import pair
from app.machine.corpus import ADDITION, DOUBLE_PLUS_ONE, SUCCESSOR, acceptability_corpus
from app.machine.interpreter import run
from app.machine.program import IDENTITY, LOOP_INDEX
from app.machine.transforms import (
    NonTotalTransformerError, compose_programs, constant_above, constant_program, constant_transformer,
    fixed_point, fixed_point_set, least_padding_above, pad, packed, parametric, quine_transformer,
    smn, strip_padding, unpack, unpad, unparametric, unsmn,
)


# ---------------------------------------------
# s-m-n and padding
# ---------------------------------------------

def test_smn_curries_the_first_argument() -> None:
    """φ_smn(e,y)(x) = φ_e(pair(y, x))."""
    curried = smn(ADDITION, 3)
    for x in range(5):
        outcome = run(curried, x, 1000)
        assert outcome.value == 3 + x, f"Expected {3 + x}, got {outcome.value}"


def test_smn_is_injective_and_monotone() -> None:
    assert smn(ADDITION, 3) < smn(ADDITION, 4)
    assert smn(SUCCESSOR, 3) != smn(ADDITION, 3)
    assert unsmn(smn(ADDITION, 3)) == (ADDITION, 3)


@pytest.mark.parametrize("name, e", list(acceptability_corpus().items())[:9])
def test_pad_preserves_the_function(name: str, e: int) -> None:
    for x in (0, 2, 5):
        direct = run(e, x, 2000)
        padded = run(pad(e, 7), x, 2000)
        assert padded.value == direct.value, f"pad changed {name} at {x}"


def test_padding_exceeds_its_arguments() -> None:
    for k in range(10):
        assert pad(SUCCESSOR, k) > max(SUCCESSOR, k)
        assert pad(SUCCESSOR, k) < pad(SUCCESSOR, k + 1)


def test_unpad_and_strip_padding() -> None:
    twice = pad(pad(DOUBLE_PLUS_ONE, 2), 5)
    assert unpad(twice) == (pad(DOUBLE_PLUS_ONE, 2), 5)
    assert strip_padding(twice) == DOUBLE_PLUS_ONE
    assert unpad(SUCCESSOR) is None
    assert unsmn(SUCCESSOR) is None


def test_least_padding_above() -> None:
    floor = pad(SUCCESSOR, 40) + 1
    found = least_padding_above(SUCCESSOR, floor)
    assert found == pad(SUCCESSOR, 41)


def test_packed_programs_ignore_their_input() -> None:
    e = packed("fst", 3, 4)
    assert run(e, 0, 100).value == 3
    assert run(e, 9, 100).value == 3
    assert run(packed("snd", 3, 4), 0, 100).value == 4


@pytest.mark.parametrize(
    "params",
    [(5,), (1, 2), (7, 0, 3), (2 ** 70, 1, 0, 2 ** 40)],
    ids=["single", "pair", "triple", "large_entries"],
)
def test_unpack_reads_back_the_nested_pairs(params) -> None:
    value = params[0]
    for p in params[1:]:
        value = pair(value, p)
    assert unpack(value, len(params)) == params


def test_packed_index_grows_with_its_last_parameter() -> None:
    indices = [packed("fst", 9, c) for c in range(40)]
    assert indices == sorted(set(indices))
    with pytest.raises(ValueError, match="at least one parameter"):
        packed("fst")


@pytest.mark.parametrize(
    "floor",
    [-1, 0, packed("fst", 9, 0), packed("fst", 9, 100), 2 ** 300],
    ids=["below_zero", "zero", "at_first_index", "mid_range", "far_above"],
)
def test_constant_above_is_the_least_power_minus_one(floor: int) -> None:
    build = lambda c: packed("fst", 9, c)  # noqa: E731
    c = constant_above(build, floor)
    assert (c + 1) & c == 0
    assert build(c) > floor
    assert c == 0 or build(c // 2) <= floor


def test_parametric_programs_decode_back() -> None:
    index = parametric("empty_jump_search", 6)
    assert unparametric(index) == ("empty_jump_search", (6,))
    assert unparametric(pad(index, 3)) == ("empty_jump_search", (6,))
    assert unparametric(SUCCESSOR) is None


def test_parametric_rejects_unknown_procedures() -> None:
    with pytest.raises(ValueError, match="Unsupported procedure"):
        parametric("teleport", 1)


# ---------------------------------------------
# Constant, composed and self-referential programs
# ---------------------------------------------

def test_constant_program() -> None:
    assert run(constant_program(7), 123, 10).value == 7


def test_compose_programs_applies_inner_first() -> None:
    composed = compose_programs(SUCCESSOR, DOUBLE_PLUS_ONE)
    assert run(composed, 3, 2000).value == 8


def test_quine_transformer_builds_constant_functions() -> None:
    """
    Steps:
    1. Run the quine transformer on an index e.
    2. Assert the resulting program outputs e on every input.
    """
    q = run(quine_transformer(), SUCCESSOR, 100).value
    for x in (0, 1, 9):
        assert run(q, x, 100).value == SUCCESSOR


def test_fixed_point_of_a_constant_transformer() -> None:
    m = fixed_point(constant_transformer(SUCCESSOR), budget=100)
    assert run(m, 4, 2000).value == 5


def test_fixed_point_of_the_identity_transformer_exists() -> None:
    """Every index is a fixed point of the identity; the construction still terminates."""
    m = fixed_point(IDENTITY, budget=100)
    assert m > 0


def test_fixed_point_set_is_increasing_and_above_lower() -> None:
    t = constant_transformer(SUCCESSOR)
    first = fixed_point_set(t, 1, budget=100)[0]
    points = fixed_point_set(t, 3, lower=first, budget=100)
    assert points == sorted(points)
    assert len(set(points)) == 3
    assert all(m > first for m in points)
    for m in points:
        assert run(m, 0, 2000).value == 1


def test_fixed_point_set_rejects_non_total_transformers() -> None:
    with pytest.raises(NonTotalTransformerError, match="does not halt"):
        fixed_point_set(LOOP_INDEX, 1, budget=100)
