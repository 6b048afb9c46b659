# tests/integration/test_ershov.py
"""
Integration Tests for the Ershov Hierarchy Constructions

These tests run the witness transformations and reductions end to end on
small scripted witnesses:

- the ω-c.e. / bT-below-∅′ correspondence in both directions
- the jump transform's bookkeeping and limits
- the helpers of the reduction of an ω²-c.e. set into ∅^{2b}

Budgets are chosen so every convergence the assertions rely on happens well
inside them.
"""

import pytest

from app.ershov.omega import (
    Direction, compare_limits, omega_ce_iff_bT_halting, reduction_from_witness, round_trip,
)
from app.ershov.reductions import ErshovReduction, erbase_reduce, inductive_reduce
from app.ershov.transforms import (
    Definition, downward_definitions, downward_transform, jump_bookkeeping, jump_transform,
)
from app.ershov.witness import (
    AlphaCEWitness, constant_witness, halting_witness, limit_value, script,
)
from app.machine.corpus import QUERY_INPUT
from app.machine.program import IDENTITY
from app.oracles.functionals import BTWitness
from app.oracles.halting import HaltingApproximation
from app.ordinals.cnf import OMEGA, OrdinalCNF
from app.suites import omega_script


@pytest.fixture
def two_level_script() -> AlphaCEWitness:
    """ψ(0, ω+3) = 1 first, then ψ(0, 2) = 0 on the lower level."""
    return script([(0, OrdinalCNF((3, 1)), 1, 1), (0, 2, 0, 30)],
                  bound=OrdinalCNF.omega_power(2)).compile()


@pytest.fixture
def erbase(two_level_script: AlphaCEWitness) -> ErshovReduction:
    return erbase_reduce(two_level_script, 2000)


# ============================================================================
# ω-c.e. iff bT-below ∅′
# ============================================================================

def test_witness_from_reduction_limits_to_the_reduced_set() -> None:
    """
    Steps:
    1. Take the reduction of K to ∅′ that queries its input.
    2. Turn it into an ω-c.e. witness.
    3. Assert the limit is K on the first few points.
    """
    w = omega_ce_iff_bT_halting("witness-from-reduction", BTWitness(QUERY_INPUT, IDENTITY))
    assert w.bound == OMEGA
    limits = [limit_value(w, n, 2000) for n in range(4)]
    assert limits == [0, 1, 0, 0], f"Expected K on 0..3, got {limits}"


def test_downward_definitions_decrease() -> None:
    """Definitions of χ sit at strictly decreasing natural sums."""
    source = halting_witness()
    definitions = downward_definitions(QUERY_INPUT, IDENTITY, source, 1, 2000)
    ordinals = [d.ordinal for d in definitions]
    assert ordinals, "expected at least one definition"
    assert all(a > b for a, b in zip(ordinals, ordinals[1:]))
    assert definitions[-1].oracle == frozenset({1})


def test_downward_transform_rejects_bounds_above_the_power(two_level_script: AlphaCEWitness) -> None:
    with pytest.raises(ValueError, match="is not at most w\\^1"):
        downward_transform(QUERY_INPUT, IDENTITY, two_level_script, 1)


def test_reduction_from_witness_agrees_over_halting() -> None:
    w = halting_witness()
    reduction = omega_ce_iff_bT_halting(Direction.REDUCTION_FROM_WITNESS, w)
    report = compare_limits(w, reduction, range(4), 200, 2000)
    assert report.passed, f"Mismatches at {report.mismatch}"
    assert report.values == {0: 0, 1: 1, 2: 0, 3: 0}


def test_reduction_from_witness_rejects_higher_bounds(two_level_script: AlphaCEWitness) -> None:
    with pytest.raises(ValueError, match="is not an ω-c.e. witness"):
        reduction_from_witness(two_level_script)


@pytest.mark.slow
@pytest.mark.parametrize(
    "make_witness",
    [halting_witness, lambda: omega_script(20).compile()],
    ids=["halting", "scripted"],
)
def test_round_trip_preserves_limits_below_twenty(make_witness) -> None:
    """
    Steps:
    1. Reduce an ω-c.e. witness to ∅′ and take the reduction through the
       witness and back.
    2. Assert the round-tripped reduction over K_s never contradicts the
       witness limit on n < 20.
    """
    w = make_witness()
    back = round_trip(reduction_from_witness(w))
    report = compare_limits(w, back, range(20), 2000, 20000)
    assert report.passed, f"Mismatches at {report.mismatch}"
    assert len(report.unresolved) < 4, f"Unresolved at {report.unresolved}"


def test_unknown_direction() -> None:
    with pytest.raises(ValueError, match="Unsupported direction: sideways"):
        omega_ce_iff_bT_halting("sideways", None)


# ============================================================================
# Jump transform
# ============================================================================

def test_jump_bookkeeping_starts_at_omega_power() -> None:
    book = jump_bookkeeping(constant_witness(0), 1, 0, 500)
    assert book.definitions == (Definition(0, OrdinalCNF(), 0),)
    assert book.decrements == ()


def test_jump_bookkeeping_follows_a_convergent_bound() -> None:
    """
    Steps:
    1. A = ∅ through the constant witness; n = 1.
    2. φ_1(1) converges at stage 1 with value 1, so l drops to 0.
    3. Guesses arrive at stage 4: rank 0, so 2 gets 0 and 1 gets 1.
    """
    book = jump_bookkeeping(constant_witness(0), 1, 1, 500)
    assert book.decrements == (1,)
    assert [(d.stage, d.ordinal, d.value) for d in book.definitions] == [
        (0, OMEGA, 0),
        (4, OrdinalCNF.natural(2), 0),
        (4, OrdinalCNF.natural(1), 1),
    ]


@pytest.mark.parametrize("n, expected", [(0, 0), (1, 1)], ids=["zero", "identity_bound"])
def test_jump_transform_limits_to_the_bounded_jump(n: int, expected: int) -> None:
    chi = jump_transform(constant_witness(0), 1)
    assert chi.bound == OrdinalCNF.omega_power(2)
    assert limit_value(chi, n, 2000) == expected


def test_jump_transform_rejects_bounds_above_the_power(two_level_script: AlphaCEWitness) -> None:
    with pytest.raises(ValueError, match="is not at most w\\^1"):
        jump_transform(two_level_script, 1)


# ============================================================================
# ω²-c.e. into ∅^{2b}
# ============================================================================

def test_erbase_levels(erbase: ErshovReduction) -> None:
    assert erbase.g(0) == 1
    assert erbase.p(0) == 0
    assert erbase.q(1, 0) == 3
    assert erbase.q(0, 0) == 2
    assert erbase.l is None


def test_erbase_v_outputs_the_bounding_position(erbase: ErshovReduction) -> None:
    assert erbase.v_value(1, 0) == erbase.h_tilde(1, 3, 0) + erbase.r_tilde(0, 1)


@pytest.mark.parametrize(
    "i, expected",
    [(0, 1), (1, 1), (2, 0)],
    ids=["lower_level", "first_level", "empty_level"],
)
def test_level_positions_halt_iff_the_level_converges(erbase: ErshovReduction, i: int,
                                                     expected: int) -> None:
    K = HaltingApproximation(2000)
    assert K(erbase.r_tilde(0, i)) == expected


@pytest.mark.parametrize(
    "i, x, expected",
    [(1, 3, 1), (1, 2, 0), (0, 2, 1), (0, 1, 0)],
    ids=["at_convergence", "below_convergence", "lower_level_at", "lower_level_below"],
)
def test_below_positions(erbase: ErshovReduction, i: int, x: int, expected: int) -> None:
    K = HaltingApproximation(2000)
    assert K(erbase.h_tilde(i, x, 0)) == expected


def test_f_hands_back_its_bound_hints(erbase: ErshovReduction) -> None:
    f0 = erbase.f(0)
    hints = erbase.hints([0])
    assert erbase.v(0, 0) in hints[f0]
    assert erbase.v(1, 0) in hints[f0]
    assert f0 > erbase.u(0)


def test_reductions_check_their_arguments(two_level_script: AlphaCEWitness) -> None:
    with pytest.raises(ValueError, match="need k >= 2"):
        inductive_reduce(two_level_script, 1)
    too_high = script([(0, OrdinalCNF((0, 0, 1)), 1, 1)], bound=OrdinalCNF.omega_power(3)).compile()
    with pytest.raises(ValueError, match="is not an w\\^2-c.e. witness"):
        erbase_reduce(too_high)
