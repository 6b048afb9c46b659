# tests/unit/test_witness.py
"""
Unit Tests for α-c.e. Witnesses

A scripted witness spends `time` steps inside the scripted procedure and
eight more on the s-m-n wrapper, so an entry (n, β, v, t) is observed at
stage max(code(β) + t + 8, u(β) + 2). The expected stages below follow from
that formula.
"""

import json

import pytest

from app.ershov.witness import (
    AlphaCEWitness, MindChange, Observation, UnresolvedWitnessError, WitnessScript,
    constant_witness, eval_witness, first_observation, halting_witness, level_observation,
    limit_value, observation_stage, require_limit, script, witness_history,
)
from app.machine.program import IDENTITY, LOOP_INDEX
from app.ordinals.cnf import OMEGA, OrdinalCNF


@pytest.fixture
def override_script() -> WitnessScript:
    """ψ(0, 5) = 1 converges early, ψ(0, 2) = 0 converges late."""
    return script([(0, 5, 1, 1), (0, 2, 0, 50)])


# ============================================================================
# Observation stages and evaluation
# ============================================================================

def test_observation_stage_waits_for_units() -> None:
    assert observation_stage(OrdinalCNF.natural(9), 0, 3) == 11
    assert observation_stage(OrdinalCNF.natural(1), 30, 3) == 33


def test_least_ordinal_overrides(override_script: WitnessScript) -> None:
    """
    Steps:
    1. Evaluate at a stage where only ordinal 5 has been seen.
    2. Evaluate after ordinal 2 converges.
    3. Assert the later, lower ordinal wins.
    """
    w = override_script.compile()
    assert w.bound == OMEGA
    assert eval_witness(w, 0, 30) == MindChange(25, OrdinalCNF.natural(5), 1)
    assert eval_witness(w, 0, 100) == MindChange(62, OrdinalCNF.natural(2), 0)
    assert eval_witness(w, 0, 20) is None


def test_history_records_mind_changes(override_script: WitnessScript) -> None:
    state = witness_history(override_script.compile(), 0, 100)
    assert [change.ordinal for change in state.history] == [5, 2]
    assert state.current.value == 0
    assert state.flips == 1


def test_first_and_level_observations(override_script: WitnessScript) -> None:
    w = override_script.compile()
    assert first_observation(w, 0, 100) == Observation(25, OrdinalCNF.natural(5), 1)
    assert level_observation(w, 0, 0, 1, 100) == Observation(25, OrdinalCNF.natural(5), 1)
    assert level_observation(w, 0, 1, 1, 100) is None


def test_points_outside_the_script_never_resolve(override_script: WitnessScript) -> None:
    w = override_script.compile()
    assert limit_value(w, 7, 200) is None
    with pytest.raises(UnresolvedWitnessError, match="no converged ordinal"):
        require_limit(w, 7, 200)


def test_divergent_witness_is_unresolved() -> None:
    w = AlphaCEWitness(LOOP_INDEX, OMEGA)
    assert eval_witness(w, 0, 200) is None


# ============================================================================
# Built-in witnesses
# ============================================================================

@pytest.mark.parametrize("value", [0, 1], ids=["zero", "one"])
def test_constant_witness(value: int) -> None:
    w = constant_witness(value)
    assert w.bound == 1
    for n in range(4):
        assert eval_witness(w, n, 10) == MindChange(4, OrdinalCNF(), value)


def test_halting_witness_limits_to_halting() -> None:
    """ψ(x, 1) = 0 at once; ψ(x, 0) = 1 only when φ_x(x) halts."""
    w = halting_witness()
    assert w.bound == 2
    assert limit_value(w, IDENTITY, 50) == 1
    assert limit_value(w, LOOP_INDEX, 50) == 0
    assert witness_history(w, IDENTITY, 50).history == (MindChange(3, OrdinalCNF(), 1),)


# ============================================================================
# Scripts
# ============================================================================

def test_script_limits_take_the_least_ordinal() -> None:
    rows = [(0, 5, 1, 1), (0, 2, 0, 50), (1, OMEGA, 0, 1), (1, 3, 1, 1), (2, 4, 1, 1)]
    s = script(rows, bound=OrdinalCNF.omega_power(2))
    assert s.domain() == [0, 1, 2]
    assert [s.limit(n) for n in range(3)] == [0, 1, 1]
    assert s.limit(9) is None
    assert s.limit_set() == frozenset({1, 2})


def test_effective_bound_is_the_next_power() -> None:
    assert script([(0, OMEGA, 1, 1)]).effective_bound == OrdinalCNF.omega_power(2)
    assert script([(0, 3, 1, 1)]).effective_bound == OMEGA


def test_compile_rejects_ordinals_at_the_bound() -> None:
    with pytest.raises(ValueError, match="is not below"):
        script([(0, OMEGA, 1, 1)], bound=OrdinalCNF.natural(5)).compile()


def test_script_file_round_trip(tmp_path, override_script: WitnessScript) -> None:
    path = tmp_path / "script.json"
    override_script.save(path)
    assert WitnessScript.load(path) == override_script


def test_script_accepts_text_ordinals_and_bare_lists() -> None:
    payload = [{"n": 3, "ordinal": "w+1", "value": 1}]
    loaded = WitnessScript.from_json(json.loads(json.dumps(payload)))
    assert loaded.entries[0].ordinal == OrdinalCNF((1, 1))
    assert loaded.entries[0].time == 1
    assert loaded.bound is None
