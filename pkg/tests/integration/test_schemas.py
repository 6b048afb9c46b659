# tests/integration/test_schemas.py
"""
Integration Tests for the Pydantic Schemas

These tests check that request bodies, witness scripts and trace records
are validated before they reach the machine or a construction:

1. Valid data is accepted and normalized (ordinal text becomes coefficients)
2. Invalid data is rejected with a clear message
3. Cross-field rules hold (exactly one program, entries below the bound)
"""

import pytest
from pydantic import ValidationError

from app.schemas.jump import JumpMemberRequest
from app.schemas.machine import RunRequest
from app.schemas.ordinal import OrdinalPairRequest
from app.schemas.trace import StageRecord, TraceHeader
from app.schemas.witness import ScriptEntrySchema, WitnessScriptSchema


# ============================================================================
# Ordinals
# ============================================================================

def test_ordinal_pair_accepts_every_form():
    """Text, naturals and coefficient lists all become coefficients."""
    request = OrdinalPairRequest(left="w*2+1", right=5)
    assert request.left == [1, 2]
    assert request.right == [5]
    left, right = request.ordinals()
    assert str(left) == "w*2+1"


@pytest.mark.parametrize(
    "value, message",
    [
        ("w^", "cannot parse ordinal term"),
        (-1, "non-negative"),
        ([1, True], "non-negative integers"),
        (1.5, "coefficient list"),
    ],
    ids=["malformed_text", "negative_natural", "boolean_coefficient", "float"],
)
def test_ordinal_pair_rejects(value, message):
    with pytest.raises(ValidationError) as exc_info:
        OrdinalPairRequest(left=value, right=0)
    errors = exc_info.value.errors()
    assert errors[0]["loc"] == ("left",)
    assert any(message in str(err) for err in errors)


# ============================================================================
# Machine runs
# ============================================================================

def test_run_request_defaults():
    request = RunRequest(index=3)
    assert request.x == 0
    assert request.oracle == []
    assert request.budget > 0


@pytest.mark.parametrize(
    "data, message",
    [
        ({}, "exactly one"),
        ({"program": "HALT", "index": 1}, "exactly one"),
        ({"index": 1, "oracle": [2, -1]}, "non-negative"),
        ({"index": 1, "budget": 0}, "greater than 0"),
    ],
    ids=["neither", "both", "negative_oracle", "zero_budget"],
)
def test_run_request_rejects(data, message):
    with pytest.raises(ValidationError) as exc_info:
        RunRequest(**data)
    assert any(message in str(err) for err in exc_info.value.errors())


# ============================================================================
# Jump membership
# ============================================================================

def test_jump_member_variant_is_case_insensitive():
    for variant in ["tt", "TT", "Tt"]:
        assert JumpMemberRequest(variant=variant, x=3).variant == "tt"


def test_jump_member_rejects_unknown_variants():
    with pytest.raises(ValidationError) as exc_info:
        JumpMemberRequest(variant="b2", x=3)
    assert any("Variant must be one of" in str(err) for err in exc_info.value.errors())


def test_jump_member_rejects_negative_k():
    with pytest.raises(ValidationError):
        JumpMemberRequest(variant="bk", x=3, k=-1)


# ============================================================================
# Witness scripts
# ============================================================================

def test_script_entry_parses_text_ordinals():
    entry = ScriptEntrySchema(n=2, ordinal="w+4", value=1)
    assert entry.ordinal == [4, 1]
    assert entry.time == 1


@pytest.mark.parametrize(
    "data",
    [
        {"n": 0, "ordinal": 1, "value": 2},
        {"n": -1, "ordinal": 1, "value": 0},
        {"n": 0, "ordinal": 1, "value": 0, "time": 0},
    ],
    ids=["value_not_a_bit", "negative_point", "zero_time"],
)
def test_script_entry_rejects(data):
    with pytest.raises(ValidationError):
        ScriptEntrySchema(**data)


def test_script_entries_must_lie_below_the_bound():
    entries = [{"n": 0, "ordinal": "w", "value": 1}]
    assert WitnessScriptSchema(entries=entries, bound="w^2").bound == [0, 0, 1]
    with pytest.raises(ValidationError) as exc_info:
        WitnessScriptSchema(entries=entries, bound="w")
    assert any("is not below" in str(err) for err in exc_info.value.errors())


# ============================================================================
# Traces
# ============================================================================

def test_trace_header_knows_its_constructions():
    header = TraceHeader(schema_version=1, construction="ttsep", params={"N": 3})
    assert header.params == {"N": 3}
    with pytest.raises(ValidationError) as exc_info:
        TraceHeader(schema_version=1, construction="priority")
    assert any("Construction must be one of" in str(err) for err in exc_info.value.errors())


def test_stage_records_reject_negative_stages():
    assert StageRecord(stage=0).events == {}
    with pytest.raises(ValidationError):
        StageRecord(stage=-1)
