# tests/integration/test_cli.py
"""
Integration Tests for the Command-Line Front End

Commands run through click's CliRunner. Logging is turned down to errors so
the JSON a command prints can be parsed from its output.

Exit codes: 0 on success, 1 when a check fails, 2 on a usage error.
"""

import json

import pytest
from click.testing import CliRunner

from app.cli import _dump, cli, main
from app.ordinals.cnf import OrdinalCNF


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner: CliRunner, *args: str):
    return runner.invoke(cli, ["--log-level", "error", *args])


# ============================================================================
# ordinal
# ============================================================================

@pytest.mark.parametrize(
    "args, expected",
    [
        (("ordinal", "sum", "w*2+1", "w+3"), "w*3+4"),
        (("ordinal", "cmp", "w", "1000000"), ">"),
        (("ordinal", "cmp", "w*2", "w*2"), "="),
        (("ordinal", "rank", "--k", "1", "--l", "2", "3", "1"), "w*2+8"),
    ],
    ids=["sum", "cmp_greater", "cmp_equal", "rank"],
)
def test_ordinal_commands(runner: CliRunner, args, expected: str) -> None:
    result = invoke(runner, *args)
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    assert result.output.strip() == expected


def test_malformed_ordinal_is_a_usage_error(runner: CliRunner) -> None:
    result = invoke(runner, "ordinal", "sum", "w^")
    assert result.exit_code == 2


# ============================================================================
# machine / jump
# ============================================================================

def test_machine_run_program_text(runner: CliRunner) -> None:
    result = invoke(runner, "machine", "run", "--program", "INC r0;HALT", "--x", "41", "--steps", "100")
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    payload = json.loads(result.output)
    assert payload["status"] == "halted"
    assert payload["value"] == 42
    assert payload["steps"] == 2


@pytest.mark.parametrize(
    "args",
    [
        ("machine", "run"),
        ("machine", "run", "--index", "no-such-program"),
        ("machine", "run", "--index", "1", "--steps", "0"),
    ],
    ids=["no_program", "unknown_name", "zero_steps"],
)
def test_machine_run_usage_errors(runner: CliRunner, args) -> None:
    assert invoke(runner, *args).exit_code == 2


def test_jump_enum_prints_a_stage_view(runner: CliRunner) -> None:
    result = invoke(runner, "jump", "enum", "--variant", "b", "--stage", "200", "--domain", "4")
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    payload = json.loads(result.output)
    assert payload["variant"] == "b"
    assert [p["x"] for p in payload["points"]] == [0, 1, 2, 3]
    assert payload["points"][0]["status"] == "pending"
    assert payload["points"][1]["status"] == "member"


def test_jump_enum_sample_is_seeded(runner: CliRunner) -> None:
    args = ("jump", "enum", "--stage", "50", "--domain", "20", "--sample", "5", "--seed", "7")
    first = json.loads(invoke(runner, *args).output)
    second = json.loads(invoke(runner, *args).output)
    assert [p["x"] for p in first["points"]] == [p["x"] for p in second["points"]]
    assert len(first["points"]) == 5


def test_jump_enum_rejects_unknown_bases(runner: CliRunner) -> None:
    assert invoke(runner, "jump", "enum", "--base", "odds").exit_code == 2


# ============================================================================
# ershov
# ============================================================================

def test_ershov_eval_reads_a_script(runner: CliRunner, script_file) -> None:
    """ψ(2, 2) = 1 is seen at stage 13, then ψ(2, 1) = 0 at stage 24."""
    result = invoke(runner, "ershov", "eval", "--witness", str(script_file), "--n", "2",
                    "--stage", "400")
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    payload = json.loads(result.output)
    assert payload["history"] == [
        {"stage": 13, "ordinal": "2", "value": 1},
        {"stage": 24, "ordinal": "1", "value": 0},
    ]
    assert payload["value"] == 0
    assert payload["limit"] == 0
    assert payload["flips"] == 1


def test_ershov_eval_rejects_a_missing_script(runner: CliRunner, tmp_path) -> None:
    result = invoke(runner, "ershov", "eval", "--witness", str(tmp_path / "missing.json"))
    assert result.exit_code == 2


# ============================================================================
# construct / replay
# ============================================================================

def test_strinc_trace_replays(runner: CliRunner, tmp_path) -> None:
    """
    Steps:
    1. Refute the constant-0 functional and save the trace.
    2. Replay the trace file.
    3. Assert both commands succeed and the replay is identical.
    """
    trace = tmp_path / "strinc.jsonl"
    result = invoke(runner, "construct", "strinc", "--gamma", "constant-0", "--budget", "5000",
                    "--trace", str(trace))
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    assert json.loads(result.output)["branch"] == "membership-contradiction"
    assert trace.exists()

    replayed = invoke(runner, "replay", str(trace))
    assert replayed.exit_code == 0, f"Unexpected output: {replayed.output}"
    assert json.loads(replayed.output)["status"] == "identical"


def test_replay_of_a_garbage_file_fails(runner: CliRunner, tmp_path) -> None:
    trace = tmp_path / "garbage.jsonl"
    trace.write_text("not a trace\n")
    result = invoke(runner, "replay", str(trace))
    assert result.exit_code == 1
    assert json.loads(result.output)["status"] == "corrupted-trace"


# ============================================================================
# verify
# ============================================================================

def test_verify_ordinals(runner: CliRunner, tmp_path) -> None:
    output = tmp_path / "report.json"
    result = invoke(runner, "verify", "--suite", "ordinals", "--output", str(output))
    assert result.exit_code == 0, f"Unexpected output: {result.output}"
    assert result.output.startswith("ordinals: ")
    assert "FAIL" not in result.output
    assert json.loads(output.read_text())[0]["suite"] == "ordinals"


def test_verify_unknown_suite_is_a_usage_error(runner: CliRunner) -> None:
    assert invoke(runner, "verify", "--suite", "bogus").exit_code == 2


def test_main_returns_exit_codes() -> None:
    assert main(["--log-level", "error", "ordinal", "cmp", "1", "2"]) == 0
    assert main(["--log-level", "error", "verify", "--suite", "bogus"]) == 2


@pytest.mark.parametrize(
    "payload, expected",
    [
        ({1: [2, 3]}, {"1": [2, 3]}),
        ({"members": frozenset({4})}, {"members": [4]}),
        ({"ordinal": OrdinalCNF.parse("w+1")}, {"ordinal": "w+1"}),
        ({"g": 2 ** 70}, {"g": 2 ** 70}),
    ],
    ids=["int_keys", "frozenset", "unknown_type_as_str", "wide_int"],
)
def test_output_is_serialized_through_pydantic(payload, expected) -> None:
    assert json.loads(_dump(payload)) == expected
