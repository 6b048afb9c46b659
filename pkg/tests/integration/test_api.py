# tests/integration/test_api.py

import pytest
from fastapi.testclient import TestClient

from app.core.config import settings
from app.machine.corpus import SUCCESSOR
from app.machine.transforms import pad
from main import app

# ---------------------------------------------
# Pytest Fixture: client
# ---------------------------------------------

@pytest.fixture
def client():
    """
    TestClient for the workbench API; no live server is needed.
    """
    with TestClient(app) as client:
        yield client


# ---------------------------------------------
# Health
# ---------------------------------------------

def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "run_budget": settings.RUN_BUDGET,
                               "jump_width": settings.JUMP_WIDTH}


# ---------------------------------------------
# Ordinals
# ---------------------------------------------

def test_ordinal_sum_api(client):
    """
    Steps:
    1. POST two ordinals in text form to `/ordinals/sum`.
    2. Assert the natural sum in text, coefficients and code.
    """
    response = client.post("/ordinals/sum", json={"left": "w*2+1", "right": "w+3"})
    assert response.status_code == 200, f"Expected status code 200, got {response.status_code}"
    body = response.json()
    assert body["text"] == "w*3+4", f"Expected w*3+4, got {body['text']}"
    assert body["coefficients"] == [4, 3]


def test_ordinal_sum_accepts_coefficients(client):
    response = client.post("/ordinals/sum", json={"left": [1, 1], "right": 2})
    assert response.status_code == 200
    assert response.json()["text"] == "w+3"


@pytest.mark.parametrize(
    "left, right, expected",
    [("w", "1000000", ">"), ("w^2", "w^2", "="), ([3], "w", "<")],
    ids=["greater", "equal", "less"],
)
def test_ordinal_compare_api(client, left, right, expected):
    response = client.post("/ordinals/compare", json={"left": left, "right": right})
    assert response.status_code == 200
    assert response.json()["result"] == expected


@pytest.mark.parametrize(
    "payload",
    [{"left": "w^", "right": "1"}, {"left": [1, -1], "right": "1"}, {"left": "w"}],
    ids=["malformed_text", "negative_coefficient", "missing_side"],
)
def test_ordinal_validation_errors(client, payload):
    response = client.post("/ordinals/sum", json=payload)
    assert response.status_code == 400, f"Expected status code 400, got {response.status_code}"
    assert "error" in response.json()


# ---------------------------------------------
# Machine
# ---------------------------------------------

def test_machine_run_program_text(client):
    response = client.post("/machine/run", json={"program": "INC r0\nHALT", "x": 41, "budget": 100})
    assert response.status_code == 200
    body = response.json()
    assert body["index"] == SUCCESSOR
    assert body["status"] == "halted"
    assert body["value"] == 42
    assert body["steps"] == 2


def test_machine_run_reports_exhaustion(client):
    response = client.post("/machine/run", json={"index": 0, "x": 3, "budget": 50})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "still-running"
    assert body["value"] is None
    assert body["steps"] == 50


def test_machine_run_needs_exactly_one_program(client):
    response = client.post("/machine/run", json={"program": "HALT", "index": 1})
    assert response.status_code == 400
    assert "exactly one" in response.json()["error"]


def test_machine_run_syntax_error(client):
    response = client.post("/machine/run", json={"program": "JUMP r0"})
    assert response.status_code == 400
    assert "unknown opcode" in response.json()["error"]


# ---------------------------------------------
# Jumps
# ---------------------------------------------

def test_jump_member_api(client):
    x = pad(SUCCESSOR, 3)
    response = client.post("/jumps/member", json={"variant": "b", "base": "empty", "x": x, "steps": 200})
    assert response.status_code == 200
    body = response.json()
    assert body["member"] is True
    assert body["witness"] == {"i": 1, "bound": x, "steps": 7}


def test_jump_member_non_member(client):
    response = client.post("/jumps/member", json={"variant": "B", "x": 0, "steps": 200})
    assert response.status_code == 200
    assert response.json()["member"] is False
    assert response.json()["witness"] is None


@pytest.mark.parametrize(
    "payload, message",
    [
        ({"variant": "bb", "x": 1}, "Variant must be one of"),
        ({"variant": "b", "base": "odds", "x": 1}, "Unsupported set spec"),
        ({"variant": "b", "x": -1}, "x"),
    ],
    ids=["unknown_variant", "unknown_base", "negative_point"],
)
def test_jump_member_errors(client, payload, message):
    response = client.post("/jumps/member", json=payload)
    assert response.status_code == 400
    assert message in response.json()["error"]


# ---------------------------------------------
# Error messages
# ---------------------------------------------

@pytest.mark.parametrize(
    "route, payload, prefix",
    [
        ("/ordinals/sum", {"left": "w^", "right": "1"}, "Invalid ordinal"),
        ("/ordinals/compare", {"left": [1, -1], "right": "1"}, "Invalid ordinal"),
        ("/machine/run", {"program": "HALT", "budget": 0}, "Invalid step budget 'budget'"),
        ("/jumps/member", {"variant": "b", "x": 1, "steps": 0}, "Invalid step budget 'steps'"),
        ("/machine/run", {"program": "JUMP r0"}, "Invalid program"),
        ("/jumps/member", {"variant": "b", "base": "odds", "x": 1}, "Invalid base set"),
    ],
    ids=["ordinal_text", "ordinal_coefficients", "run_budget", "jump_steps", "program_text", "base_set"],
)
def test_errors_name_what_was_wrong(client, route, payload, prefix):
    response = client.post(route, json=payload)
    assert response.status_code == 400, f"Expected status code 400, got {response.status_code}"
    assert response.json()["error"].startswith(prefix), response.json()["error"]
