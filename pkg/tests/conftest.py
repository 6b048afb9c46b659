# tests/conftest.py

import pytest

from app.suites import omega_script


@pytest.fixture
def script_file(tmp_path):
    """The sample ω-c.e. witness script, saved as JSON."""
    path = tmp_path / "omega.json"
    omega_script(6).save(path)
    return path
