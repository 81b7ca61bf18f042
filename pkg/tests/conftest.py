"""Project-wide pytest fixtures.

Every test gets a tmp HOME so no test can leak state into the developer's
real ~/.blmix (config.json, sweep_jobs/). The CLI tests invoke commands
in-process via Click's CliRunner and sweep jobs persist state by default.
"""
from __future__ import annotations

from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(autouse=True)
def _isolated_home(tmp_path, monkeypatch):
    home = tmp_path / "home"
    home.mkdir()
    monkeypatch.setenv("HOME", str(home))
    monkeypatch.setenv("XDG_CONFIG_HOME", str(home / ".config"))
    for var in ("BLMIX_EPSILON", "BLMIX_BACKEND", "BLMIX_THREADS", "BLMIX_CRITICAL_CONSTANT",
                "BLMIX_RATIONAL_MAX_N", "BLMIX_STATE_DIR", "BLMIX_LOG_LEVEL", "BLMIX_LOG_FORMAT"):
        monkeypatch.delenv(var, raising=False)
    # keep load_dotenv() away from any .env in the invoking directory
    monkeypatch.chdir(tmp_path)
    yield home


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
