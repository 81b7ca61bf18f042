"""
Smoke E2E tests for the blmix CLI binary.

Runs the actual CLI via subprocess to verify the entry point, flag parsing,
JSON output and graceful error handling.

All tests are marked @pytest.mark.e2e and use a 30-second timeout.
A temporary HOME is used so the real ~/.blmix is never touched.
"""
from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------
CLI_CMD = [sys.executable, "-m", "blmix"]
TIMEOUT = 30
REPO_ROOT = Path(__file__).resolve().parents[2]


def _run(args: list[str]) -> subprocess.CompletedProcess[str]:
    """Run the CLI in a subprocess with captured output."""
    return subprocess.run(
        [*CLI_CMD, *args],
        capture_output=True,
        text=True,
        timeout=TIMEOUT,
        env={**os.environ, "PYTHONPATH": str(REPO_ROOT)},  # inherits monkeypatched env
    )


# ===================================================================
# Test cases
# ===================================================================

@pytest.mark.e2e
@pytest.mark.timeout(TIMEOUT)
def test_help():
    """``blmix --help`` exits 0 and lists core commands."""
    r = _run(["--help"])
    assert r.returncode == 0, f"stderr: {r.stderr}"
    for keyword in ("mix", "curve", "sweep", "figure", "verify"):
        assert keyword in r.stdout, f"Expected '{keyword}' in help output"


@pytest.mark.e2e
@pytest.mark.timeout(TIMEOUT)
def test_version():
    r = _run(["--version"])
    assert r.returncode == 0, f"stderr: {r.stderr}"
    assert "blmix" in r.stdout.lower()
    assert "1.0.0" in r.stdout


@pytest.mark.e2e
@pytest.mark.timeout(TIMEOUT)
def test_mix_reports_json():
    """``blmix mix`` on the single-swap chain at n=50 prints t_mix 68."""
    r = _run(["mix", "--n", "50", "--m", "25", "--r", "25", "--k", "1"])
    assert r.returncode == 0, f"stderr: {r.stderr}"
    payload = json.loads(r.stdout)
    assert payload["t_mix"] == 68
    assert payload["non_mixing"] is False


@pytest.mark.e2e
@pytest.mark.timeout(TIMEOUT)
def test_invalid_parameters_exit_cleanly():
    """Out-of-range k exits 2 with a message, never a traceback."""
    r = _run(["mix", "--n", "10", "--m", "4", "--r", "5", "--k", "7"])
    combined = r.stdout + r.stderr
    assert r.returncode == 2, f"Unexpected exit: {r.returncode}\n{combined}"
    assert "Traceback" not in combined, f"CLI crashed with traceback:\n{combined}"
    assert "Error" in r.stderr
