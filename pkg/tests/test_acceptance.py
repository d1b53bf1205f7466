"""Acceptance criteria, one test each, with one PASS/FAIL line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest.
"""
from __future__ import annotations

import subprocess
import sys
import time

import pytest

from gaudin_models.acceptance import CHECKS

# criterion name -> wall-clock limit in seconds (None: no stated limit)
LIMITS = {
    "gaudin": 60, "center": None, "roundtrip": 60, "counterexample": None, "assoc": 30,
    "tessellation": None, "b2": None, "b3": 60, "degree2": None,
}
TOTAL_LIMIT = 300


def _line(number, name, passed, seconds):
    return f"criterion {number:2d} {name:<16} {'PASS' if passed else 'FAIL'} ({seconds:.1f}s)"


def _report(capsys, text):
    if capsys is None:
        print(text)
    else:
        with capsys.disabled():
            print("\n" + text)


def run_check(name):
    number, fn = CHECKS[name]
    start = time.perf_counter()
    res = fn(seed=0)
    elapsed = time.perf_counter() - start
    limit = LIMITS[name]
    passed = res.passed and (limit is None or elapsed < limit)
    return number, passed, elapsed, res


@pytest.mark.parametrize("name", list(CHECKS))
def test_criterion(name, capsys):
    number, passed, elapsed, res = run_check(name)
    _report(capsys, _line(number, name, passed, elapsed))
    assert res.passed, res.details
    if LIMITS[name] is not None:
        assert elapsed < LIMITS[name]


def _verify_output():
    cmd = [sys.executable, "-m", "gaudin_models.cli", "verify", "--suite", "all"]
    return subprocess.run(cmd, capture_output=True, text=True, timeout=TOTAL_LIMIT)


def run_cli_criterion():
    start = time.perf_counter()
    first = _verify_output()
    second = _verify_output()
    elapsed = time.perf_counter() - start
    passed = first.returncode == 0 and second.returncode == 0 and first.stdout == second.stdout
    return passed, elapsed, first, second


def test_criterion_10_cli_verify(capsys):
    passed, elapsed, first, second = run_cli_criterion()
    _report(capsys, _line(10, "verify_cli", passed, elapsed))
    assert first.returncode == 0, first.stdout + first.stderr
    assert second.returncode == 0
    assert first.stdout == second.stdout


if __name__ == "__main__":
    ok = True
    for name in CHECKS:
        number, passed, elapsed, _ = run_check(name)
        ok &= passed
        _report(None, _line(number, name, passed, elapsed))
    passed, elapsed, *_ = run_cli_criterion()
    ok &= passed
    _report(None, _line(10, "verify_cli", passed, elapsed))
    sys.exit(0 if ok else 1)
