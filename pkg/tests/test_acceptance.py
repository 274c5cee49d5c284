"""Every acceptance criterion at its stated tolerance, one report line per criterion."""

import subprocess
import sys

import pytest

from fracgreen import acceptance

_RESULTS = {}
# report lines, echoed in the terminal summary by conftest.py
REPORT = []


def _outcome(check):
    if check.__name__ not in _RESULTS:
        _RESULTS[check.__name__] = check()
    return _RESULTS[check.__name__]


@pytest.mark.parametrize("check", acceptance.CRITERIA, ids=lambda c: c.__name__)
def test_criterion(check):
    outcome = _outcome(check)
    line = f"{'PASS' if outcome.passed else 'FAIL'} {outcome.name}: {outcome.detail}"
    REPORT.append(line)
    print(line)
    assert outcome.passed, outcome.detail


def test_selftest_is_deterministic():
    cmd = [sys.executable, "-m", "fracgreen", "selftest"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    passed = first.returncode == 0 and first.stdout == second.stdout
    line = (f"{'PASS' if passed else 'FAIL'} determinism: two selftest runs "
            f"{'identical' if first.stdout == second.stdout else 'differ'}, exit {first.returncode}")
    REPORT.append(line)
    print(line)
    assert first.stdout == second.stdout
    assert first.returncode == 0
    assert first.stdout.decode().rstrip().endswith(f"{len(acceptance.CRITERIA)}/{len(acceptance.CRITERIA)} criteria passed")


def test_airy_maclaurin_oracle():
    mpmath = pytest.importorskip("mpmath")
    for z in (0.0, 0.5, 1.5, 2.8):
        assert acceptance.airy_ai_maclaurin(z) == pytest.approx(float(mpmath.airyai(z)), rel=1e-12)
