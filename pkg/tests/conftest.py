import sys

import mpmath
import pytest


@pytest.fixture(autouse=True, scope="session")
def _mp_precision():
    mpmath.mp.dps = 40
    yield


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
