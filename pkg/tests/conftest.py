import sys

import pytest

from affcoinv.chambers import ChamberSystem
from affcoinv.presentation import load_bundled


@pytest.fixture(scope="session")
def regular_q4():
    return load_bundled("regular-q4")


@pytest.fixture(scope="session")
def group_q3():
    return load_bundled("group-1.1-q3")


@pytest.fixture(scope="session", params=["regular-q4", "group-1.1-q3"])
def fixture_presentation(request):
    return load_bundled(request.param)


@pytest.fixture(scope="session")
def system_q3(group_q3):
    return ChamberSystem(group_q3)


@pytest.fixture(scope="session")
def system_q4(regular_q4):
    return ChamberSystem(regular_q4)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(results[name])
