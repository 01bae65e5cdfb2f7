import warnings

import pytest

from vofl.errors import IllConditionedWarning

_LINES = []


@pytest.fixture
def report():
    """Record a one-line verdict that is echoed in the terminal summary."""
    def emit(ok: bool, text: str):
        line = f"{'PASS' if ok else 'FAIL'} {text}"
        print(line)
        _LINES.append(line)
        return ok
    return emit


@pytest.fixture(autouse=True)
def _quiet_conditioning():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IllConditionedWarning)
        yield


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
