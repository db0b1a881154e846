import pytest

_LINES = []


@pytest.fixture
def criterion():
    """record(number, ok, detail) stores a pass/fail line for the terminal summary."""

    def record(number, ok, detail=""):
        _LINES.append((number, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_LINES):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
