import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    """Collects one summary line per acceptance criterion; printed at session end."""

    def add(number: int, ok: bool, detail: str):
        _ACCEPTANCE_LINES.append((number, f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"))
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
