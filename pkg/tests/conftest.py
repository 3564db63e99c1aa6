import pytest

_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(name, ok, detail)``; asserts `ok`."""

    def record(name, ok, detail=""):
        _criteria.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}  {detail}")
