import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'} | {detail}"
        _LINES[criterion] = line
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_LINES):
        terminalreporter.write_line(_LINES[k])
