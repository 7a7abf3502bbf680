import pytest

# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(key, passed, detail):
        ACCEPTANCE[key] = (passed, detail)
    return _record


def format_line(key, passed, detail):
    return f"{'PASS' if passed else 'FAIL'} criterion {key}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=str):
        terminalreporter.write_line(format_line(key, *ACCEPTANCE[key]))
