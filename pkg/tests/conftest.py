import pytest

# (criterion, title, passed, detail) rows filled by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} | {detail}")


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE
