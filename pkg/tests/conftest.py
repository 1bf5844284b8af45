"""Shared reporting for the acceptance suite.

Acceptance tests record one verdict line each; the terminal summary
repeats them so the per-claim outcome is visible even when pytest
captures stdout.
"""

ACCEPTANCE: list[str] = []


def record(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    ACCEPTANCE.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)
