"""Shared pytest plumbing.

The acceptance tests record a one-line verdict per criterion; the hook
below replays them as a summary section at the end of the run so the
pass/fail ledger is visible even with output capture on.
"""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)
