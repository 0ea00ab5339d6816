"""Shared pytest hooks: echo acceptance criterion verdicts after the run.

Capture swallows per-test prints, so the acceptance tests also append their
one-line verdicts here and `pytest_terminal_summary` replays them where they
are always visible.
"""

CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not CRITERION_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(CRITERION_LINES,
                       key=lambda s: int(s.split(":")[0].split()[1])):
        terminalreporter.write_line(line)
