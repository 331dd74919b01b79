import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Repeat the one-line acceptance results after the test summary.

    The lines are printed by the tests themselves as they run, but pytest
    captures that output; this hook makes them visible on a green run.
    """
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULT_LINES", None) if module else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.line(line)
