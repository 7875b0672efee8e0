import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print the acceptance-criterion outcome lines after the test run."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
