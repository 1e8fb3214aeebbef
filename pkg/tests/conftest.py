import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# One line per acceptance criterion, echoed at the end of the run.
ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_line("")
        terminalreporter.write_line("=== acceptance criteria ===")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
