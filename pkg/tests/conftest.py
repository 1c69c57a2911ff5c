import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

# filled by tests/test_acceptance.py; echoed after the run so the table
# survives output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
