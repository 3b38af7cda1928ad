import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import acceptlog  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if acceptlog.LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(acceptlog.LINES):
            terminalreporter.write_line(acceptlog.LINES[n])
