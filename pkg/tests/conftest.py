import sys

import pytest

from so3eight import liealg


@pytest.fixture(scope="session")
def corrupted_basis():
    """The reference basis with a V vector and a W vector swapped."""
    return liealg.REFERENCE.permuted([0, 1, 3, 2, 4, 5, 6, 7], label="corrupted")


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines, which output capture would otherwise hide on success."""
    module = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    lines = getattr(module, "CRITERION_LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
