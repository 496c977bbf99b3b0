import pytest

N_SMALL = 7909787
P_SMALL, Q_SMALL = 2069, 3823
N45 = 17344343992304993085649094809
P45, Q45 = 129411310904131, 134024946282739


@pytest.fixture
def rng():
    import random

    return random.Random(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
