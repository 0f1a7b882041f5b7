import numpy as np
import pytest

SEED = 20261019


@pytest.fixture
def rng(request):
    # per-test stream, reproducible from the test name
    seed = [SEED, sum(map(ord, request.node.name))]
    print(f"rng seed {seed}")
    return np.random.default_rng(seed)


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record the one-line verdict of an acceptance criterion."""
    def record(number, passed, detail):
        ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
