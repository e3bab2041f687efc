from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from eop.model import ModelParams, default_grid

settings.register_profile("eop", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("eop")


@pytest.fixture(scope="session")
def params():
    return ModelParams(1, 2, 3)


@pytest.fixture(scope="session")
def grid():
    return default_grid()


@pytest.fixture(scope="session")
def states(grid):
    return grid.states()


def q(text):
    return Fraction(text)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
