import random

import pytest

from qbent.field import make_field

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(params=[2, 4, 6, 8])
def small_field(request):
    return make_field(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
