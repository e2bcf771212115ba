import math

import numpy as np
import pytest

from kato_lab.params import GridSpec

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def grid():
    return GridSpec(60.0, 4096)


@pytest.fixture(scope="session")
def small_grid():
    return GridSpec(20.0, 1024)


def odd_gauss(x):
    return x * np.exp(-x ** 2)


def even_gauss(x):
    return np.exp(-x ** 2)


ODD_NORM = 0.25 * math.sqrt(math.pi / 2.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
