import numpy as np
import pytest

from floatlab import shapes

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def unit_disk():
    return shapes.disk()


@pytest.fixture(scope="session")
def square():
    return shapes.cube(2.0, dim=2)


@pytest.fixture(scope="session")
def ellipse21():
    return shapes.ellipse(2.0, 1.0)


@pytest.fixture(scope="session")
def cube():
    return shapes.cube()


@pytest.fixture(scope="session")
def triangle():
    return shapes.simplex(2)


@pytest.fixture(scope="session")
def tetrahedron():
    return shapes.simplex(3)


@pytest.fixture(scope="session")
def unit_ball():
    return shapes.ball()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
