import os

import pytest
from hypothesis import HealthCheck, settings

from hdqva.bichar import lattice_example, main_example
from hdqva.hopf import VMono, gmono
from hdqva.qva import QVA, TruncationSpec

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

H = gmono(0, g0=1)
G1 = gmono(0, g1=1)


def E(m):
    return VMono(m, ())


@pytest.fixture(scope="session")
def q3():
    return QVA(main_example(3), TruncationSpec(3, 4, 5))


@pytest.fixture(scope="session")
def q2():
    return QVA(main_example(2), TruncationSpec(2, 4, 5))


@pytest.fixture(scope="session")
def lattice2():
    return QVA(lattice_example(2), TruncationSpec(2, 4, 5))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
