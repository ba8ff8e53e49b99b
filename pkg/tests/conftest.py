import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from stringc2.field import field_new

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf2():
    return field_new(1)


@pytest.fixture(scope="session")
def gf4():
    return field_new(2)


@pytest.fixture(scope="session")
def gf8():
    return field_new(3)


@pytest.fixture(scope="session")
def gf16():
    return field_new(4)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
