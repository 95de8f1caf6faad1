import math

import numpy as np
import pytest
from hypothesis import settings

from zaksampling import GridSpec, Signal

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

SQRT_2PI = math.sqrt(2 * math.pi)


def random_signal(g: GridSpec, rng: np.random.Generator) -> Signal:
    v = rng.normal(size=g.N) + 1j * rng.normal(size=g.N)
    return Signal(g, v).normalized()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def grid():
    return GridSpec.from_cell(SQRT_2PI, 16, 16)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
