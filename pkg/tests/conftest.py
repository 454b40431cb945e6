import math

import numpy as np
import pytest

from metareflect.analytic import NetworkConfig
from metareflect.geometry import Point2

R_NET = 30.0


@pytest.fixture
def ref_cfg():
    return NetworkConfig(R_NET, Point2(0.0, 3.0), Point2(20.0, 20.0))


def random_disk_points(rng, n, r=R_NET):
    rad = r * np.sqrt(rng.random(n))
    ang = rng.random(n) * 2 * math.pi
    return rad * np.cos(ang), rad * np.sin(ang)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
