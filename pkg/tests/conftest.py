import math

import pytest

from geocover.geometry import validate_polygon

L_SHAPE = [(0, 0), (0, 2), (1, 2), (1, 1), (2, 1), (2, 0)]


def rectangle(w, h):
    return validate_polygon([(0, 0), (0, h), (w, h), (w, 0)])


def regular_polygon(k, r, cx=0.0, cy=0.0):
    return validate_polygon([(cx + r * math.cos(-2 * math.pi * i / k), cy + r * math.sin(-2 * math.pi * i / k)) for i in range(k)])


@pytest.fixture
def unit_square():
    return rectangle(1, 1)


@pytest.fixture
def lshape():
    return validate_polygon(L_SHAPE)


@pytest.fixture
def big_square():
    return validate_polygon([(-10, -10), (-10, 10), (10, 10), (10, -10)])


@pytest.fixture
def thin_rect():
    return rectangle(8, 0.1)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(mod.RESULTS, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(mod.RESULTS[key])
