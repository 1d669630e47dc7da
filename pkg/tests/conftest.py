import math

import numpy as np
import pytest


def hexagon7():
    pts = [(0.0, 0.0)] + [(2 * math.cos(a), 2 * math.sin(a)) for a in np.arange(6) * math.pi / 3]
    return np.array(pts).reshape(-1)


@pytest.fixture
def hex7():
    return hexagon7()


@pytest.fixture
def tri3():
    # (0,0), (1,0), (0,1) in a container of radius 1.5
    return np.array([0.0, 0.0, 1.0, 0.0, 0.0, 1.0])


# criterion number -> (passed, detail), filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[i]
        terminalreporter.write_line(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
