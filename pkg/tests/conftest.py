import math

import pytest
from hypothesis import strategies as st

from segcover import geom
from segcover.geom import Point, Segment


@pytest.fixture(autouse=True)
def _reset_tol():
    old = geom.get_tol()
    yield
    geom.set_tol(old)


coord = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)
points = st.builds(Point, coord, coord)
segments = st.builds(Segment, points, points)
radii = st.floats(min_value=0.05, max_value=10, allow_nan=False)


def close(a: float, b: float, eps: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=0, abs_tol=eps)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(lines):
        terminalreporter.write_line(lines[num])
