import random

import pytest
from gmpy2 import mpq
from hypothesis import strategies as st

from charflow.core import Character, Component

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def record(label: str, ok: bool, detail: str = ""):
    ACCEPTANCE_RESULTS.append((label, ok, detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")


rationals = st.builds(
    lambda n, d: mpq(n, d),
    st.integers(min_value=-60, max_value=60),
    st.integers(min_value=1, max_value=12),
)
components = st.sampled_from(list(Component))


@st.composite
def characters(draw, component=None):
    comp = component or draw(components)
    return Character(draw(rationals), draw(rationals), draw(rationals), comp)


c11_characters = characters(component=Component.C11)

float_coords = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


@st.composite
def omega_points(draw):
    """Exact points with z < -2 and zbar < -2 (xy > 4, z in (2 - xy, -2))."""
    x = draw(st.builds(lambda n, d: mpq(n, d), st.integers(5, 40), st.integers(1, 4)))
    y_min = 4 / x
    y = y_min + draw(st.builds(lambda n, d: mpq(n, d), st.integers(1, 40), st.integers(1, 4)))
    if draw(st.booleans()):
        x, y = -x, -y
    t = draw(st.builds(lambda n: mpq(n, 20), st.integers(1, 19)))
    return Character(x, y, -2 - t * (x * y - 4))


@pytest.fixture
def pyrng():
    return random.Random(20240611)
