from fractions import Fraction

from hypothesis import strategies as st

from ghdist.metric import FiniteMetricSpace
from ghdist.random_spaces import WEIGHTS, shortest_path_closure

ACCEPTANCE_LINES: list[str] = []


@st.composite
def rational_spaces(draw, min_points=1, max_points=4):
    n = draw(st.integers(min_points, max_points))
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(st.sampled_from(WEIGHTS))
    shortest_path_closure(rows)
    return FiniteMetricSpace(tuple(f"p{i}" for i in range(n)), tuple(tuple(r) for r in rows))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
