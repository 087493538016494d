import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polyspace_ilp.core import Instance

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def instances(draw, m=st.integers(1, 2), n=st.integers(1, 4), entry=st.integers(-2, 2),
              rhs=st.integers(-5, 5), cost=st.integers(-3, 3), nonneg=False):
    m, n = draw(m), draw(n)
    if nonneg:
        entry, rhs, cost = st.integers(0, 2), st.integers(0, 5), st.integers(0, 3)
    A = [[draw(entry) for _ in range(n)] for _ in range(m)]
    if nonneg:
        for j in range(n):
            if all(A[i][j] == 0 for i in range(m)):
                A[0][j] = 1
    b = [draw(rhs) for _ in range(m)]
    c = [draw(cost) for _ in range(n)]
    return Instance.create(A, b, c)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for k in sorted(REPORT):
            terminalreporter.write_line(REPORT[k])
