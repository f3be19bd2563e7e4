import math

import pytest
from scipy.integrate import quad

from sprt_coherent import BatchProblem, ErrorBudget

FIG2 = dict(n_total=100, theta0=0.1, theta1=-0.1, alpha=0.01, beta=0.05)
FIG4 = dict(n_total=100, theta0=0.2, theta1=-0.1, alpha=0.00005, beta=0.2)
# Found by a grid scan over (theta0, theta1, alpha, beta, N); classified case III.
CASE3 = dict(n_total=1000, theta0=1.0, theta1=0.8, alpha=1e-28, beta=0.02)


def make_problem(n_total, theta0, theta1, alpha, beta):
    return BatchProblem(n_total, theta0, theta1, ErrorBudget(alpha, beta))


@pytest.fixture
def fig2():
    return make_problem(**FIG2)


@pytest.fixture
def fig4():
    return make_problem(**FIG4)


@pytest.fixture
def case3():
    return make_problem(**CASE3)


def erf_by_quadrature(y):
    """Independent oracle: integrate the defining integral directly."""
    val, _ = quad(lambda t: math.exp(-t * t), 0.0, abs(y), epsabs=1e-14, epsrel=1e-13, limit=200)
    return math.copysign(2.0 / math.sqrt(math.pi) * val, y)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""
    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
