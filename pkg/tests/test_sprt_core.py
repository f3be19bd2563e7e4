import math

import pytest
from hypothesis import given, strategies as st

from sprt_coherent.sprt_core import (
    ErrorBudget, ExhaustedInputError, InvalidBudgetError, SprtVerdict, WaldThresholds,
    run_sprt, sprt_step, total_success, wald_thresholds,
)

probs = st.floats(1e-9, 1 - 1e-9)


def test_thresholds_fig2_budget():
    th = wald_thresholds(ErrorBudget(0.01, 0.05))
    assert th.log_a == pytest.approx(math.log(95.0), abs=1e-15)
    assert th.log_a == pytest.approx(4.5539, abs=1e-4)
    assert th.log_b == pytest.approx(-2.9857, abs=1e-4)


def test_thresholds_fig4_budget():
    th = wald_thresholds(ErrorBudget(0.00005, 0.2))
    assert th.log_a == pytest.approx(math.log(16000.0), rel=1e-14)
    assert th.log_a == pytest.approx(9.6803, abs=1e-4)
    assert th.log_b == pytest.approx(-1.6094, abs=1e-4)


def test_thresholds_degenerate_limit():
    eps = 1e-9
    th = wald_thresholds(ErrorBudget(0.5 - eps, 0.5 - eps))
    assert abs(th.log_a) < 1e-7 and abs(th.log_b) < 1e-7


@pytest.mark.parametrize("alpha,beta", [(0.6, 0.6), (0.5, 0.5), (0.0, 0.1), (0.1, 1.0), (-0.1, 0.2)])
def test_invalid_budget(alpha, beta):
    with pytest.raises(InvalidBudgetError):
        ErrorBudget(alpha, beta)


@given(probs, probs)
def test_threshold_ordering(a, b):
    if a + b >= 1:
        return
    th = wald_thresholds(ErrorBudget(a, b))
    assert th.log_b < 0 < th.log_a


def test_step():
    th = WaldThresholds(4.55, -2.99)
    assert sprt_step(5.0, th) is SprtVerdict.ACCEPT0
    assert sprt_step(0.0, th) is SprtVerdict.CONTINUE
    assert sprt_step(-3.0, th) is SprtVerdict.ACCEPT1
    # Closed stopping sets.
    assert sprt_step(4.55, th) is SprtVerdict.ACCEPT0
    assert sprt_step(-2.99, th) is SprtVerdict.ACCEPT1


def test_ramp_stops_at_five():
    th = WaldThresholds(4.55, -2.99)
    traj = run_sprt(iter(lambda: 1.0, None), th, horizon=100)
    assert traj.stop_index == 5
    assert traj.verdict is SprtVerdict.ACCEPT0
    assert traj.z_path == [1.0, 2.0, 3.0, 4.0, 5.0]


def test_flat_never_stops():
    traj = run_sprt([0.0] * 10, WaldThresholds(1.0, -1.0), horizon=10)
    assert traj.stop_index is None
    assert traj.verdict is SprtVerdict.CONTINUE
    assert len(traj.z_path) == 10


def test_lazy_consumption():
    consumed = []

    def gen():
        for k in range(1000):
            consumed.append(k)
            yield 2.0

    run_sprt(gen(), WaldThresholds(3.0, -3.0), horizon=1000)
    assert len(consumed) == 2


def test_exhausted_input():
    with pytest.raises(ExhaustedInputError):
        run_sprt([0.1, 0.1], WaldThresholds(5.0, -5.0), horizon=5)
    # Exhaustion after a crossing is fine.
    assert run_sprt([10.0], WaldThresholds(5.0, -5.0), horizon=5).stop_index == 1


@given(st.lists(st.floats(-3, 3), min_size=1, max_size=60), st.floats(0.1, 10), st.floats(-10, -0.1))
def test_path_reconstruction_and_minimality(incs, log_a, log_b):
    th = WaldThresholds(log_a, log_b)
    traj = run_sprt(incs, th, horizon=len(incs))
    m = len(traj.z_path)
    assert math.isclose(traj.z_path[-1], math.fsum(incs[:m]), abs_tol=1e-12)
    for k in range(1, m):
        assert traj.z_path[k] - traj.z_path[k - 1] == pytest.approx(incs[k], abs=1e-12)
    for z in traj.z_path[:-1]:
        assert log_b < z < log_a
    if traj.stop_index is not None:
        assert traj.stop_index == m
        assert sprt_step(traj.z_path[-1], th) is traj.verdict


def test_total_success():
    assert total_success(1, 1) == 1
    assert total_success(0.5, 0.5) == 0.5
    assert total_success(0.8057, 0.9) == pytest.approx(0.85285, abs=1e-15)
    with pytest.raises(ValueError):
        total_success(1.2, 0.5)


@given(probs, probs, probs)
def test_total_success_monotone(a, b, c):
    lo, hi = sorted((a, b))
    assert total_success(lo, c) <= total_success(hi, c)
    assert total_success(c, lo) <= total_success(c, hi)
