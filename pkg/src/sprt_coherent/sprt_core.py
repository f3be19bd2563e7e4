"""Wald's sequential probability ratio test, independent of the sample law.

The statistic ``Z_n`` is the running sum of per-sample log-likelihood ratios
``z = log p(x|0) / p(x|1)``. Hypothesis 0 is accepted once ``Z_n >= log A``,
hypothesis 1 once ``Z_n <= log B``; both stopping sets are closed.
"""
from __future__ import annotations

import enum
import math
from collections.abc import Iterable
from dataclasses import dataclass, field


class InvalidBudgetError(ValueError):
    """Raised when (alpha, beta) do not define a usable pair of thresholds."""


class ExhaustedInputError(ValueError):
    """Raised when increments run out before the horizon or a crossing."""


@dataclass(frozen=True)
class ErrorBudget:
    alpha: float  # Type-I bound: accept 1 while 0 is true
    beta: float  # Type-II bound: accept 0 while 1 is true

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (0.0 < a < 1.0):
            raise InvalidBudgetError(f"alpha must lie in (0, 1), got {a!r}")
        if not (0.0 < b < 1.0):
            raise InvalidBudgetError(f"beta must lie in (0, 1), got {b!r}")
        if a + b >= 1.0:
            raise InvalidBudgetError(f"alpha + beta must be < 1, got {a + b!r}")


@dataclass(frozen=True)
class WaldThresholds:
    log_a: float
    log_b: float


class SprtVerdict(enum.Enum):
    ACCEPT0 = "accept0"
    ACCEPT1 = "accept1"
    CONTINUE = "continue"


@dataclass
class SprtTrajectory:
    z_path: list[float]
    stop_index: int | None
    verdict: SprtVerdict
    truth: int | None = None
    increments: list[float] = field(default_factory=list, repr=False)


def wald_thresholds(budget: ErrorBudget) -> WaldThresholds:
    """Return ``(log((1-beta)/alpha), log(beta/(1-alpha)))``.

    These are Wald's approximations to the exact boundaries; no overshoot
    correction is applied.
    """
    if not isinstance(budget, ErrorBudget):
        budget = ErrorBudget(*budget)
    a, b = budget.alpha, budget.beta
    return WaldThresholds(math.log((1.0 - b) / a), math.log(b / (1.0 - a)))


def sprt_step(current_z: float, thresholds: WaldThresholds) -> SprtVerdict:
    if current_z >= thresholds.log_a:
        return SprtVerdict.ACCEPT0
    if current_z <= thresholds.log_b:
        return SprtVerdict.ACCEPT1
    return SprtVerdict.CONTINUE


def run_sprt(increments: Iterable[float], thresholds: WaldThresholds,
             horizon: int, truth: int | None = None) -> SprtTrajectory:
    """Consume ``increments`` lazily until a boundary is hit or ``horizon`` steps pass.

    A run that reaches the horizon without crossing keeps the verdict
    ``CONTINUE`` and has ``stop_index=None``; no verdict is forced.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    it = iter(increments)
    z = 0.0
    path: list[float] = []
    incs: list[float] = []
    for k in range(1, horizon + 1):
        try:
            dz = float(next(it))
        except StopIteration:
            raise ExhaustedInputError(
                f"increments ended after {k - 1} values, horizon is {horizon}") from None
        z += dz
        incs.append(dz)
        path.append(z)
        verdict = sprt_step(z, thresholds)
        if verdict is not SprtVerdict.CONTINUE:
            return SprtTrajectory(path, k, verdict, truth, incs)
    return SprtTrajectory(path, None, SprtVerdict.CONTINUE, truth, incs)


def _check_prob(name, p):
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")


def total_success(p0_accept: float, p1_accept: float) -> float:
    """Success probability under equal priors on the two hypotheses."""
    _check_prob("p0_accept", p0_accept)
    _check_prob("p1_accept", p1_accept)
    return 0.5 * p0_accept + 0.5 * p1_accept
