"""Choice of the batch size ``l`` for a fixed budget of ``N`` coherent copies.

Each batch of ``l`` copies is concentrated into one mode and measured, so
the SPRT sees ``N / l`` samples with means ``sqrt(l) * theta_i`` and
sigma 1/2. The success probability as a function of ``l`` falls into one
of three regimes:

* case I   -- never better than a coin flip,
* case II  -- a single interior maximum, near ``l_opt_closed_form``,
* case III -- a saturated plateau between ``l_min`` and ``l_max``.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .gaussian_hypotheses import DegenerateModelError, _erf_ext
from .sprt_core import ErrorBudget, wald_thresholds

log = logging.getLogger(__name__)

TOL_CASE_I = 1e-3
TOL_CASE_III = 1e-3
L_OPT_AGREEMENT = 2


class SymmetricDegenerateError(ValueError):
    """Raised by closed forms that have a pole at ``|theta0| == |theta1|``."""


class CaseClass(enum.Enum):
    CASE_I = "I"
    CASE_II = "II"
    CASE_III = "III"


@dataclass(frozen=True)
class BatchProblem:
    n_total: int
    theta0: float
    theta1: float
    budget: ErrorBudget

    def __post_init__(self):
        if int(self.n_total) != self.n_total or self.n_total < 1:
            raise ValueError(f"n_total must be a positive integer, got {self.n_total!r}")
        if self.theta0 == self.theta1:
            raise DegenerateModelError("theta0 and theta1 must differ")
        if not isinstance(self.budget, ErrorBudget):
            object.__setattr__(self, "budget", ErrorBudget(*self.budget))

    @classmethod
    def from_values(cls, n_total, theta0, theta1, alpha, beta) -> "BatchProblem":
        return cls(int(n_total), float(theta0), float(theta1), ErrorBudget(alpha, beta))

    @property
    def log_a(self) -> float:
        return wald_thresholds(self.budget).log_a

    @property
    def log_b(self) -> float:
        return wald_thresholds(self.budget).log_b

    @property
    def symmetric(self) -> bool:
        return self.theta0 == -self.theta1


@dataclass(frozen=True)
class SuccessReport:
    p0: float
    p1: float
    p_s: float
    l: int
    case: CaseClass | None = None


@dataclass(frozen=True)
class BatchAnalysis:
    """Everything the optimiser knows about one problem."""
    best: SuccessReport
    l_opt: float | None
    l_min: float | None
    l_max: float | None
    curve: np.ndarray = field(repr=False)

    @property
    def l_opt_gap(self) -> float | None:
        return None if self.l_opt is None else abs(self.best.l - self.l_opt)


def _y(l, prob: BatchProblem, log_thr: float, theta: float):
    t0, t1, n = prob.theta0, prob.theta1, prob.n_total
    l = np.asarray(l, dtype=float)
    num = 0.5 * log_thr - l * (t1 * t1 - t0 * t0) - 2.0 * n * theta * (t0 - t1)
    y = num / (math.sqrt(2.0) * abs(t0 - t1) * math.sqrt(n))
    return float(y) if y.ndim == 0 else y


def y_a(l, prob: BatchProblem):
    """Reduced Erf argument of the hypothesis-0 stopping probability. Affine in ``l``."""
    return _y(l, prob, prob.log_a, prob.theta0)


def y_b(l, prob: BatchProblem):
    """Reduced Erf argument of the hypothesis-1 stopping probability. Affine in ``l``."""
    return _y(l, prob, prob.log_b, prob.theta1)


def _probs(ls, prob):
    p0 = np.clip(0.5 * (1.0 - _erf_ext(y_a(ls, prob))), 0.0, 1.0)
    p1 = np.clip(0.5 * (1.0 + _erf_ext(y_b(ls, prob))), 0.0, 1.0)
    return p0, p1, 0.5 * p0 + 0.5 * p1


def success_probability(l: int, prob: BatchProblem) -> SuccessReport:
    if int(l) != l or not (1 <= l <= prob.n_total):
        raise ValueError(f"l must be an integer in [1, {prob.n_total}], got {l!r}")
    p0, p1, ps = _probs(float(l), prob)
    return SuccessReport(float(p0), float(p1), float(ps), int(l))


def success_curve(prob: BatchProblem) -> np.ndarray:
    """``p_s`` for every integer ``l`` in ``1..N`` (index 0 holds ``l = 1``)."""
    return _probs(np.arange(1, prob.n_total + 1, dtype=float), prob)[2]


def _within(x, n):
    return x if 0.0 <= x <= n else None


def l_opt_closed_form(prob: BatchProblem) -> float | None:
    """Zeroth-order Taylor estimate of the maximising ``l``; None outside ``[0, N]``."""
    t0, t1, n = prob.theta0, prob.theta1, prob.n_total
    denom = 4.0 * (t1 * t1 - t0 * t0)
    if denom == 0.0:
        raise SymmetricDegenerateError("l_opt has a pole when |theta0| == |theta1|")
    return _within(n + (prob.log_a + prob.log_b) / denom, n)


def l_bounds(prob: BatchProblem) -> tuple[float | None, float | None]:
    """Edges ``(l_min, l_max)`` of the saturated region; each None outside ``[0, N]``."""
    t0, t1, n = prob.theta0, prob.theta1, prob.n_total
    if t0 + t1 == 0.0:
        raise SymmetricDegenerateError("l bounds have a pole when theta0 == -theta1")
    pre = 1.0 / (2.0 * (t1 + t0))
    root = math.sqrt(2.0 * n * math.pi)
    l_min = pre * (prob.log_b / (t1 - t0) + 4.0 * n * t1 + root)
    l_max = pre * (prob.log_a / (t1 - t0) + 4.0 * n * t0 - root)
    return _within(l_min, n), _within(l_max, n)


def recommended_l(x: float | None, n_total: int) -> int | None:
    if x is None:
        return None
    return int(min(max(round(x), 1), n_total))


def _plateau(prob):
    try:
        lo, hi = l_bounds(prob)
    except SymmetricDegenerateError:
        return None
    if lo is None or hi is None:
        return None
    # Both reduced variables share the slope sign of theta0 + theta1; for a
    # negative slope the saturated band runs from l_max up to l_min.
    if prob.theta0 + prob.theta1 < 0:
        lo, hi = hi, lo
    if lo > hi:
        return None
    return lo, hi


def _classify(prob, curve):
    if curve.max() <= 0.5 + TOL_CASE_I:
        return CaseClass.CASE_I
    plateau = _plateau(prob)
    if plateau is not None:
        mid = recommended_l(0.5 * (plateau[0] + plateau[1]), prob.n_total)
        if curve[mid - 1] >= 1.0 - TOL_CASE_III:
            return CaseClass.CASE_III
    return CaseClass.CASE_II


def classify_case(prob: BatchProblem) -> CaseClass:
    return _classify(prob, success_curve(prob))


def analyze(prob: BatchProblem) -> BatchAnalysis:
    curve = success_curve(prob)
    # argmax returns the first maximiser, i.e. the smallest l.
    l_best = int(np.argmax(curve)) + 1
    case = _classify(prob, curve)
    rep = success_probability(l_best, prob)
    best = SuccessReport(rep.p0, rep.p1, rep.p_s, l_best, case)
    try:
        l_opt = l_opt_closed_form(prob)
    except SymmetricDegenerateError:
        l_opt = None
    try:
        l_min, l_max = l_bounds(prob)
    except SymmetricDegenerateError:
        l_min = l_max = None
    out = BatchAnalysis(best, l_opt, l_min, l_max, curve)
    if case is CaseClass.CASE_II and out.l_opt_gap is not None and out.l_opt_gap > L_OPT_AGREEMENT:
        log.debug("grid argmax l=%d is %.2f away from closed-form l_opt=%.2f",
                    l_best, out.l_opt_gap, l_opt)
    return out


def optimize_batch(prob: BatchProblem) -> SuccessReport:
    """Best ``SuccessReport`` over all integer ``l`` in ``1..N``; ties go to the smallest ``l``."""
    return analyze(prob).best
