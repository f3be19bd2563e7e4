"""Two Gaussian hypotheses with a shared standard deviation.

``stop_prob_h0`` / ``stop_prob_h1`` give the probability that the SPRT
statistic after ``n0`` samples sits beyond its threshold. They keep the
closed form used for the batch-size analysis, in which the constant term
``theta1**2 - theta0**2`` is *not* multiplied by ``n0``. The ``*_exact``
variants carry that factor and are the true law of ``Z_{n0}``. Both agree
whenever ``theta0 == -theta1`` or ``n0 == 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

SQRT2 = math.sqrt(2.0)


class DegenerateModelError(ValueError):
    """Raised when the two hypotheses coincide (``z`` is identically zero)."""


@dataclass(frozen=True)
class GaussianHypotheses:
    theta0: float
    theta1: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")
        if self.theta0 == self.theta1:
            raise DegenerateModelError("theta0 and theta1 must differ")

    def swapped(self) -> "GaussianHypotheses":
        return GaussianHypotheses(self.theta1, self.theta0, self.sigma)


@dataclass(frozen=True)
class HorizonStopProbabilities:
    p0_accept0: float
    p1_accept1: float
    n0: float


def erf(y):
    """Error function ``2/sqrt(pi) * int_0^y exp(-t^2) dt``.

    Accepts scalars or arrays. Odd symmetry holds bit-for-bit because the
    magnitude is evaluated on ``|y|`` and the sign reattached.
    """
    arr = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("erf is only defined here for finite input")
    if arr.ndim == 0:
        v = float(arr)
        return math.copysign(math.erf(abs(v)), v)
    return np.copysign(special.erf(np.abs(arr)), arr)


def _erf_ext(y):
    # Threshold arguments may legitimately be +-inf (log_a -> -inf etc.).
    arr = np.asarray(y, dtype=float)
    out = np.where(np.isinf(arr), np.sign(arr), 0.0)
    fin = np.isfinite(arr)
    if np.any(fin):
        out = np.where(fin, np.copysign(special.erf(np.abs(np.where(fin, arr, 0.0))), arr), out)
    if np.any(np.isnan(arr)):
        raise ValueError("NaN in erf argument")
    return out


def _clamp(p):
    p = np.clip(p, 0.0, 1.0)
    return float(p) if np.ndim(p) == 0 else p


def gaussian_z(x, model: GaussianHypotheses):
    """Log-likelihood ratio ``log p(x|0) - log p(x|1)`` for one sample."""
    t0, t1, s = model.theta0, model.theta1, model.sigma
    if np.ndim(x):
        x = np.asarray(x, dtype=float)
    return (2.0 * (t0 - t1) * x + t1 * t1 - t0 * t0) / (2.0 * s * s)


def _arg(model, n0, log_thr, theta_true, const_scale):
    t0, t1, s = model.theta0, model.theta1, model.sigma
    n0 = np.asarray(n0, dtype=float)
    if np.any(n0 <= 0):
        raise ValueError("n0 must be positive")
    d = t0 - t1
    # |d| keeps the event orientation right when theta0 < theta1.
    num = 2.0 * s * s * np.asarray(log_thr, dtype=float) - const_scale(n0) * (t1 * t1 - t0 * t0) \
        - 2.0 * n0 * theta_true * d
    with np.errstate(invalid="ignore"):
        return num / (2.0 * abs(d) * np.sqrt(2.0 * n0) * s)


def stop_prob_h0(model: GaussianHypotheses, n0, log_a):
    """P_0(Z_{n0} >= log_a) in the closed form used for batch optimisation."""
    y = _arg(model, n0, log_a, model.theta0, lambda n: 1.0)
    return _clamp(0.5 * (1.0 - _erf_ext(y)))


def stop_prob_h1(model: GaussianHypotheses, n0, log_b):
    """P_1(Z_{n0} <= log_b) in the closed form used for batch optimisation."""
    y = _arg(model, n0, log_b, model.theta1, lambda n: 1.0)
    return _clamp(0.5 * (1.0 + _erf_ext(y)))


def stop_prob_h0_exact(model: GaussianHypotheses, n0, log_a):
    """Exact P_0(Z_{n0} >= log_a) for integer or real ``n0``."""
    y = _arg(model, n0, log_a, model.theta0, lambda n: n)
    return _clamp(0.5 * (1.0 - _erf_ext(y)))


def stop_prob_h1_exact(model: GaussianHypotheses, n0, log_b):
    """Exact P_1(Z_{n0} <= log_b)."""
    y = _arg(model, n0, log_b, model.theta1, lambda n: n)
    return _clamp(0.5 * (1.0 + _erf_ext(y)))


def horizon_stop_probabilities(model: GaussianHypotheses, n0: float, log_a: float,
                               log_b: float, exact: bool = False) -> HorizonStopProbabilities:
    if exact:
        return HorizonStopProbabilities(stop_prob_h0_exact(model, n0, log_a),
                                        stop_prob_h1_exact(model, n0, log_b), n0)
    return HorizonStopProbabilities(stop_prob_h0(model, n0, log_a),
                                    stop_prob_h1(model, n0, log_b), n0)


def z_moments(model: GaussianHypotheses, truth: int) -> tuple[float, float]:
    """Mean and variance of one increment ``z`` when hypothesis ``truth`` holds."""
    t0, t1, s = model.theta0, model.theta1, model.sigma
    theta = t0 if truth == 0 else t1
    mean = (2.0 * (t0 - t1) * theta + t1 * t1 - t0 * t0) / (2.0 * s * s)
    var = ((t0 - t1) / (s * s)) ** 2 * s * s
    return mean, var
