"""Seeded simulation of batched SPRT martingales.

Randomness comes from the Philox counter-based generator keyed by the seed.
Trajectory ``i`` owns a fixed window of counter values starting at
``i * blocks_per_trajectory``, and its Gaussian outcomes are the inverse CDF
of those raw words. Any trajectory can therefore be regenerated on its own,
a chunk of consecutive trajectories is a single contiguous draw, and results
do not depend on how chunks are spread over worker threads. Aggregates are
reduced in fixed-size chunks, in trajectory order.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .batch_strategy import BatchProblem, success_probability
from .coherent_optics import QUADRATURE_SIGMA, batch_hypotheses
from .gaussian_hypotheses import gaussian_z, stop_prob_h0_exact, stop_prob_h1_exact, z_moments
from .sprt_core import SprtTrajectory, WaldThresholds, run_sprt, wald_thresholds

CHUNK = 2048
THREADS_ENV = "SPRT_COHERENT_THREADS"
_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class SimulationConfig:
    seed: int
    trajectories: int
    truth: int
    prob: BatchProblem
    l: int
    thresholds: WaldThresholds | None = None  # override; defaults to the budget's

    def __post_init__(self):
        if not (0 <= self.seed <= _U64):
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.trajectories < 1:
            raise ValueError("trajectories must be >= 1")
        if self.truth not in (0, 1):
            raise ValueError("truth must be 0 or 1")
        if not (1 <= self.l <= self.prob.n_total):
            raise ValueError(f"l must lie in [1, {self.prob.n_total}]")

    @property
    def horizon(self) -> int:
        return self.prob.n_total // self.l

    @property
    def leftover(self) -> int:
        """Copies that do not fill a whole batch and are discarded."""
        return self.prob.n_total % self.l

    @property
    def wald(self) -> WaldThresholds:
        return self.thresholds or wald_thresholds(self.prob.budget)

    @property
    def model(self):
        return batch_hypotheses(self.prob.theta0, self.prob.theta1, self.l)


@dataclass(frozen=True)
class EstimateWithCI:
    point: float
    stderr: float
    n_trials: int

    @classmethod
    def from_counts(cls, hits: int, n: int) -> "EstimateWithCI":
        p = hits / n
        return cls(p, math.sqrt(p * (1.0 - p) / n), n)

    def contains(self, value: float, k: float = 3.0) -> bool:
        return abs(self.point - value) <= k * self.stderr


@dataclass
class SimulationResult:
    config: SimulationConfig
    horizon_estimate: EstimateWithCI
    first_crossing_estimate: EstimateWithCI
    mean_path: np.ndarray
    paths: np.ndarray | None = field(default=None, repr=False)


def _blocks(horizon):
    # Philox emits four 64-bit words per counter increment.
    return -(-horizon // 4)


def _normals_from_raw(raw):
    u = ((raw >> np.uint64(11)).astype(float) + 0.5) * 2.0 ** -53
    return ndtri(u)


def standard_normals(seed: int, start: int, stop: int, horizon: int) -> np.ndarray:
    """Standard normal outcomes for trajectories ``start..stop-1``, one row each."""
    k = _blocks(horizon)
    bg = np.random.Philox(key=seed, counter=start * k)
    raw = bg.random_raw((stop - start) * 4 * k).reshape(stop - start, 4 * k)[:, :horizon]
    return _normals_from_raw(raw)


class TrajectoryStream:
    """Source of the standard normals belonging to one trajectory."""

    def __init__(self, seed: int, index: int):
        self.seed = seed
        self.index = index

    def standard_normal(self, horizon: int) -> np.ndarray:
        return standard_normals(self.seed, self.index, self.index + 1, horizon)[0]


def trajectory_rng(seed: int, index: int) -> TrajectoryStream:
    return TrajectoryStream(seed, index)


def _increments(normals, config):
    model = config.model
    mean = model.theta0 if config.truth == 0 else model.theta1
    return gaussian_z(mean + QUADRATURE_SIGMA * normals, model)


def sample_increments(rng, config: SimulationConfig) -> np.ndarray:
    """Per-batch log-likelihood increments for one full-horizon trajectory."""
    return _increments(rng.standard_normal(config.horizon), config)


def sample_batched_trajectory(rng, config: SimulationConfig) -> SprtTrajectory:
    """One SPRT run with early stopping.

    ``rng`` is anything with a ``standard_normal(size)`` method: a
    ``trajectory_rng(seed, index)`` stream for reproducible runs, or a numpy
    ``Generator``.
    """
    return run_sprt(sample_increments(rng, config), config.wald, config.horizon, truth=config.truth)


def _threads():
    raw = os.environ.get(THREADS_ENV)
    if raw:
        return max(1, int(raw))
    return min(8, os.cpu_count() or 1)


def _chunk(config, start, stop, keep_paths):
    th = config.wald
    normals = standard_normals(config.seed, start, stop, config.horizon)
    # Elementwise, so identical to sample_increments row by row.
    z = _increments(normals, config)
    paths = np.cumsum(z, axis=1)
    end = paths[:, -1]
    horizon_hits = int(np.count_nonzero(end >= th.log_a if config.truth == 0 else end <= th.log_b))

    up = paths >= th.log_a
    down = paths <= th.log_b
    crossed = up | down
    first = np.argmax(crossed, axis=1)
    rows = np.arange(len(paths))
    good = up if config.truth == 0 else down
    first_hits = int(np.count_nonzero(crossed[rows, first] & good[rows, first]))
    return horizon_hits, first_hits, paths.sum(axis=0), (paths if keep_paths else None)


def run_simulation(config: SimulationConfig, keep_paths: bool = False,
                   threads: int | None = None) -> SimulationResult:
    """Simulate every trajectory to the full horizon and collect both estimators.

    The horizon estimator looks only at ``Z`` after the last batch; the
    first-crossing estimator replays each path with the stopping rule and
    counts runs whose first boundary hit is the correct one.
    """
    n = config.trajectories
    bounds = [(s, min(s + CHUNK, n)) for s in range(0, n, CHUNK)]
    workers = threads or _threads()
    if workers > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(lambda b: _chunk(config, *b, keep_paths), bounds))
    else:
        parts = [_chunk(config, *b, keep_paths) for b in bounds]

    horizon_hits = sum(p[0] for p in parts)
    first_hits = sum(p[1] for p in parts)
    total = np.zeros(config.horizon)
    for p in parts:
        total = total + p[2]
    paths = np.concatenate([p[3] for p in parts]) if keep_paths else None
    return SimulationResult(config,
                            EstimateWithCI.from_counts(horizon_hits, n),
                            EstimateWithCI.from_counts(first_hits, n),
                            total / n, paths)


def estimate_horizon_prob(config: SimulationConfig) -> EstimateWithCI:
    return run_simulation(config).horizon_estimate


def estimate_first_crossing_prob(config: SimulationConfig) -> EstimateWithCI:
    return run_simulation(config).first_crossing_estimate


def mean_path(config: SimulationConfig) -> list[float]:
    return run_simulation(config).mean_path.tolist()


def closed_form_prediction(config: SimulationConfig) -> float:
    """Batched closed-form probability matching ``estimate_horizon_prob``."""
    rep = success_probability(config.l, config.prob)
    return rep.p0 if config.truth == 0 else rep.p1


def exact_prediction(config: SimulationConfig) -> float:
    """Exact law of ``Z`` after ``floor(N/l)`` batches."""
    th = config.wald
    if config.truth == 0:
        return stop_prob_h0_exact(config.model, config.horizon, th.log_a)
    return stop_prob_h1_exact(config.model, config.horizon, th.log_b)


def drift_per_step(config: SimulationConfig) -> float:
    return z_moments(config.model, config.truth)[0]


def regression_slope(path) -> float:
    """Least-squares slope of ``Z_n`` against ``n = 1..len(path)``."""
    y = np.asarray(path, dtype=float)
    n = np.arange(1, len(y) + 1, dtype=float)
    nc = n - n.mean()
    return float(nc @ y / (nc @ nc))


def regression_slope_stderr(config: SimulationConfig) -> float:
    """Standard deviation of ``regression_slope(mean_path)`` under the model.

    The slope is linear in the increments: ``sum_k c_k z_k`` with
    ``c_k = sum_{n>=k} w_n``, so its variance is ``Var(z) * sum c_k^2 / M``.
    """
    h = config.horizon
    if h < 2:
        return math.inf
    n = np.arange(1, h + 1, dtype=float)
    w = (n - n.mean()) / ((n - n.mean()) @ (n - n.mean()))
    c = np.cumsum(w[::-1])[::-1]
    var_z = z_moments(config.model, config.truth)[1]
    return math.sqrt(var_z * float(c @ c) / config.trajectories)
