"""Coherent-state amplitudes, beam splitters and homodyne statistics.

Coherent states stay coherent under passive linear optics, so a mode is
fully described by its complex amplitude ``gamma = q + i p``. Only the
``q`` quadrature (homodyne angle 0) is measured.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .gaussian_hypotheses import GaussianHypotheses

QUADRATURE_VARIANCE = 0.25
QUADRATURE_SIGMA = 0.5


@dataclass(frozen=True)
class CoherentAmplitude:
    q: float
    p: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError("amplitude components must be finite")

    @classmethod
    def from_complex(cls, z: complex) -> "CoherentAmplitude":
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.q, self.p)

    def __abs__(self):
        return math.hypot(self.q, self.p)

    @property
    def energy(self) -> float:
        return self.q * self.q + self.p * self.p


@dataclass(frozen=True)
class BeamSplitterSpec:
    transmissivity: float
    reflectivity: float

    def __post_init__(self):
        t, r = self.transmissivity, self.reflectivity
        if not (0.0 <= t <= 1.0 and 0.0 <= r <= 1.0):
            raise ValueError(f"T and R must lie in [0, 1], got T={t!r}, R={r!r}")
        if abs(t + r - 1.0) > 1e-12:
            raise ValueError(f"T + R must equal 1, got {t + r!r}")


@dataclass(frozen=True)
class HomodyneModel:
    mean: float
    variance: float = QUADRATURE_VARIANCE

    @property
    def sigma(self) -> float:
        return math.sqrt(self.variance)


def beam_splitter(gamma: CoherentAmplitude, delta: CoherentAmplitude,
                  spec: BeamSplitterSpec) -> tuple[CoherentAmplitude, CoherentAmplitude]:
    """|gamma>|delta> -> |sqrt(T) gamma + sqrt(R) delta>|-sqrt(R) gamma + sqrt(T) delta>."""
    st, sr = math.sqrt(spec.transmissivity), math.sqrt(spec.reflectivity)
    g, d = complex(gamma), complex(delta)
    return (CoherentAmplitude.from_complex(st * g + sr * d),
            CoherentAmplitude.from_complex(-sr * g + st * d))


def accumulation_chain(l: int) -> list[BeamSplitterSpec]:
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    return [BeamSplitterSpec(j / (j + 1), 1.0 / (j + 1)) for j in range(1, l)]


def accumulate(gamma: CoherentAmplitude, l: int) -> tuple[CoherentAmplitude, list[CoherentAmplitude]]:
    """Fold ``l`` copies of ``gamma`` into one mode.

    At splitter ``j`` the running mode, which carries ``sqrt(j) gamma``,
    meets the next fresh copy. Returns the concentrated mode and the
    ``l - 1`` residual modes (vacuum up to rounding).
    """
    acc = gamma
    residual = []
    for spec in accumulation_chain(l):
        acc, out = beam_splitter(acc, gamma, spec)
        residual.append(out)
    return acc, residual


def homodyne_model_for(gamma: CoherentAmplitude) -> HomodyneModel:
    return HomodyneModel(mean=gamma.q, variance=QUADRATURE_VARIANCE)


def batch_hypotheses(theta0: float, theta1: float, l: int) -> GaussianHypotheses:
    """Outcome laws after concentrating ``l`` copies: means scale by ``sqrt(l)``, sigma stays 1/2."""
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    r = math.sqrt(l)
    return GaussianHypotheses(r * theta0, r * theta1, QUADRATURE_SIGMA)
