"""Unambiguous discrimination of two pure qubit states.

With ``N`` copies the success probability is ``1 - c**N`` for overlap ``c``.
Grouping the copies into batches of ``l`` turns the overlap into ``c**l``
and the copy count into ``N / l``, which gives the same number.

Powers are evaluated in exact rational arithmetic and rounded once, so the
batched and unbatched values agree to the last bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class DivisibilityError(ValueError):
    pass


@dataclass(frozen=True)
class QubitPair:
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi / 4):
            raise ValueError(f"theta must lie in [0, pi/4], got {self.theta!r}")

    @property
    def overlap(self) -> float:
        # Guard the tiny negative cos(pi/2) rounding.
        return max(0.0, math.cos(2.0 * self.theta))


def _check(c, n):
    if not (0.0 <= c <= 1.0):
        raise ValueError(f"overlap must lie in [0, 1], got {c!r}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")


def success_unambiguous(c: float, n: int) -> float:
    _check(c, n)
    return float(1 - Fraction(c) ** n)


def batched_success_unambiguous(c: float, n: int, l: int) -> float:
    _check(c, n)
    if l < 1 or n % l:
        raise DivisibilityError(f"batch size l={l} must divide n={n}")
    big_c = Fraction(c) ** l
    return float(1 - big_c ** (n // l))
