"""Companion quantities of the relative-to-maximum index.

Functions taking a ``source`` accept either a full
:class:`~idrm.distribution.WeightedDistribution` or a :class:`Summary`
(population, mean, maximum), since welfare, tolerance and the MIDE income
depend on nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .distribution import WeightedDistribution
from .errors import (
    DegenerateEquality,
    SingleElementPopulation,
    UndefinedForZeroMax,
    UndefinedForZeroMean,
    UndefinedForZeroTotal,
    ValidationError,
    ZeroMinimumIncome,
)
from .indices import idrm


@dataclass(frozen=True)
class Summary:
    total_weight: float
    mean: float
    max: float

    def __post_init__(self):
        if not (self.total_weight > 0 and self.mean >= 0 and self.max >= self.mean):
            raise ValidationError(f"inconsistent summary {self}")

    @classmethod
    def of(cls, d: WeightedDistribution) -> "Summary":
        return cls(d.total_weight, d.mean, d.max)


Source = Union[WeightedDistribution, Summary]


def _summary(source: Source) -> Summary:
    return source if isinstance(source, Summary) else Summary.of(source)


def welfare(source: Source) -> float:
    """Social welfare under the utility ``x / x_max``: ``mean / max``."""
    s = _summary(source)
    if not s.max > 0:
        raise UndefinedForZeroMax("welfare needs a positive maximum income")
    return float(s.mean / s.max)


def idrm_from_summary(source: Source) -> float:
    return 1.0 - welfare(source)


def tolerance_tau(source: Source) -> float:
    """How many means the maximum sits above the mean: ``max / mean - 1``."""
    s = _summary(source)
    if not s.mean > 0:
        raise UndefinedForZeroMean("tolerance needs a positive mean income")
    return float(s.max / s.mean - 1.0)


def x_mide(source: Source) -> float:
    """Common income for all but one element that keeps welfare unchanged.

    The remaining element keeps the maximum income. Population is taken as a
    real number so survey expansion weights work too.
    """
    s = _summary(source)
    if not s.total_weight > 1:
        raise SingleElementPopulation("x_mide needs more than one element")
    if not s.max > 0:
        raise UndefinedForZeroMax("x_mide needs a positive maximum income")
    m = s.total_weight
    return float((m * s.mean - s.max) / (m - 1.0))


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    population: np.ndarray  # P_j
    share: np.ndarray  # L_j
    delta: float  # T / (m x_max) = mean / max

    @property
    def scaled_share(self) -> np.ndarray:
        """Ordinates of the curve linked to the index: ``delta * L_j``."""
        return self.delta * self.share

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.population.tolist(), self.share.tolist()))

    @property
    def scaled_points(self) -> list[tuple[float, float]]:
        return list(zip(self.population.tolist(), self.scaled_share.tolist()))

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "points": [list(p) for p in self.points],
            "scaled_points": [list(p) for p in self.scaled_points],
        }


def lorenz(d: WeightedDistribution) -> LorenzCurve:
    o = d.ordered
    if not o.total > 0:
        raise UndefinedForZeroTotal("Lorenz curve needs positive total income")
    delta = o.total / (o.total_weight * o.incomes[-1])
    return LorenzCurve(o.cum_population.copy(), o.cum_income_share.copy(), float(delta))


def _ordered_positive(d: WeightedDistribution):
    o = d.ordered
    if o.incomes.size < 2:
        raise ValidationError("need at least two ordered records")
    if not o.incomes[0] > 0:
        raise ZeroMinimumIncome("smallest income must be positive")
    return o


def idrm_via_palma_form(d: WeightedDistribution) -> float:
    """The index rewritten around ``P = x_(n) / x_(1)``.

    ``1 - p_(n) - (p_(1) + sum_{i=2}^{n-1} p_(i) x_(i) / x_(1)) / P``.
    """
    o = _ordered_positive(d)
    x, p = o.incomes, o.proportions
    palma = x[-1] / x[0]
    middle = np.sum(p[1:-1] * x[1:-1] / x[0])
    return float(1.0 - p[-1] - (p[0] + middle) / palma)


@dataclass(frozen=True)
class PalmaDecomposition:
    palma: float
    lower: float
    upper: float
    idrm: float
    nop: float
    p_first: float
    p_last: float

    def to_dict(self) -> dict:
        return {
            "palma": self.palma,
            "idrm_lower": self.lower,
            "idrm_upper": self.upper,
            "idrm": self.idrm,
            "nop": self.nop,
            "p_first": self.p_first,
            "p_last": self.p_last,
        }


def palma_bounds(d: WeightedDistribution) -> PalmaDecomposition:
    """Bounds on the index given only the extreme-ratio ``P``, and NoP.

    The lower bound is reached when every middle income equals the top one,
    the upper when they all equal the bottom one. NoP places the observed
    value on that interval. Raises :class:`DegenerateEquality` when the
    interval collapses (``P = 1``, or only two coordinates).
    """
    o = _ordered_positive(d)
    x, p = o.incomes, o.proportions
    palma = float(x[-1] / x[0])
    p1, pn = float(p[0]), float(p[-1])
    shrink = 1.0 - 1.0 / palma
    lower = p1 * shrink
    upper = (1.0 - pn) * shrink
    value = idrm(d)
    width = (1.0 - p1 - pn) * shrink
    if x.size == 2 or not width > 0:
        raise DegenerateEquality("bounds coincide; NoP is undefined")
    nop = (value - lower) / width
    return PalmaDecomposition(palma, lower, upper, value, float(nop), p1, pn)
