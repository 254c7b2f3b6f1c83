"""Weighted income distributions: validation, ordering and quantile grouping.

Every other module consumes a :class:`WeightedDistribution`. Instances are
immutable (the backing arrays are read-only) so they can be shared freely
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyInput,
    InvalidGroupCount,
    NegativeIncome,
    NonPositiveWeight,
    ValidationError,
)


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class WeightedDistribution:
    """Incomes ``x_i`` carried by units with population weights ``m_i``.

    Records with equal incomes are kept apart; a unit is an identity, not a
    value. Use :func:`validate` or :meth:`from_arrays` to construct.
    """

    incomes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "incomes", _frozen(self.incomes))
        object.__setattr__(self, "weights", _frozen(self.weights))

    @classmethod
    def from_arrays(cls, incomes, weights=None) -> "WeightedDistribution":
        incomes = np.atleast_1d(np.asarray(incomes, dtype=float))
        if weights is None:
            weights = np.ones_like(incomes)
        return validate(zip(incomes, np.atleast_1d(np.asarray(weights, dtype=float))))

    def __len__(self) -> int:
        return self.incomes.size

    @property
    def n(self) -> int:
        return self.incomes.size

    @cached_property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @cached_property
    def proportions(self) -> np.ndarray:
        return _frozen(self.weights / self.total_weight)

    @cached_property
    def ordered(self) -> "OrderedDistribution":
        return OrderedDistribution.of(self)

    @property
    def mean(self) -> float:
        return self.ordered.mean

    @property
    def max(self) -> float:
        return float(self.ordered.incomes[-1])

    @property
    def min(self) -> float:
        return float(self.ordered.incomes[0])

    @property
    def total(self) -> float:
        return self.ordered.total

    @property
    def is_all_zero(self) -> bool:
        """Flag for distributions whose ratio indices are undefined downstream."""
        return self.max == 0.0

    def records(self) -> list[tuple[float, float]]:
        return list(zip(self.incomes.tolist(), self.weights.tolist()))

    def with_incomes(self, incomes) -> "WeightedDistribution":
        return WeightedDistribution.from_arrays(incomes, self.weights)

    def with_weights(self, weights) -> "WeightedDistribution":
        return WeightedDistribution.from_arrays(self.incomes, weights)


@dataclass(frozen=True, eq=False)
class OrderedDistribution:
    """Records sorted ascending by income, with Lorenz ordinates.

    Sort key is (income, weight, original position); the last two only break
    ties, so value-identical inputs in any order give identical arrays.
    """

    incomes: np.ndarray
    weights: np.ndarray
    order: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, d: WeightedDistribution) -> "OrderedDistribution":
        order = np.lexsort((np.arange(d.n), d.weights, d.incomes))
        return cls(
            incomes=_frozen(d.incomes[order]),
            weights=_frozen(d.weights[order]),
            order=order,
        )

    @cached_property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))

    @cached_property
    def proportions(self) -> np.ndarray:
        return _frozen(self.weights / self.total_weight)

    @cached_property
    def total(self) -> float:
        return float(np.dot(self.weights, self.incomes))

    @cached_property
    def mean(self) -> float:
        return float(np.dot(self.proportions, self.incomes))

    @cached_property
    def cum_population(self) -> np.ndarray:
        """``P_j``; the last entry is pinned to exactly 1."""
        c = np.cumsum(self.weights) / self.total_weight
        c[-1] = 1.0
        return _frozen(c)

    @cached_property
    def income_shares(self) -> np.ndarray:
        """``s_(i) = m_(i) x_(i) / T``."""
        return _frozen(self.weights * self.incomes / self.total)

    @cached_property
    def cum_income_share(self) -> np.ndarray:
        """``L_j``; the last entry is pinned to exactly 1."""
        c = np.cumsum(self.weights * self.incomes) / self.total
        c[-1] = 1.0
        return _frozen(c)


def validate(records: Iterable[Sequence[float]]) -> WeightedDistribution:
    """Build a :class:`WeightedDistribution` from ``(income, weight)`` pairs.

    All-zero incomes are accepted; check ``is_all_zero`` before asking for a
    ratio index.
    """
    rows = list(records)
    if not rows:
        raise EmptyInput("no records")
    try:
        arr = np.array([(float(r[0]), float(r[1])) for r in rows], dtype=float)
    except (TypeError, ValueError, IndexError) as exc:
        raise ValidationError(f"records must be (income, weight) pairs: {exc}") from None
    incomes, weights = arr[:, 0], arr[:, 1]
    bad = np.flatnonzero(~np.isfinite(incomes))
    if bad.size:
        raise ValidationError(f"record {bad[0]}: non-finite income {incomes[bad[0]]!r}")
    bad = np.flatnonzero(incomes < 0)
    if bad.size:
        raise NegativeIncome(f"record {bad[0]}: income {incomes[bad[0]]!r} < 0")
    bad = np.flatnonzero(~(weights > 0) | ~np.isfinite(weights))
    if bad.size:
        raise NonPositiveWeight(f"record {bad[0]}: weight {weights[bad[0]]!r} is not a positive number")
    return WeightedDistribution(incomes, weights)


def slice_incomes(o: OrderedDistribution, cuts: np.ndarray) -> np.ndarray:
    """Total income inside each slice ``[cuts[k], cuts[k+1]]`` of cumulative weight.

    Cuts falling inside a record split its weight fractionally; income per
    unit weight is constant within a record, so each piece carries
    ``length * x``. Summing piece contributions (rather than differencing a
    cumulative curve) keeps whole-record slices exact.
    """
    cuts = np.asarray(cuts, dtype=float)
    edges = np.concatenate(([0.0], np.cumsum(o.weights)))
    edges[-1] = o.total_weight
    points = np.union1d(edges, cuts)
    points = points[(points >= cuts[0]) & (points <= cuts[-1])]
    lengths = np.diff(points)
    mids = points[:-1] + lengths / 2
    rec = np.clip(np.searchsorted(edges, mids, side="right") - 1, 0, o.incomes.size - 1)
    grp = np.clip(np.searchsorted(cuts, mids, side="right") - 1, 0, cuts.size - 2)
    return np.bincount(grp, weights=lengths * o.incomes[rec], minlength=cuts.size - 1)


def quantile_group(d: WeightedDistribution, g: int) -> WeightedDistribution:
    """Collapse ``d`` into ``g`` equal-population quantile groups at their means."""
    if isinstance(g, bool) or int(g) != g or g < 1:
        raise InvalidGroupCount(f"group count must be a positive integer, got {g!r}")
    g = int(g)
    o = d.ordered
    m = o.total_weight
    cuts = m * np.arange(g + 1) / g
    cuts[-1] = m
    sums = slice_incomes(o, cuts)
    width = m / g
    return WeightedDistribution(sums / width, np.full(g, width))
