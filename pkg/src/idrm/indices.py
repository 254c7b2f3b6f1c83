"""Inequality indices over weighted distributions.

Every index is evaluated on the income-ordered records so that the result
does not depend on the order in which units were supplied. Grouped data is
treated as point masses at group means.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .distribution import WeightedDistribution, quantile_group, slice_incomes
from .errors import (
    InvalidPercents,
    NonPositiveEpsilon,
    UndefinedForZeroMax,
    UndefinedForZeroMean,
    UnknownIndex,
    ZeroBottomDecile,
    ZeroBottomShare,
    ZeroIncomeWithNonpositiveAlpha,
)

DEFAULT_EPSILON = 2.0
DEFAULT_ALPHA = 1.0


@dataclass(frozen=True)
class IndexResult:
    index: str
    value: float
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"index": self.index, "value": self.value, "params": dict(self.params)}


def _all_equal(o) -> bool:
    # weighted sums of equal incomes need not reproduce them exactly
    return bool(o.incomes[0] == o.incomes[-1])


def idrm(d: WeightedDistribution) -> float:
    """Relative-to-maximum inequality: ``1 - mean / max``.

    Each unit's gap to the top income, relative to that income, averaged
    with population proportions. Zero for equality; approaches one as the
    whole income concentrates in a vanishing share of the population.
    """
    o = d.ordered
    top = o.incomes[-1]
    if top <= 0:
        raise UndefinedForZeroMax("idrm needs a positive maximum income")
    if _all_equal(o):
        return 0.0
    # a weighted mean can round a hair above the maximum
    return max(float(1.0 - o.mean / top), 0.0)


def idrm_sum(d: WeightedDistribution) -> float:
    """``sum_i p_i (x_max - x_i) / x_max``; the unit-by-unit form of :func:`idrm`."""
    o = d.ordered
    top = o.incomes[-1]
    if top <= 0:
        raise UndefinedForZeroMax("idrm needs a positive maximum income")
    return float(np.sum(o.proportions * (top - o.incomes) / top))


def _positive_mean(d: WeightedDistribution) -> float:
    mu = d.ordered.mean
    if not mu > 0:
        raise UndefinedForZeroMean("index needs a positive mean income")
    return mu


def gini(d: WeightedDistribution) -> float:
    """Gini coefficient from the Lorenz trapezoids: ``1 - sum p_(j) (L_j + L_{j-1})``."""
    _positive_mean(d)
    o = d.ordered
    if _all_equal(o):
        return 0.0
    L = o.cum_income_share
    L_prev = np.concatenate(([0.0], L[:-1]))
    return max(float(1.0 - np.sum(o.proportions * (L + L_prev))), 0.0)


def gini_pairwise(d: WeightedDistribution) -> float:
    """Mean absolute difference over twice the mean. O(n^2); reference form."""
    mu = _positive_mean(d)
    x, p = d.incomes, d.proportions
    diff = np.abs(x[:, None] - x[None, :])
    return float(p @ diff @ p / (2.0 * mu))


def ge(d: WeightedDistribution, alpha: float = DEFAULT_ALPHA) -> float:
    """Generalized entropy GE(alpha); alpha=1 is Theil, alpha=0 is MLD."""
    mu = _positive_mean(d)
    o = d.ordered
    x, p = o.incomes, o.proportions
    if alpha <= 0 and x[0] <= 0:
        raise ZeroIncomeWithNonpositiveAlpha(f"GE({alpha}) undefined with zero incomes")
    if _all_equal(o):
        return 0.0
    r = x / mu
    if alpha == 1:
        pos = r > 0
        val = np.sum(p[pos] * r[pos] * np.log(r[pos]))
    elif alpha == 0:
        val = np.sum(p * np.log(1.0 / r))
    else:
        val = np.sum(p * (r**alpha - 1.0)) / (alpha * (alpha - 1.0))
    # rounding can push an exact zero slightly negative
    return float(val) if val > 0 else 0.0


def theil(d: WeightedDistribution) -> float:
    return ge(d, 1.0)


def mld(d: WeightedDistribution) -> float:
    return ge(d, 0.0)


def equally_distributed_equivalent(d: WeightedDistribution, epsilon: float = DEFAULT_EPSILON) -> float:
    """Atkinson's ``x_EDE`` for aversion ``epsilon``."""
    if not epsilon > 0:
        raise NonPositiveEpsilon(f"epsilon must be > 0, got {epsilon!r}")
    o = d.ordered
    x, p = o.incomes, o.proportions
    if epsilon >= 1 and x[0] <= 0:
        return 0.0
    if epsilon == 1:
        return float(np.exp(np.sum(p * np.log(x))))
    e = 1.0 - epsilon
    return float(np.sum(p * x**e) ** (1.0 / e))


def atkinson(d: WeightedDistribution, epsilon: float = DEFAULT_EPSILON) -> float:
    mu = _positive_mean(d)
    ede = equally_distributed_equivalent(d, epsilon)
    if _all_equal(d.ordered):
        return 0.0
    return float(min(max(1.0 - ede / mu, 0.0), 1.0))


def palma_decile_ratio(d: WeightedDistribution) -> float:
    """Top-decile mean income over bottom-decile mean income."""
    deciles = quantile_group(d, 10).incomes
    if not deciles[0] > 0:
        raise ZeroBottomDecile("bottom decile mean is zero")
    return float(deciles[-1] / deciles[0])


def palma_share_ratio(d: WeightedDistribution, top_percent: float = 10.0, bottom_percent: float = 40.0) -> float:
    """Income held by the richest ``top_percent`` over that of the poorest ``bottom_percent``."""
    if not (top_percent > 0 and bottom_percent > 0 and top_percent + bottom_percent <= 100):
        raise InvalidPercents(f"need 0 < top, 0 < bottom, top + bottom <= 100; got {top_percent}, {bottom_percent}")
    o = d.ordered
    m = o.total_weight
    cuts = np.array([0.0, m * bottom_percent / 100.0, m * (100.0 - top_percent) / 100.0, m])
    bottom, _, top = slice_incomes(o, cuts)
    if not bottom > 0:
        raise ZeroBottomShare(f"bottom {bottom_percent}% holds no income")
    return float(top / bottom)


def _ge_by_alpha(d, alpha=DEFAULT_ALPHA, **_):
    return ge(d, alpha)


def _atk(d, epsilon=DEFAULT_EPSILON, **_):
    return atkinson(d, epsilon)


def _palma_share(d, top_percent=10.0, bottom_percent=40.0, **_):
    return palma_share_ratio(d, top_percent, bottom_percent)


INDICES: dict[str, Callable[..., float]] = {
    "idrm": lambda d, **_: idrm(d),
    "gini": lambda d, **_: gini(d),
    "theil": lambda d, **_: theil(d),
    "mld": lambda d, **_: mld(d),
    "ge": _ge_by_alpha,
    "atkinson": _atk,
    "palma_decile": lambda d, **_: palma_decile_ratio(d),
    "palma_share": _palma_share,
}

_PARAMS = {
    "ge": ("alpha",),
    "atkinson": ("epsilon",),
    "palma_share": ("top_percent", "bottom_percent"),
}
_DEFAULTS = {
    "alpha": DEFAULT_ALPHA,
    "epsilon": DEFAULT_EPSILON,
    "top_percent": 10.0,
    "bottom_percent": 40.0,
}


def evaluator(index: str, **params) -> Callable[[WeightedDistribution], float]:
    """Bind ``params`` to a named index, returning ``d -> value``."""
    if index not in INDICES:
        raise UnknownIndex(f"unknown index {index!r}; choose from {sorted(INDICES)}")
    fn = INDICES[index]
    used = {k: params.get(k, _DEFAULTS[k]) for k in _PARAMS.get(index, ())}
    return lambda d: fn(d, **used)


def evaluate(index: str, d: WeightedDistribution, **params) -> IndexResult:
    used = {k: float(params.get(k, _DEFAULTS[k])) for k in _PARAMS.get(index, ())}
    return IndexResult(index, evaluator(index, **used)(d), used)
