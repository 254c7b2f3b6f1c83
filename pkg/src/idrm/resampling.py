"""Bootstrap precision and grouped-data bias.

Records (survey rows) are resampled with replacement, each keeping its
weight. Random numbers come from numpy's PCG64; replicate ``b`` on attempt
``a`` uses ``SeedSequence([seed, b, a])``, so results are identical for any
number of worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import indices as ix
from ._parallel import pmap
from .distribution import WeightedDistribution, quantile_group
from .errors import IndexUndefinedOnResample, TooFewRecords, UndefinedIndexError, ValidationError

MAX_ATTEMPT_FACTOR = 10


@dataclass(frozen=True)
class BootstrapSummary:
    index: str
    observed: float
    replicates: int
    mean: float
    se: float
    cv_percent: float | None
    seed: int
    rejected: int
    values: tuple[float, ...] = ()

    def to_dict(self, include_values: bool = False) -> dict:
        out = {
            "index": self.index,
            "observed": self.observed,
            "replicates": self.replicates,
            "mean": self.mean,
            "se": self.se,
            "cv_percent": self.cv_percent,
            "seed": self.seed,
            "rejected": self.rejected,
        }
        if include_values:
            out["values"] = list(self.values)
        return out


def _rng(seed: int, b: int, attempt: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(b), int(attempt)])))


def bootstrap(
    d: WeightedDistribution,
    index: str | Callable[[WeightedDistribution], float],
    B: int = 1000,
    seed: int = 0,
    workers=None,
    name: str | None = None,
    **params,
) -> BootstrapSummary:
    """Bootstrap the sampling distribution of an index.

    Replicates on which the index is undefined (say, an all-zero draw) are
    redrawn; more than ``10 * B`` attempts in total raises
    :class:`IndexUndefinedOnResample`.
    """
    if B < 2:
        raise ValidationError("need at least 2 replicates")
    if d.n < 2:
        raise TooFewRecords("bootstrap needs at least 2 records")
    if callable(index):
        f, label = index, name or getattr(index, "__name__", "index")
    else:
        f, label = ix.evaluator(index, **params), index
    observed = f(d)
    n = d.n
    x, w = d.incomes, d.weights

    def replicate(b):
        for attempt in range(MAX_ATTEMPT_FACTOR * B):
            pick = _rng(seed, b, attempt).integers(0, n, size=n)
            try:
                return f(WeightedDistribution(x[pick], w[pick])), attempt
            except UndefinedIndexError:
                continue
        raise IndexUndefinedOnResample(f"replicate {b} never produced a defined value")

    results = pmap(replicate, range(B), workers)
    rejected = sum(a for _, a in results)
    if rejected > MAX_ATTEMPT_FACTOR * B:
        raise IndexUndefinedOnResample(f"{rejected} rejected draws exceed {MAX_ATTEMPT_FACTOR}x{B}")
    values = np.array([v for v, _ in results])
    mean = float(values.mean())
    se = float(values.std(ddof=1))
    cv = 100.0 * se / mean if mean > 0 else None
    return BootstrapSummary(label, float(observed), B, mean, se, cv, int(seed), int(rejected), tuple(values.tolist()))


@dataclass(frozen=True)
class BiasCurve:
    index: str
    micro: float
    groups: tuple[int, ...]
    values: tuple[float, ...]

    @property
    def relative_bias(self) -> tuple[float, ...]:
        """``(micro - grouped) / micro``; zero when both are zero, NaN if only micro is."""
        if self.micro == 0:
            return tuple(0.0 if v == 0 else float("nan") for v in self.values)
        return tuple((self.micro - v) / self.micro for v in self.values)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "micro": self.micro,
            "points": [
                {"groups": g, "value": v, "relative_bias": b}
                for g, v, b in zip(self.groups, self.values, self.relative_bias)
            ],
        }


def bias_sweep(
    micro: WeightedDistribution,
    group_counts: Sequence[int] = tuple(range(10, 101, 10)),
    indices: Sequence[str] = ("gini", "theil", "atkinson", "idrm"),
    **params,
) -> dict[str, BiasCurve]:
    """Evaluate each index on quantile-grouped versions of ``micro``."""
    grouped = {g: quantile_group(micro, g) for g in group_counts}
    out = {}
    for name in indices:
        f = ix.evaluator(name, **params)
        out[name] = BiasCurve(
            name, f(micro), tuple(int(g) for g in group_counts), tuple(f(grouped[g]) for g in group_counts)
        )
    return out
