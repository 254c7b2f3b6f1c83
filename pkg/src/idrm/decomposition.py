"""Additive within/between decomposition of the relative-to-maximum index.

For a partition into groups ``k`` with population shares ``s_k`` and group
maxima ``M_k`` (global maximum ``M``)::

    idrm(total) = sum_k (M_k / M) * s_k * idrm(k)  +  (1 - sum_k s_k M_k / M)
                  \\______________ IW ____________/     \\_______ IB ________/

``s_k * idrm(k)`` is the group term measured with global population
proportions; IB is the index of the vector of group maxima weighted by the
group shares.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .distribution import WeightedDistribution, validate
from .errors import EmptyGroup, InconsistentHierarchy, InvariantBreach, UndefinedForZeroMax
from .indices import idrm

IDENTITY_TOL = 1e-12

Label = tuple[str, ...]


def parse_label(label: str | Sequence[str]) -> Label:
    if isinstance(label, str):
        parts = tuple(part.strip() for part in label.split("/"))
    else:
        parts = tuple(str(part) for part in label)
    if not parts or any(not part for part in parts):
        raise InconsistentHierarchy(f"malformed group label {label!r}")
    return parts


@dataclass(frozen=True, eq=False)
class GroupedPopulation:
    """A population partitioned by label paths such as ``("Americas", "Mexico")``."""

    groups: Mapping[Label, WeightedDistribution]

    def __post_init__(self):
        if not self.groups:
            raise EmptyGroup("no groups")
        depths = {len(label) for label in self.groups}
        if len(depths) != 1:
            raise InconsistentHierarchy(f"group labels mix hierarchy depths {sorted(depths)}")
        for label, d in self.groups.items():
            if d.n == 0:
                raise EmptyGroup(f"group {'/'.join(label)!r} is empty")

    @classmethod
    def from_records(cls, incomes, weights, labels: Iterable) -> "GroupedPopulation":
        buckets: dict[Label, list] = defaultdict(list)
        incomes = np.asarray(incomes, dtype=float)
        weights = np.ones_like(incomes) if weights is None else np.asarray(weights, dtype=float)
        for x, w, lab in zip(incomes, weights, labels):
            buckets[parse_label(lab)].append((x, w))
        return cls({label: validate(rows) for label, rows in buckets.items()})

    @property
    def depth(self) -> int:
        return len(next(iter(self.groups)))

    def pooled(self) -> WeightedDistribution:
        return WeightedDistribution(
            np.concatenate([d.incomes for d in self.groups.values()]),
            np.concatenate([d.weights for d in self.groups.values()]),
        )

    def collapse(self, level: int) -> "GroupedPopulation":
        """Merge groups sharing the first ``level`` label components."""
        if not 1 <= level <= self.depth:
            raise InconsistentHierarchy(f"level {level} outside 1..{self.depth}")
        merged: dict[Label, list[WeightedDistribution]] = defaultdict(list)
        for label, d in self.groups.items():
            merged[label[:level]].append(d)
        return GroupedPopulation({
            label: WeightedDistribution(
                np.concatenate([d.incomes for d in ds]), np.concatenate([d.weights for d in ds])
            )
            for label, ds in merged.items()
        })

    def children(self, prefix: Label) -> "GroupedPopulation":
        """Sub-population under ``prefix``, relabelled by the next component."""
        n = len(prefix)
        sub = {label[n:]: d for label, d in self.groups.items() if label[:n] == prefix}
        return GroupedPopulation(sub).collapse(1)


@dataclass(frozen=True)
class GroupTerm:
    label: Label
    group_idrm: float  # the group's own index against its own maximum
    population_share: float  # s_k
    income_share: float
    group_max: float  # M_k
    scale: float  # M_k / M

    @property
    def idrm_k(self) -> float:
        """Group term with global population proportions: ``s_k * idrm(k)``."""
        return self.population_share * self.group_idrm

    @property
    def within(self) -> float:
        return self.scale * self.idrm_k

    def to_dict(self) -> dict:
        return {
            "label": "/".join(self.label),
            "group_idrm": self.group_idrm,
            "idrm_k": self.idrm_k,
            "population_share": self.population_share,
            "income_share": self.income_share,
            "group_max": self.group_max,
            "scale": self.scale,
            "within": self.within,
        }


@dataclass(frozen=True)
class DecompositionReport:
    groups: tuple[GroupTerm, ...]
    within: float  # IW
    between: float  # IB
    total: float
    global_max: float

    @property
    def residual(self) -> float:
        return self.total - (self.within + self.between)

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "within": self.within,
            "between": self.between,
            "residual": self.residual,
            "global_max": self.global_max,
            "groups": [g.to_dict() for g in self.groups],
        }


def _group_idrm(d: WeightedDistribution) -> float:
    # all-zero group: internally equal
    return 0.0 if d.max == 0 else idrm(d)


def decompose(gp: GroupedPopulation, level: int = 1) -> DecompositionReport:
    """Split the pooled index into within-group and between-group terms.

    Groups are formed from the first ``level`` label components. The pooled
    total is computed independently from the concatenated records and the
    identity is checked against it.
    """
    if level != gp.depth:
        gp = gp.collapse(level)
    pooled = gp.pooled()
    top = pooled.max
    if not top > 0:
        raise UndefinedForZeroMax("decomposition needs a positive global maximum")
    m_total = pooled.total_weight
    t_total = pooled.total
    terms = []
    for label in sorted(gp.groups):
        d = gp.groups[label]
        terms.append(GroupTerm(
            label=label,
            group_idrm=_group_idrm(d),
            population_share=d.total_weight / m_total,
            income_share=d.total / t_total,
            group_max=d.max,
            scale=d.max / top,
        ))
    within = float(sum(t.within for t in terms))
    between = float(1.0 - sum(t.population_share * t.scale for t in terms))
    report = DecompositionReport(tuple(terms), within, between, idrm(pooled), top)
    if abs(report.residual) > IDENTITY_TOL:
        raise InvariantBreach(f"decomposition residual {report.residual:.3e} exceeds {IDENTITY_TOL}")
    return report


@dataclass(frozen=True)
class TableRow:
    level: str
    label: str
    idrm: float
    between: float | None
    within: float | None
    population_share: float
    income_share: float

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class HierarchicalReport:
    top: DecompositionReport
    children: dict  # top-level label -> DecompositionReport of its subgroups

    def rows(self) -> list[TableRow]:
        """Flatten into rows whose values are contributions to the overall index.

        A group's contribution is ``(M_k / M) * s_k * idrm(k)``; its between
        and within columns are its own decomposition scaled by the same
        factor, so each level sums to the ``within`` of the level above.
        """
        top = self.top
        rows = [TableRow("total", "all", top.total, top.between, top.within, 1.0, 1.0)]
        for term in top.groups:
            factor = term.scale * term.population_share
            child = self.children[term.label]
            rows.append(TableRow(
                "group", "/".join(term.label), term.within,
                factor * child.between, factor * child.within,
                term.population_share, term.income_share,
            ))
        for term in top.groups:
            child = self.children[term.label]
            factor = term.scale * term.population_share
            for sub in child.groups:
                rows.append(TableRow(
                    "subgroup", "/".join(term.label + sub.label), factor * sub.within, None, None,
                    term.population_share * sub.population_share,
                    term.income_share * sub.income_share,
                ))
        return rows

    def to_dict(self) -> dict:
        return {
            "top": self.top.to_dict(),
            "children": {"/".join(k): v.to_dict() for k, v in self.children.items()},
            "rows": [r.to_dict() for r in self.rows()],
        }


def hierarchical_decompose(gp: GroupedPopulation) -> HierarchicalReport:
    """Two-level decomposition: groups, then each group's subgroups."""
    if gp.depth != 2:
        raise InconsistentHierarchy(f"two-level labels required, got depth {gp.depth}")
    top = decompose(gp, level=1)
    children = {}
    for term in top.groups:
        sub = gp.children(term.label)
        children[term.label] = decompose(sub) if term.group_max > 0 else _all_zero_report(sub)
    return HierarchicalReport(top, children)


def _all_zero_report(gp: GroupedPopulation) -> DecompositionReport:
    pooled = gp.pooled()
    terms = tuple(
        GroupTerm(label, 0.0, d.total_weight / pooled.total_weight, 0.0, 0.0, 0.0)
        for label, d in sorted(gp.groups.items())
    )
    return DecompositionReport(terms, 0.0, 0.0, 0.0, 0.0)
