"""Randomized checks of the standard inequality-measure axioms.

Axioms P1..P9: anonymity, scale invariance, replication invariance,
Dalton-Pigou transfers, transfer sensitivity, non-negativity, egalitarian
zero, upper bound at maximal concentration, additive subgroup
decomposability. Each check draws random distributions and admissible
transformations from a seed and classifies the index as ``holds``,
``holds-weak`` or ``violated``; violations carry a replayable witness.

Every trial has its own generator seeded by ``(seed, axiom, trial)``, so
verdicts do not depend on thread count or on which other axioms ran.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import indices as ix
from ._parallel import pmap
from .decomposition import GroupedPopulation, decompose
from .distribution import WeightedDistribution
from .errors import (
    InequalityError,
    NegativeResultingIncome,
    OrderBreakingTransfer,
    UndefinedIndexError,
    UnknownAxiom,
    ValidationError,
)

TOL = 1e-9

HOLDS = "holds"
HOLDS_WEAK = "holds-weak"
VIOLATED = "violated"


# --------------------------------------------------------------------------
# transformations


@dataclass(frozen=True)
class Permute:
    order: tuple[int, ...]


@dataclass(frozen=True)
class Scale:
    factor: float


@dataclass(frozen=True)
class Replicate:
    times: int


@dataclass(frozen=True)
class Transfer:
    """Each element of unit ``donor`` gives ``epsilon``; unit ``recipient``
    shares the total equally, so each of its elements gets
    ``epsilon * w_donor / w_recipient``. Positions index the records as given."""

    donor: int
    recipient: int
    epsilon: float


@dataclass(frozen=True)
class TransferPair:
    """Two same-sized transfers, one within a poorer pair and one within a richer pair."""

    low: Transfer
    high: Transfer


Transformation = Union[Permute, Scale, Replicate, Transfer]


def _describe(t) -> dict:
    out = {"kind": type(t).__name__.lower()}
    out.update({k: (list(v) if isinstance(v, tuple) else v) for k, v in t.__dict__.items()})
    return out


def apply(t: Transformation, d: WeightedDistribution) -> WeightedDistribution:
    """Return the transformed distribution. Transfers keep total income."""
    if isinstance(t, Permute):
        order = np.asarray(t.order, dtype=int)
        if sorted(order.tolist()) != list(range(d.n)):
            raise ValidationError("permutation does not match record count")
        return WeightedDistribution(d.incomes[order], d.weights[order])
    if isinstance(t, Scale):
        if not t.factor > 0:
            raise ValidationError("scale factor must be positive")
        return WeightedDistribution(d.incomes * t.factor, d.weights)
    if isinstance(t, Replicate):
        if t.times < 1:
            raise ValidationError("replication count must be >= 1")
        return WeightedDistribution(d.incomes, d.weights * t.times)
    if isinstance(t, Transfer):
        return _transfer(t, d)
    raise ValidationError(f"cannot apply {t!r}; use apply_pair for TransferPair")


def apply_pair(pair: TransferPair, d: WeightedDistribution):
    return apply(pair.low, d), apply(pair.high, d)


def _transfer(t: Transfer, d: WeightedDistribution) -> WeightedDistribution:
    j, i, eps = t.donor, t.recipient, t.epsilon
    if i == j or not (0 <= i < d.n and 0 <= j < d.n):
        raise ValidationError(f"bad transfer units {j} -> {i}")
    if not eps > 0:
        raise ValidationError("transfer size must be positive")
    x = d.incomes.copy()
    x[j] -= eps
    x[i] += eps * d.weights[j] / d.weights[i]
    if x[j] < 0:
        raise NegativeResultingIncome(f"unit {j} would end at {x[j]!r}")
    old = d.incomes
    for u in (i, j):
        if np.any((old[u] - old) * (x[u] - x) < 0):
            raise OrderBreakingTransfer(f"transfer {j} -> {i} of {eps!r} reorders incomes")
    return WeightedDistribution(x, d.weights)


# --------------------------------------------------------------------------
# random inputs


def random_distribution(rng: np.random.Generator, n: int | None = None, unit_weights: bool = False) -> WeightedDistribution:
    """Log-normal(0, 1) incomes with integer weights 1..5, ``n`` in 3..50."""
    if n is None:
        n = int(rng.integers(3, 51))
    x = rng.lognormal(0.0, 1.0, size=n)
    w = np.ones(n) if unit_weights else rng.integers(1, 6, size=n).astype(float)
    return WeightedDistribution(x, w)


def trial_rng(seed: int, axiom: str, trial: int) -> np.random.Generator:
    code = zlib.crc32(axiom.encode())
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), code, int(trial)])))


def progressive_transfer(d: WeightedDistribution, rng: np.random.Generator, donor_rank: int | None = None):
    """Draw an order-preserving rich-to-poor transfer, or ``None`` if none is large enough.

    The size is half the largest admissible one, and draws smaller than
    ``1e-3 * mean`` are rejected so index changes stay well above the
    comparison tolerance.
    """
    o = d.ordered
    x, w, pos = o.incomes, o.weights, o.order
    n = x.size
    floor = 1e-3 * o.mean
    for _ in range(50):
        rj = int(rng.integers(1, n)) if donor_rank is None else donor_rank
        ri = int(rng.integers(0, rj))
        if not x[ri] < x[rj]:
            continue
        k = w[rj] / w[ri]
        if ri + 1 == rj:
            cap = (x[rj] - x[ri]) / (1 + k)
        else:
            cap = min(x[rj] - x[rj - 1], (x[ri + 1] - x[ri]) / k)
        eps = 0.5 * cap
        if eps >= floor:
            return Transfer(int(pos[rj]), int(pos[ri]), float(eps))
    return None


# --------------------------------------------------------------------------
# decomposition schemes used by P9


def _random_partition(d: WeightedDistribution, rng) -> GroupedPopulation:
    g = int(rng.integers(2, min(5, d.n) + 1))
    labels = rng.integers(0, g, size=d.n)
    labels[:g] = np.arange(g)  # every group non-empty
    rng.shuffle(labels)
    return GroupedPopulation.from_records(d.incomes, d.weights, [f"g{k}" for k in labels])


def _smoothed(gp: GroupedPopulation) -> WeightedDistribution:
    ds = list(gp.groups.values())
    return WeightedDistribution(
        np.concatenate([np.full(g.n, g.mean) for g in ds]),
        np.concatenate([g.weights for g in ds]),
    )


def _residual_ge(alpha: float):
    def residual(gp: GroupedPopulation, f) -> float:
        pooled = gp.pooled()
        mu, m = pooled.mean, pooled.total_weight
        within = 0.0
        for g in gp.groups.values():
            s, v = g.total_weight / m, g.total_weight * g.mean / (m * mu)
            within += s ** (1 - alpha) * v**alpha * ix.ge(g, alpha)
        return f(pooled) - (within + ix.ge(_smoothed(gp), alpha))

    return residual


def _residual_gini(gp: GroupedPopulation, f) -> float:
    pooled = gp.pooled()
    mu, m = pooled.mean, pooled.total_weight
    within = sum(
        (g.total_weight / m) * (g.total_weight * g.mean / (m * mu)) * ix.gini(g) for g in gp.groups.values()
    )
    return f(pooled) - (within + ix.gini(_smoothed(gp)))


def _residual_atkinson(epsilon: float):
    # 1 - A = (1 - A_between)(1 - A_within), A_within built from group EDEs
    def residual(gp: GroupedPopulation, f) -> float:
        pooled = gp.pooled()
        ds = list(gp.groups.values())
        weights = np.array([g.total_weight for g in ds])
        edes = np.array([g.mean * (1 - ix.atkinson(g, epsilon)) for g in ds])
        means = np.array([g.mean for g in ds])
        between = ix.atkinson(WeightedDistribution(means, weights), epsilon)
        ede_of_edes = ix.equally_distributed_equivalent(WeightedDistribution(edes, weights), epsilon)
        ede_of_means = ix.equally_distributed_equivalent(WeightedDistribution(means, weights), epsilon)
        within = 1 - ede_of_edes / ede_of_means
        return f(pooled) - (1 - (1 - between) * (1 - within))

    return residual


def _residual_idrm(gp: GroupedPopulation, f) -> float:
    r = decompose(gp)
    return f(gp.pooled()) - (r.within + r.between)


def decomposition_scheme(index: str, **params) -> Callable:
    if index == "idrm":
        return _residual_idrm
    if index == "gini":
        return _residual_gini
    if index in ("theil", "mld", "ge"):
        alpha = {"theil": 1.0, "mld": 0.0}.get(index, params.get("alpha", ix.DEFAULT_ALPHA))
        return _residual_ge(alpha)
    if index == "atkinson":
        return _residual_atkinson(params.get("epsilon", ix.DEFAULT_EPSILON))
    raise ValidationError(f"no decomposition scheme for {index!r}")


# --------------------------------------------------------------------------
# trials


@dataclass
class Trial:
    outcome: str  # "pass" | "weak" | "fail"
    transformation: dict | None
    records: list
    values: dict
    note: str = ""


def _eval(f, d):
    try:
        return f(d)
    except UndefinedIndexError:
        return None


def _compare_equal(f, d, t):
    before, after = _eval(f, d), _eval(f, apply(t, d))
    ok = before is not None and after is not None and abs(after - before) <= TOL
    return Trial("pass" if ok else "fail", _describe(t), d.records(), {"before": before, "after": after})


def _p1(f, rng, ctx):
    d = random_distribution(rng)
    return _compare_equal(f, d, Permute(tuple(int(v) for v in rng.permutation(d.n))))


def _p2(f, rng, ctx):
    d = random_distribution(rng)
    return _compare_equal(f, d, Scale(float(10 ** rng.uniform(-3, 3))))


def _p3(f, rng, ctx):
    d = random_distribution(rng)
    return _compare_equal(f, d, Replicate(int(rng.integers(2, 6))))


def _transfer_trial(f, rng, from_max: bool):
    while True:
        d = random_distribution(rng)
        if np.sum(d.incomes == d.max) > 1:
            continue
        t = progressive_transfer(d, rng, donor_rank=d.n - 1 if from_max else None)
        if t is not None:
            break
    before, after = _eval(f, d), _eval(f, apply(t, d))
    vals = {"before": before, "after": after}
    if before is None or after is None:
        return Trial("fail", _describe(t), d.records(), vals, "index undefined")
    if after < before - TOL:
        outcome = "pass"
    elif after <= before + TOL:
        outcome = "weak"
    else:
        outcome = "fail"
    return Trial(outcome, _describe(t), d.records(), vals)


def _p4(f, rng, ctx):
    return _transfer_trial(f, rng, from_max=False)


def _p4_max(f, rng, ctx):
    return _transfer_trial(f, rng, from_max=True)


def _p5(f, rng, ctx):
    """Same-sized transfers inside a poor adjacent pair and a rich adjacent pair.

    Unit weights; the gaps are equalized by raising the lower member of the
    wider pair. The top unit is never involved.
    """
    while True:
        n = int(rng.integers(9, 51))
        x = np.sort(random_distribution(rng, n, unit_weights=True).incomes)
        r = int(rng.integers(0, n // 3))
        s = int(rng.integers(2 * n // 3, n - 2))
        h = min(x[r + 1] - x[r], x[s + 1] - x[s])
        x[r] = x[r + 1] - h
        x[s] = x[s + 1] - h
        if h >= 0.02 * x.mean() and x[s] >= 1.5 * x[r + 1]:
            break
    d = WeightedDistribution(x, np.ones(n))
    eps = h / 4
    pair = TransferPair(Transfer(r + 1, r, eps), Transfer(s + 1, s, eps))
    low, high = apply_pair(pair, d)
    lo, hi = _eval(f, low), _eval(f, high)
    vals = {"after_low_pair": lo, "after_high_pair": hi}
    desc = {"kind": "transfer_pair", "low": _describe(pair.low), "high": _describe(pair.high)}
    if lo is None or hi is None:
        return Trial("fail", desc, d.records(), vals, "index undefined")
    if lo < hi - TOL:
        outcome = "pass"
    elif lo <= hi + TOL:
        outcome = "weak"
    else:
        outcome = "fail"
    return Trial(outcome, desc, d.records(), vals)


def _p6(f, rng, ctx):
    d = random_distribution(rng)
    v = _eval(f, d)
    return Trial("pass" if v is not None and v >= -TOL else "fail", None, d.records(), {"value": v})


def _p7(f, rng, ctx):
    d = random_distribution(rng)
    d = WeightedDistribution(np.full(d.n, float(rng.lognormal())), d.weights)
    v = _eval(f, d)
    return Trial("pass" if v is not None and abs(v) <= TOL else "fail", None, d.records(), {"value": v})


def _p8(f, rng, ctx):
    """Maximal concentration bounds the index, and the bound is at most one."""
    d = random_distribution(rng)
    x = np.zeros(d.n)
    x[int(np.argmin(d.weights))] = d.total
    extreme = WeightedDistribution(x, d.weights)
    v, top = _eval(f, d), _eval(f, extreme)
    vals = {"value": v, "extreme": top}
    if v is None or top is None:
        return Trial("fail", None, d.records(), vals, "index undefined at maximal concentration")
    ok = v <= top + TOL and top <= 1 + TOL
    return Trial("pass" if ok else "fail", None, d.records(), vals, "" if ok else "exceeds [0, 1]")


def _p9(f, rng, ctx):
    d = random_distribution(rng)
    gp = _random_partition(d, rng)
    try:
        res = ctx["scheme"](gp, f)
    except InequalityError as exc:
        return Trial("fail", None, d.records(), {}, str(exc))
    labels = {"/".join(k): len(v) for k, v in gp.groups.items()}
    ok = abs(res) <= TOL
    return Trial("pass" if ok else "fail", {"kind": "partition", "group_sizes": labels}, d.records(), {"residual": res})


# id -> (trial function, mode); mode says how trial outcomes map to a verdict
AXIOMS: dict[str, tuple[Callable, str]] = {
    "P1": (_p1, "exact"),
    "P2": (_p2, "exact"),
    "P3": (_p3, "exact"),
    "P4": (_p4, "graded"),
    "P4-weak": (_p4, "weak"),
    "P4-strong": (_p4, "strong"),
    "P4-max": (_p4_max, "strong"),
    "P5": (_p5, "graded"),
    "P5-weak": (_p5, "weak"),
    "P5-strong": (_p5, "strong"),
    "P6": (_p6, "exact"),
    "P7": (_p7, "exact"),
    "P8": (_p8, "exact"),
    "P9": (_p9, "exact"),
}

# trials for these share a seed stream so P4, P4-weak and P4-strong see the same draws
_STREAM = {"P4-weak": "P4", "P4-strong": "P4", "P5-weak": "P5", "P5-strong": "P5"}


@dataclass(frozen=True)
class Witness:
    seed: int
    trial: int
    transformation: dict | None
    records: list
    values: dict
    note: str = ""

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class ComplianceVerdict:
    index: str
    axiom: str
    verdict: str
    trials: int
    witness: Witness | None = None
    note: str = ""
    counts: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        """Whether the axiom counts as met. Transfer sensitivity needs its strong form."""
        if self.axiom.startswith("P5"):
            return self.verdict == HOLDS
        return self.verdict in (HOLDS, HOLDS_WEAK)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "axiom": self.axiom,
            "verdict": self.verdict,
            "satisfied": self.satisfied,
            "trials": self.trials,
            "counts": dict(self.counts),
            "note": self.note,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


def _classify(mode: str, outcome: str) -> str:
    if mode == "weak":
        return "pass" if outcome in ("pass", "weak") else "fail"
    if mode == "strong":
        return "pass" if outcome == "pass" else "fail"
    if mode == "exact":
        return outcome if outcome != "weak" else "pass"
    return outcome


def check_axiom(index: str, axiom: str, trials: int = 500, seed: int = 0, workers=None, **params) -> ComplianceVerdict:
    """Test one axiom for a named index over ``trials`` random cases."""
    if axiom not in AXIOMS:
        raise UnknownAxiom(f"unknown axiom {axiom!r}; choose from {sorted(AXIOMS)}")
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    f = ix.evaluator(index, **params)
    trial_fn, mode = AXIOMS[axiom]
    ctx = {"scheme": decomposition_scheme(index, **params)} if axiom == "P9" else {}
    stream = _STREAM.get(axiom, axiom)

    def run(k):
        return trial_fn(f, trial_rng(seed, stream, k), ctx)

    results = pmap(run, range(trials), workers)
    outcomes = [_classify(mode, r.outcome) for r in results]
    counts = {o: outcomes.count(o) for o in ("pass", "weak", "fail")}
    witness = None
    if counts["fail"]:
        verdict = VIOLATED
        k = outcomes.index("fail")
    elif counts["weak"]:
        verdict = HOLDS_WEAK
        k = outcomes.index("weak")
    else:
        verdict = HOLDS
        k = None
    if k is not None:
        r = results[k]
        witness = Witness(int(seed), k, r.transformation, r.records, r.values, r.note)
    note = ""
    if axiom.startswith("P5"):
        note = "pairs exclude the top unit"
    if axiom == "P9" and verdict == VIOLATED and index == "gini":
        note = "no additive decomposition under this scheme"
    if axiom == "P9" and index == "atkinson":
        note = "multiplicative form: 1 - A = (1 - A_between)(1 - A_within)"
    return ComplianceVerdict(index, axiom, verdict, trials, witness, note, counts)


MATRIX_AXIOMS = ("P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9")
DEFAULT_INDICES = ("idrm", "gini", "theil", "mld", "atkinson")


def compliance_matrix(indices=DEFAULT_INDICES, trials: int = 500, seed: int = 0, workers=None, **params) -> list[ComplianceVerdict]:
    """One verdict per (index, axiom) over P1..P9.

    A ``holds-weak`` P4 verdict is annotated with the outcome of transfers
    from the top unit (``P4-max``).
    """
    out = []
    for index in indices:
        for axiom in MATRIX_AXIOMS:
            v = check_axiom(index, axiom, trials, seed, workers, **params)
            if axiom == "P4" and v.verdict == HOLDS_WEAK:
                top = check_axiom(index, "P4-max", trials, seed, workers, **params)
                strict = "strict" if top.verdict == HOLDS else "not strict"
                v = ComplianceVerdict(
                    v.index, v.axiom, v.verdict, v.trials, v.witness,
                    f"transfers from the maximum: {strict}", v.counts,
                )
            out.append(v)
    return out


def satisfied_count(verdicts: list[ComplianceVerdict], index: str) -> int:
    return sum(v.satisfied for v in verdicts if v.index == index and v.axiom in MATRIX_AXIOMS)


def matrix_rows(verdicts: list[ComplianceVerdict]) -> list[dict]:
    """One row per index: axiom -> verdict, plus the satisfied count."""
    rows: dict[str, dict] = {}
    for v in verdicts:
        row = rows.setdefault(v.index, {"index": v.index})
        row[v.axiom] = v.verdict
    for index, row in rows.items():
        row["satisfied"] = satisfied_count(verdicts, index)
        row["of"] = len(MATRIX_AXIOMS)
    return list(rows.values())
