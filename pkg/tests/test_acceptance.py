"""Acceptance criteria, one test each. Results are echoed as PASS/FAIL lines
in the terminal summary."""

import numpy as np
import pytest

from idrm import (
    GroupedPopulation,
    WeightedDistribution,
    analytics as an,
    axioms as ax,
    bias_sweep,
    bootstrap,
    decompose,
    indices as ix,
)
from idrm.errors import DegenerateEquality, InvariantBreach
from idrm.io import read_dataset

from conftest import ACCEPTANCE, lognormal


def record(k, checks):
    """``checks`` maps a description to a bool; all must hold."""
    ok = all(checks.values())
    failed = [name for name, good in checks.items() if not good]
    text = "all checks" if ok else "failed: " + "; ".join(failed)
    ACCEPTANCE[k] = (ok, f"{len(checks)} checks, {text}")
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {ACCEPTANCE[k][1]}")
    assert ok, failed


def close(a, b, tol):
    return abs(a - b) <= tol


def test_criterion_1_five_person_example():
    d = WeightedDistribution.from_arrays([0, 10, 25, 50, 80])
    after = ax.apply(ax.Transfer(donor=1, recipient=0, epsilon=4), d)
    record(1, {
        "transfer gives 4,6,25,50,80": after.incomes.tolist() == [4, 6, 25, 50, 80],
        "gini 0.485": close(ix.gini(d), 0.485, 1e-3),
        "idrm 0.588": close(ix.idrm(d), 0.588, 1e-3),
        "gini after 0.475": close(ix.gini(after), 0.475, 1e-3),
        "idrm unchanged": close(ix.idrm(after), ix.idrm(d), 1e-12),
    })


def test_criterion_2_mexico_2022(data_dir):
    d = read_dataset(data_dir / "mexico2022_deciles.csv").distribution()
    record(2, {
        "gini": close(ix.gini(d), 0.40196, 5e-5),
        "theil": close(ix.theil(d), 0.27440, 5e-5),
        "atkinson eps=2": close(ix.atkinson(d, 2), 0.41313, 5e-5),
        "idrm": close(ix.idrm(d), 0.68263, 5e-5),
        "palma decile": close(ix.palma_decile_ratio(d), 14.97, 0.01),
    })


def test_criterion_3_mexico_2016(data_dir):
    d = read_dataset(data_dir / "mexico2016_deciles.csv").distribution()
    record(3, {
        "gini": close(ix.gini(d), 0.449, 1e-3),
        "palma decile": close(ix.palma_decile_ratio(d), 20.75, 0.01),
        "idrm": close(ix.idrm(d), 0.724, 2e-3),
    })


def test_criterion_4_summary_analytics():
    micro = an.Summary(126_014_024, 50_309, 10_702_107)
    dec = an.Summary(126_014_024, 50_309, 163_282)
    record(4, {
        "micro idrm": close(an.idrm_from_summary(micro), 0.9953, 5e-5),
        "micro tau": close(an.tolerance_tau(micro), 211.73, 0.01),
        "micro welfare": close(an.welfare(micro), 0.0047, 5e-5),
        "micro x_mide": close(an.x_mide(micro), 50_308.916, 1e-3),
        "decile idrm": close(an.idrm_from_summary(dec), 0.6919, 5e-5),
        "decile tau": close(an.tolerance_tau(dec), 2.25, 5e-3),
        "decile welfare": close(an.welfare(dec), 0.3081, 5e-5),
        "decile x_mide": close(an.x_mide(dec), 50_308.9991, 5e-4),
    })


def test_criterion_5_decomposition_identity():
    rng = np.random.default_rng(20240515)
    worst, breaches, one_group, singletons = 0.0, 0, True, True
    for _ in range(1000):
        n = int(rng.integers(2, 80))
        d = WeightedDistribution(rng.lognormal(0, rng.uniform(0.3, 2.0), n), rng.integers(1, 10, n).astype(float))
        g = int(rng.integers(1, min(n, 8) + 1))
        labels = rng.integers(0, g, n)
        try:
            rep = decompose(GroupedPopulation.from_records(d.incomes, d.weights, [f"g{v}" for v in labels]))
        except InvariantBreach:
            breaches += 1
            continue
        worst = max(worst, abs(rep.total - (rep.within + rep.between)))
    for seed in range(50):
        d = lognormal(int(5 + seed), seed, weights=True)
        one = decompose(GroupedPopulation.from_records(d.incomes, d.weights, ["all"] * d.n))
        single = decompose(GroupedPopulation.from_records(d.incomes, d.weights, [str(i) for i in range(d.n)]))
        one_group &= one.between == 0
        singletons &= single.within == 0
    print(f"max |residual| over 1000 partitions: {worst:.3e}")
    record(5, {
        "no residual >= 1e-12": breaches == 0 and worst < 1e-12,
        "one group gives IB = 0": one_group,
        "singleton groups give IW = 0": singletons,
    })


@pytest.fixture(scope="module")
def matrix():
    verdicts = ax.compliance_matrix(("idrm", "gini", "theil", "mld", "atkinson"), trials=500, seed=0)
    return {(v.index, v.axiom): v for v in verdicts}, verdicts


def test_criterion_6_compliance_matrix(matrix):
    by, verdicts = matrix
    H, W, V = ax.HOLDS, ax.HOLDS_WEAK, ax.VIOLATED
    idrm_row = {a: by["idrm", a].verdict for a in ax.MATRIX_AXIOMS}
    expected_idrm = {"P1": H, "P2": H, "P3": H, "P4": W, "P5": W, "P6": H, "P7": H, "P8": H, "P9": H}
    p4_max = ax.check_axiom("idrm", "P4-max", 500, seed=0)
    clean = all(by[k].counts["fail"] == 0 for k in by if by[k].verdict != V)
    for row in ax.matrix_rows(verdicts):
        print({k: row[k] for k in ("index", *ax.MATRIX_AXIOMS, "satisfied")})
    record(6, {
        "idrm row": idrm_row == expected_idrm,
        "idrm strict from the maximum": p4_max.verdict == H and "strict" in by["idrm", "P4"].note,
        "idrm 8 of 9": ax.satisfied_count(verdicts, "idrm") == 8,
        "gini strong P4, P5 not strong": by["gini", "P4"].verdict == H and by["gini", "P5"].verdict == W,
        "gini range": all(by["gini", a].verdict == H for a in ("P6", "P7", "P8")),
        "theil strong P4 and P5": by["theil", "P4"].verdict == H and by["theil", "P5"].verdict == H,
        "theil outside [0, 1]": by["theil", "P8"].verdict == V,
        "atkinson strong P4": by["atkinson", "P4"].verdict == H,
        "atkinson range": all(by["atkinson", a].verdict == H for a in ("P6", "P7", "P8")),
        "no trial contradicts a holding verdict": clean,
    })


def test_criterion_7_palma_form():
    rng = np.random.default_rng(7)
    worst, bracket, nop_ok = 0.0, True, True
    for _ in range(1000):
        n = int(rng.integers(2, 60))
        d = WeightedDistribution(rng.lognormal(0, rng.uniform(0.1, 2.0), n), rng.uniform(0.5, 20, n))
        worst = max(worst, abs(an.idrm_via_palma_form(d) - ix.idrm(d)))
        try:
            b = an.palma_bounds(d)
        except DegenerateEquality:
            continue
        bracket &= b.lower - 1e-12 <= b.idrm <= b.upper + 1e-12
        nop_ok &= -1e-12 <= b.nop <= 1 + 1e-12
    print(f"max |palma form - idrm| over 1000 distributions: {worst:.3e}")
    record(7, {"identity within 1e-12": worst <= 1e-12, "bounds bracket": bracket, "NoP in [0, 1]": nop_ok})


def test_criterion_8_grouping_bias():
    gs = list(range(10, 101, 10))
    monotone = below = converge = True
    for seed in range(5):
        d = lognormal(2000, 100 + seed)
        c = bias_sweep(d, gs, ["idrm"])["idrm"]
        v = np.array(c.values)
        monotone &= bool(np.all(np.diff(v) >= -1e-12))
        below &= bool(np.all(v <= c.micro + 1e-12))
        for name, curve in bias_sweep(d, [10, 100, 1000, 2000]).items():
            gaps = np.abs(np.array(curve.values) - curve.micro)
            converge &= bool(np.all(np.diff(gaps) <= 1e-12) and gaps[-1] <= 1e-12)
    record(8, {"idrm non-decreasing in g": monotone, "grouped <= micro": below, "converges as g -> n": converge})


def test_criterion_9_bootstrap():
    d = lognormal(300, 9, weights=True)
    a = bootstrap(d, "idrm", B=400, seed=42, workers=1)
    b = bootstrap(d, "idrm", B=400, seed=42, workers=4)
    within = True
    for name in ("idrm", "gini", "theil", "atkinson"):
        s = bootstrap(d, name, B=400, seed=1)
        within &= abs(s.mean - s.observed) <= 3 * s.se
    const = bootstrap(WeightedDistribution.from_arrays([3.0] * 25, range(1, 26)), "idrm", B=100, seed=0)
    record(9, {
        "same seed, same replicates": a == b,
        "mean within 3 SE": within,
        "constant data SE = 0": const.se == 0,
    })
