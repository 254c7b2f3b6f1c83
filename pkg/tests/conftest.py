from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from idrm import WeightedDistribution

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE: dict[int, tuple[bool, str]] = {}

MEXICO = {
    2016: [11141, 19382, 25811, 32138, 39311, 47537, 57904, 72868, 98333, 231226],
    2018: [11183, 19755, 26288, 32743, 39640, 47777, 57979, 72239, 96445, 205106],
    2020: [11333, 19229, 25400, 31426, 38050, 45737, 55501, 69103, 91726, 186198],
    2022: [13411, 22421, 29201, 35947, 43341, 51924, 62412, 76736, 100866, 200696],
}


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def mexico():
    return {y: WeightedDistribution.from_arrays(v) for y, v in MEXICO.items()}


incomes_st = st.floats(min_value=0.01, max_value=1e6, allow_nan=False, allow_infinity=False)
weights_st = st.floats(min_value=0.1, max_value=100, allow_nan=False, allow_infinity=False)


@st.composite
def distributions(draw, min_size=1, max_size=40, positive=True, int_weights=False):
    n = draw(st.integers(min_size, max_size))
    lo = 0.01 if positive else 0.0
    xs = draw(st.lists(st.floats(lo, 1e6, allow_nan=False), min_size=n, max_size=n))
    if int_weights:
        ws = draw(st.lists(st.integers(1, 20), min_size=n, max_size=n))
    else:
        ws = draw(st.lists(weights_st, min_size=n, max_size=n))
    if max(xs) == 0:
        xs[0] = 1.0
    return WeightedDistribution.from_arrays(xs, ws)


def lognormal(n, seed, weights=False):
    rng = np.random.default_rng(seed)
    x = rng.lognormal(0.0, 1.0, n)
    w = rng.integers(1, 6, n) if weights else None
    return WeightedDistribution.from_arrays(x, w)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {text}")
