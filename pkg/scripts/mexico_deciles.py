"""Indices, Palma decomposition and welfare terms for the ENIGH decile fixtures.

    python scripts/mexico_deciles.py --years 2016 2018 2020 2022
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from idrm import analytics, indices
from idrm.io import read_dataset

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class Config:
    years: list[int] = field(default_factory=lambda: [2016, 2018, 2020, 2022])
    epsilon: float = 2.0
    data_dir: Path = DATA


def run(cfg: Config) -> list[dict]:
    rows = []
    for year in cfg.years:
        d = read_dataset(cfg.data_dir / f"mexico{year}_deciles.csv").distribution()
        b = analytics.palma_bounds(d)
        rows.append({
            "year": year,
            "gini": indices.gini(d),
            "theil": indices.theil(d),
            "atkinson": indices.atkinson(d, cfg.epsilon),
            "idrm": indices.idrm(d),
            "palma": indices.palma_decile_ratio(d),
            "idrm_low": b.lower,
            "idrm_high": b.upper,
            "nop": b.nop,
            "welfare": analytics.welfare(d),
            "tau": analytics.tolerance_tau(d),
        })
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--years", type=int, nargs="+", default=Config().years)
    p.add_argument("--epsilon", type=float, default=2.0)
    args = p.parse_args()
    rows = run(Config(args.years, args.epsilon))
    cols = list(rows[0])
    print("  ".join(f"{c:>9}" for c in cols))
    for r in rows:
        print("  ".join(f"{r[c]:>9}" if c == "year" else f"{r[c]:>9.5f}" for c in cols))


if __name__ == "__main__":
    main()
