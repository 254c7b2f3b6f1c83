"""Axiom compliance matrix for the implemented indices.

    python scripts/compliance_table.py --trials 500 --seed 0
"""

import argparse
from dataclasses import dataclass

from idrm import axioms


@dataclass
class Config:
    trials: int = 500
    seed: int = 0
    indices: tuple[str, ...] = axioms.DEFAULT_INDICES


SHORT = {axioms.HOLDS: "yes", axioms.HOLDS_WEAK: "weak", axioms.VIOLATED: "no"}


def run(cfg: Config):
    return axioms.compliance_matrix(cfg.indices, trials=cfg.trials, seed=cfg.seed)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--index", nargs="+", default=list(Config.indices))
    args = p.parse_args()
    verdicts = run(Config(args.trials, args.seed, tuple(args.index)))
    print(f"{'index':<10}" + "".join(f"{a:>6}" for a in axioms.MATRIX_AXIOMS) + "  count")
    for row in axioms.matrix_rows(verdicts):
        cells = "".join(f"{SHORT[row[a]]:>6}" for a in axioms.MATRIX_AXIOMS)
        print(f"{row['index']:<10}{cells}  {row['satisfied']}/{row['of']}")
    notes = [v for v in verdicts if v.note]
    if notes:
        print()
        for v in notes:
            print(f"{v.index} {v.axiom}: {v.note}")


if __name__ == "__main__":
    main()
