"""Command line interface.

    idrm compute data.csv --index gini,theil,atkinson,idrm --epsilon 2
    idrm decompose data.csv --levels 2
    idrm bootstrap data.csv --index idrm --B 1000 --seed 42
    idrm axioms --trials 500 --seed 1
    idrm lorenz data.csv
    idrm bias data.csv --groups 10,20,30
    idrm analytics data.csv

Exit codes: 0 ok, 2 invalid input, 3 index undefined for the data,
4 internal identity check failed.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import analytics, axioms, decomposition, indices, resampling
from .distribution import quantile_group
from .errors import InvariantBreach, UndefinedIndexError, ValidationError
from .io import dumps_csv, dumps_report, read_dataset


def _csv_list(text: str, cast=str) -> list:
    try:
        return [cast(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None


def _int_list(text):
    return _csv_list(text, int)


def _params(args) -> dict:
    out = {"epsilon": args.epsilon, "alpha": args.alpha}
    if getattr(args, "palma_cuts", None):
        out["top_percent"], out["bottom_percent"] = args.palma_cuts
    return out


def cmd_compute(args):
    data = read_dataset(args.file)
    d = data.distribution()
    if args.groups is not None:
        d = quantile_group(d, args.groups)
    results = [indices.evaluate(name, d, **_params(args)) for name in args.index]
    report = {
        "file": str(args.file),
        "records": len(data.incomes),
        "grouped": args.groups,
        "indices": [r.to_dict() for r in results],
    }
    rows = [{"index": r.index, "value": r.value, **r.params} for r in results]
    return report, rows


def cmd_decompose(args):
    gp = read_dataset(args.file).grouped()
    if args.levels == 2:
        rep = decomposition.hierarchical_decompose(gp)
        return rep.to_dict(), [r.to_dict() for r in rep.rows()]
    rep = decomposition.decompose(gp, level=1)
    rows = [{"level": "total", "label": "all", "idrm": rep.total, "between": rep.between,
             "within": rep.within, "population_share": 1.0, "income_share": 1.0}]
    rows += [{"level": "group", "label": "/".join(t.label), "idrm": t.within, "between": None, "within": None,
              "population_share": t.population_share, "income_share": t.income_share} for t in rep.groups]
    return rep.to_dict(), rows


def cmd_bootstrap(args):
    d = read_dataset(args.file).distribution()
    s = resampling.bootstrap(d, args.index, B=args.B, seed=args.seed, **_params(args))
    return s.to_dict(include_values=args.values), [s.to_dict()]


def cmd_axioms(args):
    verdicts = axioms.compliance_matrix(args.index, trials=args.trials, seed=args.seed, **_params(args))
    rows = axioms.matrix_rows(verdicts)
    report = {
        "trials": args.trials,
        "seed": args.seed,
        "matrix": rows,
        "verdicts": [v.to_dict() for v in verdicts],
    }
    return report, rows


def cmd_lorenz(args):
    curve = analytics.lorenz(read_dataset(args.file).distribution())
    rows = [{"population": p, "share": s, "scaled_share": ss}
            for (p, s), (_, ss) in zip(curve.points, curve.scaled_points)]
    return curve.to_dict(), rows


def cmd_bias(args):
    d = read_dataset(args.file).distribution()
    curves = resampling.bias_sweep(d, args.groups, args.index, **_params(args))
    report = {name: c.to_dict() for name, c in curves.items()}
    rows = [{"index": name, **p} for name, c in report.items() for p in c["points"]]
    return report, rows


def cmd_analytics(args):
    d = read_dataset(args.file).distribution()
    report = {
        "idrm": indices.idrm(d),
        "welfare": analytics.welfare(d),
        "tolerance": analytics.tolerance_tau(d),
        "x_mide": analytics.x_mide(d),
        "total_weight": d.total_weight,
        "mean": d.mean,
        "max": d.max,
    }
    try:
        report["palma_bounds"] = analytics.palma_bounds(d).to_dict()
    except UndefinedIndexError as exc:
        report["palma_bounds"] = {"error": str(exc)}
    flat = {k: v for k, v in report.items() if k != "palma_bounds"}
    return report, [flat]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idrm", description="Inequality indices over weighted income data.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_file=True):
        if with_file:
            sp.add_argument("file", help="CSV with income[,weight][,group] columns")
        sp.add_argument("--epsilon", type=float, default=indices.DEFAULT_EPSILON, help="Atkinson aversion")
        sp.add_argument("--alpha", type=float, default=indices.DEFAULT_ALPHA, help="GE parameter")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", help="write report here instead of stdout")

    sp = sub.add_parser("compute", help="compute indices")
    common(sp)
    sp.add_argument("--index", type=_csv_list, default=["gini", "theil", "atkinson", "idrm"])
    sp.add_argument("--groups", type=int, help="quantile-group into this many groups first")
    sp.add_argument("--palma-cuts", type=lambda s: _csv_list(s, float), help="TOP,BOTTOM percents for palma_share")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("decompose", help="within/between decomposition")
    common(sp)
    sp.add_argument("--levels", type=int, choices=(1, 2), default=1)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("bootstrap", help="bootstrap standard error and CV")
    common(sp)
    sp.add_argument("--index", default="idrm")
    sp.add_argument("--B", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--values", action="store_true", help="include replicate values")
    sp.set_defaults(func=cmd_bootstrap)

    sp = sub.add_parser("axioms", help="axiom compliance matrix on generated data")
    common(sp, with_file=False)
    sp.add_argument("--index", type=_csv_list, default=list(axioms.DEFAULT_INDICES))
    sp.add_argument("--trials", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("lorenz", help="Lorenz curve and its scaled counterpart")
    common(sp)
    sp.set_defaults(func=cmd_lorenz)

    sp = sub.add_parser("bias", help="grouped-data bias sweep")
    common(sp)
    sp.add_argument("--groups", type=_int_list, default=list(range(10, 101, 10)))
    sp.add_argument("--index", type=_csv_list, default=["gini", "theil", "atkinson", "idrm"])
    sp.set_defaults(func=cmd_bias)

    sp = sub.add_parser("analytics", help="welfare, tolerance, MIDE income, Palma bounds")
    common(sp)
    sp.set_defaults(func=cmd_analytics)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        report, rows = args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UndefinedIndexError as exc:
        print(f"undefined: {exc}", file=sys.stderr)
        return 3
    except InvariantBreach as exc:
        print(f"internal: {exc}", file=sys.stderr)
        return 4
    text = dumps_csv(rows) if args.format == "csv" else dumps_report({args.command: report})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
