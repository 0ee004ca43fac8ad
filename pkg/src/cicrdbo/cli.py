"""Command line interface: bench, sweep, and tune-rf subcommands."""

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import engine, objectives
from .crisscross import CrossoverParams
from .dbo import DboParams
from .engine import ConfigurationError, OptimizerConfig, StatsRow
from .rf import DEFAULT_HYPERPARAMS, cv_fitness, evaluate_model, load_dataset
from .rf import stratified_split, train_forest, tune
from .rf.tuning import stratified_folds


def _add_common(p):
    p.add_argument("--pop", type=int, default=30)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ph", type=float, default=1.0)
    p.add_argument("--pv", type=float, default=0.6)


def _config(algo, args) -> OptimizerConfig:
    return OptimizerConfig(
        algorithm=algo,
        pop_size=args.pop,
        max_iters=args.iters,
        seed=args.seed,
        dbo=DboParams(),
        crossover=CrossoverParams(ph=args.ph, pv=args.pv),
    ).validate()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cicrdbo")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", help="run benchmark batches and export best/mean/std")
    b.add_argument("--algo", choices=["dbo", "cicrdbo", "both"], default="both")
    b.add_argument("--functions", default="all",
                   help="'all', or a comma-separated list of function names")
    b.add_argument("--list", action="store_true", help="list suite functions and exit")
    b.add_argument("--dim", type=int, default=30)
    b.add_argument("--runs", type=int, default=30)
    b.add_argument("--out", type=Path, default=None)
    b.add_argument("--trace-dir", type=Path, default=None)
    _add_common(b)

    s = sub.add_parser("sweep", help="sweep one parameter over a value list")
    s.add_argument("--param", required=True)
    s.add_argument("--values", required=True, help="comma-separated values")
    s.add_argument("--function", required=True)
    s.add_argument("--algo", choices=["dbo", "cicrdbo"], default="cicrdbo")
    s.add_argument("--dim", type=int, default=30)
    s.add_argument("--runs", type=int, default=30)
    s.add_argument("--out", type=Path, default=None)
    _add_common(s)

    t = sub.add_parser("tune-rf", help="tune forest hyperparameters on the wholesale data")
    t.add_argument("--data", type=Path, required=True)
    t.add_argument("--algo", choices=["dbo", "cicrdbo"], default="cicrdbo")
    t.add_argument("--runs", type=int, default=1,
                   help="independent tuning restarts; best CV AUC wins")
    t.add_argument("--cv-folds", type=int, default=5)
    t.add_argument("--out", type=Path, default=None)
    t.add_argument("--report-table", type=Path, default=None,
                   help="also write a default/dbo/cicrdbo comparison CSV")
    _add_common(t)
    return parser


def _bench(args) -> int:
    suite = objectives.suite(args.dim)
    if args.list:
        for o in suite:
            print(f"{o.name}  box=[{o.box.lower[0]:g}, {o.box.upper[0]:g}]^{o.dim}")
        return 0
    if args.functions == "all":
        funcs = suite
    else:
        names = [n.strip() for n in args.functions.split(",") if n.strip()]
        by = {o.name: o for o in suite}
        missing = [n for n in names if n not in by]
        if missing:
            raise ConfigurationError(f"unknown function(s): {', '.join(missing)}")
        funcs = [by[n] for n in names]
    algos = ["dbo", "cicrdbo"] if args.algo == "both" else [args.algo]

    rows = []
    for algo in algos:
        config = _config(algo, args)
        for obj in funcs:
            stats, records = engine.run_batch(config, obj, args.runs)
            rows.append(StatsRow(algo, obj.name, args.dim, args.pop, args.iters,
                                 args.runs, stats.best, stats.mean, stats.std))
            print(f"{algo:8s} {obj.name:14s} best={stats.best:.6g} "
                  f"mean={stats.mean:.6g} std={stats.std:.6g}")
            if args.trace_dir is not None:
                args.trace_dir.mkdir(parents=True, exist_ok=True)
                for r in records:
                    seed = r.fingerprint.split("seed=")[1].split(":")[0]
                    engine.export_trace(
                        r, args.trace_dir / f"{algo}_{obj.name}_seed{seed}.csv")
    if args.out is not None:
        engine.export_stats(rows, args.out)
    return 0


def _sweep(args) -> int:
    obj = objectives.by_name(args.function, args.dim)
    base = _config(args.algo, args)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    table = engine.sweep(base, obj, args.param, values, args.runs)
    lines = []
    for v, stats in table:
        print(f"{args.param}={v:g}  best={stats.best:.6g} mean={stats.mean:.6g} "
              f"std={stats.std:.6g}")
        lines.append([args.param, v, stats.n_runs, stats.best, stats.mean, stats.std])
    if args.out is not None:
        with args.out.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["param", "value", "runs", "best", "mean", "std"])
            w.writerows(lines)
    return 0


def _tune_rf(args) -> int:
    data = load_dataset(args.data)
    results = []
    for i in range(args.runs):
        config = _config(args.algo, args)
        config = replace(config, seed=args.seed + i)
        results.append(tune(data, config, cv_folds=args.cv_folds))
    result = max(results, key=lambda r: r.cv_auc)
    print(json.dumps(result.to_dict(), indent=2))
    if args.out is not None:
        with args.out.open("w") as fh:
            json.dump(result.to_dict(), fh, indent=2)
    if args.report_table is not None:
        _report_table(data, args, result)
    return 0


def _report_table(data, args, tuned_result) -> None:
    """Table of default vs dbo vs cicrdbo test metrics (the requested algo
    reuses the tuning result; the other algo is tuned here)."""
    train, test = stratified_split(data, 0.7, args.seed)
    categories = data.categories()
    rows = []

    default_model = train_forest(train, DEFAULT_HYPERPARAMS, seed=args.seed,
                                 categories=categories)
    m = evaluate_model(default_model, test)
    rows.append(["default", m.precision, m.recall, m.f1, m.auc])

    for algo in ("dbo", "cicrdbo"):
        if algo == tuned_result.algorithm:
            m = tuned_result.test_metrics
        else:
            other = tune(data, _config(algo, args), cv_folds=args.cv_folds)
            m = other.test_metrics
        rows.append([algo, m.precision, m.recall, m.f1, m.auc])

    with args.report_table.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["model", "precision", "recall", "f1", "auc"])
        w.writerows(rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _bench(args)
        if args.command == "sweep":
            return _sweep(args)
        if args.command == "tune-rf":
            return _tune_rf(args)
        raise ConfigurationError(f"unknown command {args.command!r}")
    except (ConfigurationError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
