"""Command-line interface.

Subcommands:

* ``bench``   tune and evaluate models over datasets, write a report table
* ``stats``   rank/Friedman/Nemenyi analysis of a report table
* ``fit``     train a single model and save it as JSON
* ``predict`` load a saved model and score a dataset

Exit codes: 0 on success, 1 on configuration errors, 2 when some datasets
failed inside an otherwise-successful bench run.
"""

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .bench import (
    BenchConfig,
    BenchSource,
    emit_report,
    make_estimator,
    run_benchmark,
    run_stats,
)
from .data import load_dataset_file, standardize
from .errors import FuzzySvmError
from .estimators import HyperParams, model_from_json, model_to_json
from .kernels import KernelSpec
from .metrics import evaluate_predictions
from .model_selection import (
    DEFAULT_A_GRID,
    DEFAULT_GAMMA_GRID,
    DEFAULT_MU_GRID,
    DEFAULT_ZETA_GRID,
    default_kernel_grid,
    grid_search,
)
from .solver import SolverConfig


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this CLI reserves 2 for
    # partial bench failures and uses 1 for configuration problems
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}")


def _parse_synthetic(spec, default_seed):
    """``moons:IR=5,n=1200,noise=0.2,seed=7`` -> BenchSource."""
    kind, _, rest = spec.partition(":")
    if kind != "moons":
        raise argparse.ArgumentTypeError(f"unknown synthetic kind {kind!r}")
    params = {"IR": 5.0, "n": 1200, "noise": 0.2, "seed": None}
    for item in filter(None, rest.split(",")):
        key, _, value = item.partition("=")
        if key not in params:
            raise argparse.ArgumentTypeError(f"unknown synthetic key {key!r}")
        params[key] = float(value)
    seed = int(params["seed"]) if params["seed"] is not None else default_seed
    n = int(params["n"])
    ir = params["IR"]
    n_minority = int(round(n / (ir + 1.0)))
    n_majority = n - n_minority
    name = f"moons_ir{ir:g}_n{n}_noise{params['noise']:g}_seed{seed}"
    return BenchSource(
        name=name,
        synthetic={
            "n_majority": n_majority, "n_minority": n_minority,
            "noise": params["noise"], "seed": seed,
        },
    )


def _collect_sources(paths, synthetic_specs, default_seed):
    sources = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files = sorted(
                f for f in path.iterdir()
                if f.suffix.lower() in (".dat", ".csv")
            )
            sources.extend(BenchSource(name=f.stem, path=str(f)) for f in files)
        else:
            sources.append(BenchSource(name=path.stem, path=str(p)))
    for spec in synthetic_specs:
        sources.append(_parse_synthetic(spec, default_seed))
    return tuple(sources)


def _add_grid_flags(p):
    p.add_argument("--zeta-grid", type=_float_list, default=DEFAULT_ZETA_GRID,
                   help="comma-separated regularization weights")
    p.add_argument("--mu-grid", type=_float_list, default=DEFAULT_MU_GRID,
                   help="comma-separated membership decay rates")
    p.add_argument("--a-grid", type=_float_list, default=DEFAULT_A_GRID,
                   help="comma-separated location thresholds in [1.1, 2]")
    p.add_argument("--gamma-grid", type=_float_list, default=DEFAULT_GAMMA_GRID,
                   help="comma-separated RBF gammas")
    p.add_argument("--no-linear", action="store_true",
                   help="drop the linear kernel from the kernel grid")


def _add_solver_flags(p):
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-passes", type=int, default=10_000)


def build_parser():
    parser = _Parser(prog="fuzzysvm",
                     description="cost-sensitive fuzzy SVM benchmark toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bench", parents=[], help="tune and evaluate models",
                       description="Run the tuning/evaluation protocol over datasets.")
    b.add_argument("--datasets", nargs="*", default=[],
                   help="dataset files (.dat/.csv) or directories of them")
    b.add_argument("--synthetic", action="append", default=[],
                   metavar="SPEC", help="e.g. moons:IR=5,n=1200,noise=0.2,seed=7")
    b.add_argument("--models", default="dec,sffsvm,isffsvm",
                   help="comma-separated subset of dec,sffsvm,isffsvm")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeats", type=int, default=3)
    b.add_argument("--folds", type=int, default=5)
    b.add_argument("--objective", default="f1", choices=("f1", "mcc", "aucpr"))
    b.add_argument("--test-fraction", type=float, default=0.2)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", required=True, help="report file to write")
    b.add_argument("--format", default="csv", choices=("csv", "json"))
    _add_grid_flags(b)
    _add_solver_flags(b)

    s = sub.add_parser("stats", help="rank/Friedman/Nemenyi analysis")
    s.add_argument("--results", required=True,
                   help="bench report CSV, or a wide datasets-x-models CSV")
    s.add_argument("--metric", default="f1", choices=("f1", "mcc", "aucpr"))
    s.add_argument("--alpha", type=float, default=0.05)
    s.add_argument("--critical-f", type=float, default=None,
                   help="F quantile to compare the Friedman F statistic against")
    s.add_argument("--out", default=None, help="optional JSON output path")

    f = sub.add_parser("fit", help="train one model and save it")
    f.add_argument("--data", required=True)
    f.add_argument("--model", default="isffsvm", choices=("dec", "sffsvm", "isffsvm"))
    f.add_argument("--zeta", type=float, default=1.0)
    f.add_argument("--mu", type=float, default=1.0)
    f.add_argument("--a", type=float, default=2.0)
    f.add_argument("--kernel", default="rbf", choices=("rbf", "linear"))
    f.add_argument("--gamma", type=float, default=1.0)
    f.add_argument("--tune", action="store_true",
                   help="grid-search hyperparameters before the final fit")
    f.add_argument("--folds", type=int, default=5)
    f.add_argument("--cv-repeats", type=int, default=1)
    f.add_argument("--objective", default="f1", choices=("f1", "mcc", "aucpr"))
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--no-standardize", action="store_true")
    f.add_argument("--out", required=True)
    _add_grid_flags(f)
    _add_solver_flags(f)

    p = sub.add_parser("predict", help="score a dataset with a saved model")
    p.add_argument("--model-file", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--no-labels", action="store_true",
                   help="treat every CSV column as a feature")
    p.add_argument("--out", default=None, help="prediction CSV (default stdout)")

    return parser


def _cmd_bench(args):
    sources = _collect_sources(args.datasets, args.synthetic, args.seed)
    models = tuple(m.strip() for m in args.models.split(",") if m.strip())
    cfg = BenchConfig(
        sources=sources,
        models=models,
        zeta_grid=args.zeta_grid,
        mu_grid=args.mu_grid,
        a_grid=args.a_grid,
        gamma_grid=args.gamma_grid,
        include_linear=not args.no_linear,
        k=args.folds,
        repeats=args.repeats,
        seed=args.seed,
        test_fraction=args.test_fraction,
        objective=args.objective,
        workers=args.workers,
        solver=SolverConfig(kkt_tolerance=args.tol, max_passes=args.max_passes),
    )
    rows = run_benchmark(cfg)
    emit_report(rows, args.format, args.out)
    failed = [r for r in rows if r.error]
    for r in failed:
        print(f"dataset {r.dataset!r} model {r.model!r} failed: {r.error}",
              file=sys.stderr)
    print(f"wrote {args.out} ({len(rows)} rows, {len(failed)} failures)")
    return 2 if failed else 0


def _cmd_stats(args):
    text = Path(args.results).read_text()
    report = run_stats(text, metric=args.metric, alpha=args.alpha,
                       critical_f=args.critical_f)
    sys.stdout.write(report.to_text())
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_dict(), indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0


def _cmd_fit(args):
    ds = load_dataset_file(args.data)
    scaler = None
    if not args.no_standardize:
        ds, _, scaler = standardize(ds)
    solver = SolverConfig(kkt_tolerance=args.tol, max_passes=args.max_passes)

    if args.tune:
        gs = grid_search(
            ds, model=args.model,
            zeta_grid=args.zeta_grid, mu_grid=args.mu_grid, a_grid=args.a_grid,
            kernel_grid=default_kernel_grid(args.gamma_grid, not args.no_linear),
            k=args.folds, repeats=args.cv_repeats, seed=args.seed,
            objective=args.objective, config=solver,
        )
        hp = gs.best
        print(f"tuned hyperparameters: {hp}  (cv {args.objective}={gs.best_score:.4f})")
    else:
        kernel = KernelSpec(args.kernel, args.gamma if args.kernel == "rbf" else None)
        hp = HyperParams(
            zeta=args.zeta,
            mu=None if args.model == "dec" else args.mu,
            a={"dec": None, "sffsvm": 2.0, "isffsvm": args.a}[args.model],
            kernel=kernel,
        )
    est = make_estimator(args.model, hp, solver)
    est.fit(ds.features, ds.labels)
    Path(args.out).write_text(model_to_json(est, scaler=scaler, indent=2) + "\n")
    print(f"wrote {args.out}")
    return 0


def _cmd_predict(args):
    est, scaler = model_from_json(Path(args.model_file).read_text())

    labels = None
    if args.no_labels:
        text = Path(args.data).read_text()
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        X = np.array([[float(v) for v in r] for r in rows[1:]])
    else:
        ds = load_dataset_file(args.data)
        X, labels = ds.features, ds.labels
    if scaler is not None:
        X = scaler.transform(X)

    scores = est.decision_function(X)
    preds = np.where(scores >= 0.0, 1, -1)

    lines = ["row,score,label"]
    lines += [f"{i},{s:.6f},{p:+d}" for i, (s, p) in enumerate(zip(scores, preds))]
    out_text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(out_text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(out_text)

    if labels is not None:
        m = evaluate_predictions(labels, preds, scores)
        print(
            f"f1={m['f1']:.4f} mcc={m['mcc']:.4f} aucpr={m['aucpr']:.4f} "
            f"precision={m['precision']:.4f} recall={m['recall']:.4f}",
            file=sys.stderr,
        )
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bench": _cmd_bench,
        "stats": _cmd_stats,
        "fit": _cmd_fit,
        "predict": _cmd_predict,
    }
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, FuzzySvmError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
