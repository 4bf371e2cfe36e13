"""Benchmark orchestration: tune, evaluate, and report over many datasets.

For every (dataset, model) pair the protocol is, per repeat seed: split
80:20 stratified, standardize on the training part, grid-search by
cross-validation on the training part, refit the winner on the full training
part, and score the held-out part. Reported numbers are means and standard
deviations over the repeat seeds. Failures are recorded per dataset in the
report's error column and do not stop the run.
"""

import csv
import io
import json
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .data import (
    Dataset,
    load_dataset_file,
    make_imbalanced_moons,
    standardize,
    train_test_split,
)
from .estimators import (
    DECClassifier,
    HyperParams,
    ISFFSVMClassifier,
    SFFSVMClassifier,
)
from .metrics import evaluate_predictions
from .model_selection import (
    DEFAULT_A_GRID,
    DEFAULT_GAMMA_GRID,
    DEFAULT_MU_GRID,
    DEFAULT_ZETA_GRID,
    MODEL_NAMES,
    default_kernel_grid,
    grid_search,
)
from .solver import SolverConfig
from .stats import (
    ScoreMatrix,
    friedman,
    nemenyi_cd,
    nemenyi_pairs,
    rank_rows,
    score_matrix_from_csv,
)

REPORT_COLUMNS = (
    "dataset", "model",
    "f1_mean", "f1_std", "mcc_mean", "mcc_std", "aucpr_mean", "aucpr_std",
    "chosen_a", "chosen_zeta", "chosen_mu", "chosen_kernel", "error",
)


@dataclass(frozen=True)
class BenchSource:
    """One dataset to benchmark: a file on disk or a synthetic recipe."""

    name: str
    path: str | None = None
    synthetic: dict | None = None

    def load(self):
        if self.synthetic is not None:
            s = self.synthetic
            return make_imbalanced_moons(
                n_majority=s["n_majority"], n_minority=s["n_minority"],
                noise=s["noise"], seed=s["seed"],
            )
        return load_dataset_file(self.path)


@dataclass(frozen=True)
class BenchConfig:
    sources: tuple
    models: tuple = MODEL_NAMES
    zeta_grid: tuple = DEFAULT_ZETA_GRID
    mu_grid: tuple = DEFAULT_MU_GRID
    a_grid: tuple = DEFAULT_A_GRID
    gamma_grid: tuple = DEFAULT_GAMMA_GRID
    include_linear: bool = True
    k: int = 5
    repeats: int = 3
    seed: int = 0
    test_fraction: float = 0.2
    objective: str = "f1"
    workers: int = 1
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if not self.sources:
            raise ValueError("at least one dataset is required")
        if not self.models:
            raise ValueError("at least one model is required")
        unknown = [m for m in self.models if m not in MODEL_NAMES]
        if unknown:
            raise ValueError(f"unknown model(s) {unknown}; pick from {MODEL_NAMES}")
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError("test_fraction must be in (0, 1)")
        if self.repeats < 1:
            raise ValueError("repeats must be at least 1")


@dataclass(frozen=True)
class BenchRow:
    dataset: str
    model: str
    f1_mean: float = np.nan
    f1_std: float = np.nan
    mcc_mean: float = np.nan
    mcc_std: float = np.nan
    aucpr_mean: float = np.nan
    aucpr_std: float = np.nan
    chosen: HyperParams | None = None
    error: str = ""


def make_estimator(model_name, hp, solver=SolverConfig()):
    """Instantiate the estimator class for a model name at a grid point."""
    common = {
        "zeta": hp.zeta,
        "kernel": hp.kernel.kind,
        "gamma": hp.kernel.gamma if hp.kernel.kind == "rbf" else 1.0,
        "tol": solver.kkt_tolerance,
        "max_passes": solver.max_passes,
        "cache_rows": solver.cache_budget,
    }
    if model_name == "dec":
        return DECClassifier(**common)
    if model_name == "sffsvm":
        return SFFSVMClassifier(mu=hp.mu, **common)
    return ISFFSVMClassifier(mu=hp.mu, a=hp.a, **common)


def _mode_params(chosen_list):
    """Most frequently selected grid point; ties go to the least aggressive
    one (smaller a, zeta, mu, then kernel string)."""
    counts = Counter(chosen_list)
    def sort_key(hp):
        return (
            -counts[hp],
            hp.a if hp.a is not None else 0.0,
            hp.zeta,
            hp.mu if hp.mu is not None else 0.0,
            str(hp.kernel),
        )
    return min(counts, key=sort_key)


def _bench_one_model(ds, model_name, cfg):
    kernel_grid = default_kernel_grid(cfg.gamma_grid, cfg.include_linear)
    per_metric = {"f1": [], "mcc": [], "aucpr": []}
    chosen_list = []
    for r in range(cfg.repeats):
        seed_r = cfg.seed + r
        train, test = train_test_split(ds, cfg.test_fraction, seed_r)
        train_std, (test_std,), _scaler = standardize(train, [test])
        gs = grid_search(
            train_std, model=model_name,
            zeta_grid=cfg.zeta_grid, mu_grid=cfg.mu_grid, a_grid=cfg.a_grid,
            kernel_grid=kernel_grid, k=cfg.k, repeats=1, seed=seed_r,
            objective=cfg.objective, config=cfg.solver,
        )
        if not np.isfinite(gs.best_score):
            raise RuntimeError(
                f"every grid point failed; first error: {gs.table[0].failures[:1]}"
            )
        est = make_estimator(model_name, gs.best, cfg.solver)
        est.fit(train_std.features, train_std.labels)
        scores = est.decision_function(test_std.features)
        preds = est.predict(test_std.features)
        m = evaluate_predictions(test_std.labels, preds, scores)
        for key in per_metric:
            per_metric[key].append(m[key])
        chosen_list.append(gs.best)

    return BenchRow(
        dataset=ds.name, model=model_name,
        f1_mean=float(np.mean(per_metric["f1"])),
        f1_std=float(np.std(per_metric["f1"])),
        mcc_mean=float(np.mean(per_metric["mcc"])),
        mcc_std=float(np.std(per_metric["mcc"])),
        aucpr_mean=float(np.mean(per_metric["aucpr"])),
        aucpr_std=float(np.std(per_metric["aucpr"])),
        chosen=_mode_params(chosen_list),
    )


def _bench_one_source(source, cfg):
    rows = []
    try:
        ds = source.load()
        ds = Dataset(ds.features, ds.labels, name=source.name)
    except Exception as exc:
        msg = f"{type(exc).__name__}: {exc}"
        return [
            BenchRow(dataset=source.name, model=m, error=msg) for m in cfg.models
        ]
    for model_name in cfg.models:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                rows.append(_bench_one_model(ds, model_name, cfg))
        except Exception as exc:
            rows.append(
                BenchRow(
                    dataset=source.name, model=model_name,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return rows


def run_benchmark(cfg):
    """Run the full protocol; returns rows in (source, model) config order.

    Per-dataset failures land in the error column; the run always completes.
    """
    if cfg.workers > 1 and len(cfg.sources) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_bench_one_source, cfg.sources,
                                   [cfg] * len(cfg.sources)))
    else:
        chunks = [_bench_one_source(s, cfg) for s in cfg.sources]
    return [row for chunk in chunks for row in chunk]


# ---------------------------------------------------------------------------
# reporting


def _row_cells(row):
    def num(v):
        return "" if v is None or not np.isfinite(v) else f"{v:.4f}"

    hp = row.chosen
    return {
        "dataset": row.dataset,
        "model": row.model,
        "f1_mean": num(row.f1_mean), "f1_std": num(row.f1_std),
        "mcc_mean": num(row.mcc_mean), "mcc_std": num(row.mcc_std),
        "aucpr_mean": num(row.aucpr_mean), "aucpr_std": num(row.aucpr_std),
        "chosen_a": "" if hp is None or hp.a is None else str(hp.a),
        "chosen_zeta": "" if hp is None else str(hp.zeta),
        "chosen_mu": "" if hp is None or hp.mu is None else str(hp.mu),
        "chosen_kernel": "" if hp is None else str(hp.kernel),
        "error": row.error,
    }


def report_to_csv(rows):
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_cells(row))
    return out.getvalue()


def report_to_json(rows):
    def num(v):
        return None if v is None or not np.isfinite(v) else round(float(v), 4)

    objs = []
    for row in rows:
        hp = row.chosen
        objs.append({
            "dataset": row.dataset,
            "model": row.model,
            "f1_mean": num(row.f1_mean), "f1_std": num(row.f1_std),
            "mcc_mean": num(row.mcc_mean), "mcc_std": num(row.mcc_std),
            "aucpr_mean": num(row.aucpr_mean), "aucpr_std": num(row.aucpr_std),
            "chosen_a": None if hp is None else hp.a,
            "chosen_zeta": None if hp is None else hp.zeta,
            "chosen_mu": None if hp is None else hp.mu,
            "chosen_kernel": None if hp is None else str(hp.kernel),
            "error": row.error,
        })
    return json.dumps(objs, indent=2) + "\n"


def emit_report(rows, fmt, path):
    """Write the result table to ``path`` as csv or json."""
    if not rows:
        raise ValueError("refusing to write an empty report")
    if fmt == "csv":
        text = report_to_csv(rows)
    elif fmt == "json":
        text = report_to_json(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}; use csv or json")
    Path(path).write_text(text)
    return text


# ---------------------------------------------------------------------------
# statistics over a result table


@dataclass(frozen=True)
class StatsReport:
    model_names: tuple
    dataset_names: tuple
    average_ranks: tuple
    chi2: float
    f_stat: float
    chi2_dof: int
    f_dof: tuple
    cd: float
    alpha: float
    pairs: tuple
    critical_f: float | None = None

    @property
    def best_model(self):
        return self.model_names[int(np.argmin(self.average_ranks))]

    @property
    def friedman_significant(self):
        return None if self.critical_f is None else self.f_stat > self.critical_f

    def to_dict(self):
        return {
            "models": list(self.model_names),
            "datasets": list(self.dataset_names),
            "average_ranks": [round(r, 4) for r in self.average_ranks],
            "friedman": {
                "chi2": round(self.chi2, 4),
                "f_stat": round(self.f_stat, 4),
                "chi2_dof": self.chi2_dof,
                "f_dof": list(self.f_dof),
                "critical_f": self.critical_f,
                "significant": self.friedman_significant,
            },
            "nemenyi": {
                "alpha": self.alpha,
                "cd": round(self.cd, 4),
                "pairs": [
                    {
                        "model_i": p.model_i, "model_j": p.model_j,
                        "rank_diff": round(p.rank_diff, 4),
                        "significant": p.significant,
                    }
                    for p in self.pairs
                ],
            },
        }

    def to_text(self):
        lines = []
        lines.append(f"models compared : {len(self.model_names)}")
        lines.append(f"datasets        : {len(self.dataset_names)}")
        lines.append("")
        lines.append("average ranks (lower is better)")
        order = np.argsort(self.average_ranks)
        for idx in order:
            lines.append(f"  {self.model_names[idx]:<24s} {self.average_ranks[idx]:.4f}")
        lines.append("")
        lines.append(
            f"Friedman: chi2={self.chi2:.4f} (dof={self.chi2_dof}), "
            f"F={self.f_stat:.4f} (dof={self.f_dof[0]}, {self.f_dof[1]})"
        )
        if self.critical_f is not None:
            verdict = "reject" if self.friedman_significant else "fail to reject"
            lines.append(
                f"  vs critical F={self.critical_f:g}: {verdict} the "
                "hypothesis that all models perform alike"
            )
        lines.append("")
        best = self.best_model
        lines.append(f"Nemenyi critical difference (alpha={self.alpha:g}): {self.cd:.4f}")
        lines.append(f"pairwise vs best-ranked model ({best}):")
        for p in self.pairs:
            if best not in (p.model_i, p.model_j):
                continue
            other = p.model_j if p.model_i == best else p.model_i
            flag = "Yes" if p.significant else "No"
            lines.append(f"  {other:<24s} diff={p.rank_diff:.4f}  significant: {flag}")
        return "\n".join(lines) + "\n"


def score_matrix_from_results(text, metric="f1"):
    """Build a ScoreMatrix from a benchmark CSV report (long format).

    Datasets with errors or missing models are dropped with a warning. Wide
    model-per-column CSVs are accepted unchanged.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [r for r in reader if r]
    if not rows:
        raise ValueError("empty results file")
    header = [h.strip() for h in rows[0]]
    if not {"dataset", "model"}.issubset(header):
        return score_matrix_from_csv(text)

    col = {name: header.index(name) for name in header}
    metric_col = f"{metric}_mean"
    if metric_col not in col:
        raise ValueError(f"no column {metric_col!r} in results")

    values = {}
    datasets, models = [], []
    for r in rows[1:]:
        ds_name, model = r[col["dataset"]], r[col["model"]]
        err = r[col["error"]] if "error" in col else ""
        if ds_name not in datasets:
            datasets.append(ds_name)
        if model not in models:
            models.append(model)
        if err or not r[col[metric_col]]:
            values[(ds_name, model)] = None
        else:
            values[(ds_name, model)] = float(r[col[metric_col]])

    kept = [
        d for d in datasets
        if all(values.get((d, m)) is not None for m in models)
    ]
    dropped = sorted(set(datasets) - set(kept))
    if dropped:
        warnings.warn(f"dropping incomplete dataset rows: {dropped}", stacklevel=2)
    scores = np.array([[values[(d, m)] for m in models] for d in kept])
    return ScoreMatrix(scores, tuple(models), tuple(kept))


def run_stats(results_text, metric="f1", alpha=0.05, critical_f=None):
    """Ranking, Friedman, and Nemenyi analysis over a results table."""
    sm = score_matrix_from_results(results_text, metric=metric)
    rt = rank_rows(sm, higher_is_better=True)
    fr = friedman(rt)
    cd = nemenyi_cd(sm.n_models, sm.n_datasets, alpha=alpha)
    pairs = nemenyi_pairs(rt, cd)
    return StatsReport(
        model_names=sm.model_names,
        dataset_names=sm.dataset_names,
        average_ranks=tuple(float(r) for r in rt.average_ranks),
        chi2=fr.chi2,
        f_stat=fr.f_stat,
        chi2_dof=fr.chi2_dof,
        f_dof=fr.f_dof,
        cd=float(cd),
        alpha=alpha,
        pairs=tuple(pairs),
        critical_f=critical_f,
    )
