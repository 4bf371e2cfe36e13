"""Cross-validated grid search for the cost-sensitive SVM family.

The search space is the cartesian product of the zeta/mu/a/kernel grids
appropriate to the model kind. Scoring is the mean of the chosen objective
over stratified k-fold cross-validation, optionally repeated with
consecutive seeds. Everything is deterministic for a fixed seed: folds,
solver, and tie-breaking.

The two-stage models share their first stage across membership settings:
for a fixed (kernel, zeta, fold) the stage-1 model does not depend on mu or
a, so it is fitted once and reused, which shrinks the search cost by roughly
the size of the (mu, a) grid.
"""

from dataclasses import dataclass

import numpy as np

from .data import stratified_kfold
from .estimators import HyperParams, build_dec_costs, fit_two_stage
from .errors import FuzzySvmError
from .kernels import KernelSpec, kernel_matrix
from .membership import A_GRID
from .metrics import auc_pr, confusion_matrix, f1_score, mcc
from .solver import SolverConfig, fit_weighted_svm

MODEL_NAMES = ("dec", "sffsvm", "isffsvm")
OBJECTIVES = ("f1", "mcc", "aucpr")

DEFAULT_ZETA_GRID = (0.1, 1.0, 10.0, 100.0)
DEFAULT_MU_GRID = (0.1, 0.5, 1.0, 2.0, 5.0)
DEFAULT_GAMMA_GRID = (0.01, 0.1, 1.0)
DEFAULT_A_GRID = A_GRID


def default_kernel_grid(gamma_grid=DEFAULT_GAMMA_GRID, include_linear=True):
    kernels = [KernelSpec("rbf", g) for g in gamma_grid]
    if include_linear:
        kernels.append(KernelSpec("linear", None))
    return tuple(kernels)


def _score(objective, y_true, scores):
    preds = np.where(scores >= 0.0, 1, -1)
    if objective == "f1":
        return f1_score(confusion_matrix(y_true, preds))
    if objective == "mcc":
        return mcc(confusion_matrix(y_true, preds))
    if objective == "aucpr":
        return auc_pr(y_true, scores)
    raise ValueError(f"unknown objective {objective!r}; pick one of {OBJECTIVES}")


@dataclass(frozen=True)
class GridPointScore:
    params: HyperParams
    mean_score: float
    fold_scores: tuple
    failures: tuple


@dataclass(frozen=True)
class GridSearchResult:
    best: HyperParams
    best_score: float
    table: tuple
    objective: str

    def score_for(self, **conditions):
        """Best mean score among grid points matching the given hyperparam
        values, e.g. ``score_for(a=2.0)``."""
        best = -np.inf
        for row in self.table:
            if all(getattr(row.params, k) == v for k, v in conditions.items()):
                best = max(best, row.mean_score)
        return best


def grid_search(
    ds,
    model="isffsvm",
    zeta_grid=DEFAULT_ZETA_GRID,
    mu_grid=DEFAULT_MU_GRID,
    a_grid=DEFAULT_A_GRID,
    kernel_grid=None,
    k=5,
    repeats=10,
    seed=0,
    objective="f1",
    config=SolverConfig(),
):
    """Exhaustive grid search; returns the best point and the full table.

    Ties on the mean objective are broken toward the least aggressive
    configuration: smaller a, then smaller zeta, then smaller mu, then the
    earlier kernel in the grid. Grid points where any fold fit fails score
    -inf and carry the error messages in their table row.
    """
    if model not in MODEL_NAMES:
        raise ValueError(f"unknown model {model!r}; pick one of {MODEL_NAMES}")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; pick one of {OBJECTIVES}")
    if kernel_grid is None:
        kernel_grid = default_kernel_grid()
    if model == "dec":
        mu_grid, a_grid = (None,), (None,)
    elif model == "sffsvm":
        a_grid = (2.0,)
    if not (len(zeta_grid) and len(mu_grid) and len(a_grid) and len(kernel_grid)):
        raise ValueError("all hyperparameter grids must be non-empty")

    points = [
        HyperParams(zeta=z, mu=m, a=a, kernel=ks)
        for ks in kernel_grid
        for z in zeta_grid
        for m in mu_grid
        for a in a_grid
    ]
    scores = {p: [] for p in points}
    failures = {p: [] for p in points}

    for r in range(repeats):
        plan = stratified_kfold(ds, k, seed + r)
        for fold in range(k):
            train_idx, val_idx = plan.fold_indices(fold)
            Xtr, ytr = ds.features[train_idx], ds.labels[train_idx]
            Xval, yval = ds.features[val_idx], ds.labels[val_idx]
            for ks in kernel_grid:
                gram = (
                    kernel_matrix(ks, Xtr)
                    if len(ytr) <= config.cache_budget
                    else None
                )
                for zeta in zeta_grid:
                    _eval_zeta_block(
                        model, ks, zeta, mu_grid, a_grid,
                        Xtr, ytr, Xval, yval, gram, config, objective,
                        scores, failures,
                    )

    table = []
    for p in points:
        failed = tuple(failures[p])
        mean = float(np.mean(scores[p])) if not failed else -np.inf
        table.append(
            GridPointScore(
                params=p,
                mean_score=mean,
                fold_scores=tuple(scores[p]),
                failures=failed,
            )
        )

    kernel_order = {ks: i for i, ks in enumerate(kernel_grid)}
    best_row = min(
        table,
        key=lambda row: (
            -row.mean_score,
            row.params.a if row.params.a is not None else 0.0,
            row.params.zeta,
            row.params.mu if row.params.mu is not None else 0.0,
            kernel_order[row.params.kernel],
        ),
    )
    return GridSearchResult(
        best=best_row.params,
        best_score=best_row.mean_score,
        table=tuple(table),
        objective=objective,
    )


def _eval_zeta_block(
    model, ks, zeta, mu_grid, a_grid,
    Xtr, ytr, Xval, yval, gram, config, objective,
    scores, failures,
):
    """Score every (mu, a) point sharing one (kernel, zeta, fold) block."""
    if model == "dec":
        p = HyperParams(zeta=zeta, mu=None, a=None, kernel=ks)
        try:
            m = fit_weighted_svm(
                Xtr, ytr, build_dec_costs(ytr, zeta), ks, config, gram=gram
            )
            scores[p].append(_score(objective, yval, m.decision_function(Xval)))
        except (FuzzySvmError, ValueError) as exc:
            failures[p].append(f"{type(exc).__name__}: {exc}")
        return

    dec_model = None
    dec_failure = None
    try:
        dec_model = fit_weighted_svm(
            Xtr, ytr, build_dec_costs(ytr, zeta), ks, config, gram=gram
        )
        dec_scores = (
            gram[:, dec_model.support_indices] @ dec_model.dual_coef
            + dec_model.bias
            if gram is not None
            else dec_model.decision_function(Xtr)
        )
        dec_slacks = np.maximum(0.0, 1.0 - ytr * dec_scores)
    except (FuzzySvmError, ValueError) as exc:
        dec_failure = f"{type(exc).__name__}: {exc}"

    for mu in mu_grid:
        for a in a_grid:
            p = HyperParams(zeta=zeta, mu=mu, a=a, kernel=ks)
            if dec_failure is not None:
                failures[p].append(dec_failure)
                continue
            try:
                result = fit_two_stage(
                    Xtr, ytr, zeta, mu, a, kernel=ks, config=config,
                    gram=gram, dec_model=dec_model, dec_slacks=dec_slacks,
                )
                val_scores = result.final_model.decision_function(Xval)
                scores[p].append(_score(objective, yval, val_scores))
            except (FuzzySvmError, ValueError) as exc:
                failures[p].append(f"{type(exc).__name__}: {exc}")
