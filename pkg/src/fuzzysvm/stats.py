"""Rank-based comparison of several models over several datasets.

Given a datasets-by-models score matrix, the workflow is: rank the models
within each dataset (rank 1 = best, ties share the mean of their positions),
average the ranks per model, test whether the models differ at all with the
Friedman statistics, and if they do, flag pairs whose average ranks differ
by more than the Nemenyi critical difference.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import DegenerateStatisticError, UnsupportedModelCountError


@dataclass(frozen=True)
class ScoreMatrix:
    """Metric values, one row per dataset and one column per model."""

    scores: np.ndarray
    model_names: tuple
    dataset_names: tuple

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64)
        if scores.ndim != 2:
            raise ValueError("scores must be 2-D (datasets x models)")
        d, l = scores.shape
        if l < 2 or d < 2:
            raise ValueError("need at least 2 models and 2 datasets")
        if not np.all(np.isfinite(scores)):
            raise ValueError("scores must not contain NaN or infinities")
        if len(self.model_names) != l or len(self.dataset_names) != d:
            raise ValueError("name lists must match the matrix shape")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "model_names", tuple(self.model_names))
        object.__setattr__(self, "dataset_names", tuple(self.dataset_names))

    @property
    def n_datasets(self):
        return self.scores.shape[0]

    @property
    def n_models(self):
        return self.scores.shape[1]


@dataclass(frozen=True)
class RankTable:
    """Within-dataset ranks plus the per-model averages."""

    ranks: np.ndarray
    average_ranks: np.ndarray
    model_names: tuple


@dataclass(frozen=True)
class FriedmanResult:
    chi2: float
    f_stat: float
    chi2_dof: int
    f_dof: tuple


def score_matrix_from_csv(text):
    """Wide-format CSV: header is ``dataset,<model>,...``; one row per
    dataset with the dataset name first."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 3:
        raise ValueError("score CSV needs a header and at least 2 dataset rows")
    header = rows[0]
    model_names = tuple(h.strip() for h in header[1:])
    dataset_names = tuple(r[0].strip() for r in rows[1:])
    scores = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return ScoreMatrix(scores, model_names, dataset_names)


def rank_rows(sm, higher_is_better=True):
    """Rank models within each dataset; rank 1 is best, ties get mid-ranks,
    so each row sums to ``l(l+1)/2``."""
    values = sm.scores if higher_is_better else -sm.scores
    ranks = np.vstack([rankdata(-row, method="average") for row in values])
    return RankTable(
        ranks=ranks,
        average_ranks=ranks.mean(axis=0),
        model_names=sm.model_names,
    )


def friedman(rt):
    """Friedman chi-squared and its F-form over a rank table.

    chi2 = 12D/(l(l+1)) * (sum_m R_m^2 - l(l+1)^2/4) with D datasets and l
    models; F = (D-1) chi2 / (D(l-1) - chi2). The chi-squared statistic has
    l-1 degrees of freedom and the F statistic (l-1, (l-1)(D-1)).
    """
    d, l = rt.ranks.shape
    r = rt.average_ranks
    chi2 = 12.0 * d / (l * (l + 1)) * (np.sum(r**2) - l * (l + 1) ** 2 / 4.0)
    denom = d * (l - 1) - chi2
    if abs(denom) < 1e-12:
        raise DegenerateStatisticError(
            "rank variance is saturated (chi2 == D(l-1)); the F statistic "
            "is undefined"
        )
    f_stat = (d - 1) * chi2 / denom
    return FriedmanResult(
        chi2=float(chi2),
        f_stat=float(f_stat),
        chi2_dof=l - 1,
        f_dof=(l - 1, (l - 1) * (d - 1)),
    )


# Two-tailed Nemenyi critical values at alpha = 0.05 for l = 2..20 models,
# i.e. the 0.95 quantile of the studentized range with infinite degrees of
# freedom divided by sqrt(2).
_Q_05 = {
    2: 1.959964, 3: 2.343701, 4: 2.569032, 5: 2.727774, 6: 2.849705,
    7: 2.948320, 8: 3.030879, 9: 3.101730, 10: 3.163684, 11: 3.218654,
    12: 3.268004, 13: 3.312739, 14: 3.353618, 15: 3.391230, 16: 3.426041,
    17: 3.458425, 18: 3.488685, 19: 3.517073, 20: 3.543799,
}


def nemenyi_cd(l, d, alpha=0.05):
    """Critical average-rank difference ``q_alpha * sqrt(l(l+1)/(6D))``."""
    if alpha != 0.05:
        raise ValueError("only alpha = 0.05 is tabulated")
    if l not in _Q_05:
        raise UnsupportedModelCountError(
            f"critical values are tabulated for 2..20 models, got l={l}"
        )
    if d < 2:
        raise ValueError("need at least 2 datasets")
    return _Q_05[l] * np.sqrt(l * (l + 1) / (6.0 * d))


@dataclass(frozen=True)
class PairComparison:
    model_i: str
    model_j: str
    rank_diff: float
    significant: bool


def nemenyi_pairs(rt, cd):
    """All model pairs with their absolute average-rank gap and whether it
    exceeds the critical difference."""
    if not cd > 0:
        raise ValueError("cd must be positive")
    out = []
    l = len(rt.model_names)
    for i in range(l):
        for j in range(i + 1, l):
            diff = abs(rt.average_ranks[i] - rt.average_ranks[j])
            out.append(
                PairComparison(
                    model_i=rt.model_names[i],
                    model_j=rt.model_names[j],
                    rank_diff=float(diff),
                    significant=bool(diff > cd),
                )
            )
    return out
