"""Evaluation metrics for imbalanced binary classification.

The positive class (+1) is the minority class throughout. Degenerate ratios
(0/0) are defined as 0, the conservative convention for folds where a model
predicts a single class.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoPositivesError
from .validation import check_labels, check_lengths_match


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class PRCurve:
    """Precision-recall pairs from a descending-threshold sweep; recalls are
    non-decreasing along the list."""

    points: tuple  # of (recall, precision)


def confusion_matrix(y_true, y_pred):
    y_true = check_labels(y_true, name="y_true")
    y_pred = check_labels(y_pred, name="y_pred")
    check_lengths_match(y_true, y_pred, names=("y_true", "y_pred"))
    pos = y_true == 1
    pred_pos = y_pred == 1
    return ConfusionMatrix(
        tp=int(np.sum(pos & pred_pos)),
        fp=int(np.sum(~pos & pred_pos)),
        fn=int(np.sum(pos & ~pred_pos)),
        tn=int(np.sum(~pos & ~pred_pos)),
    )


def precision_recall(cm):
    """(precision, recall); each is 0 when its denominator is 0."""
    p = cm.tp / (cm.tp + cm.fp) if cm.tp + cm.fp > 0 else 0.0
    r = cm.tp / (cm.tp + cm.fn) if cm.tp + cm.fn > 0 else 0.0
    return p, r


def f1_score(cm):
    """Harmonic mean of precision and recall; 0 when both are 0."""
    p, r = precision_recall(cm)
    return 2.0 * p * r / (p + r) if p + r > 0 else 0.0


def mcc(cm):
    """Matthews correlation coefficient; 0 when any marginal is empty."""
    tp, fp, fn, tn = cm.tp, cm.fp, cm.fn, cm.tn
    denom_sq = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom_sq == 0:
        return 0.0
    return (tp * tn - fp * fn) / np.sqrt(denom_sq)


def pr_curve(y_true, scores):
    """Precision-recall curve over thresholds at each distinct score.

    Scores are swept in descending order; tied scores enter as one block, so
    the curve does not depend on the input ordering of ties.
    """
    y_true = check_labels(y_true, name="y_true")
    scores = np.asarray(scores, dtype=np.float64)
    check_lengths_match(y_true, scores, names=("y_true", "scores"))
    n_pos = int(np.sum(y_true == 1))
    if n_pos == 0:
        raise NoPositivesError("need at least one positive label")

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    sorted_pos = (y_true[order] == 1).astype(np.int64)

    cum_tp = np.cumsum(sorted_pos)
    ranks = np.arange(1, len(scores) + 1)
    # keep only the last index of each tied block
    block_end = np.flatnonzero(np.r_[sorted_scores[1:] != sorted_scores[:-1], True])

    points = [
        (cum_tp[k] / n_pos, cum_tp[k] / ranks[k])
        for k in block_end
    ]
    return PRCurve(points=tuple(points))


def auc_pr(y_true, scores):
    """Area under the precision-recall curve by average-precision summation:
    ``sum_k (R_k - R_{k-1}) * P_k`` over the descending-threshold sweep."""
    curve = pr_curve(y_true, scores)
    area = 0.0
    prev_recall = 0.0
    for recall, precision in curve.points:
        area += (recall - prev_recall) * precision
        prev_recall = recall
    return area


def evaluate_predictions(y_true, y_pred, scores):
    """All reportable metrics at once: dict with f1, mcc, aucpr, precision,
    recall."""
    cm = confusion_matrix(y_true, y_pred)
    p, r = precision_recall(cm)
    return {
        "f1": f1_score(cm),
        "mcc": mcc(cm),
        "aucpr": auc_pr(y_true, scores),
        "precision": p,
        "recall": r,
    }
