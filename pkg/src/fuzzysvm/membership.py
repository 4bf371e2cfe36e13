"""Slack-based fuzzy membership weights.

A first-stage cost-sensitive SVM yields a hinge slack per training sample;
these functions turn slacks into per-sample weights in [0, 1] that scale
each sample's misclassification cost in the second-stage fit. A slack below
1 marks a correctly classified sample, 1 or above a misclassified one, and
the class-specific rules treat the two groups very differently:

* minority samples decay smoothly from weight 1 at zero slack and are
  dropped entirely (weight 0) once misclassified;
* majority samples keep full weight while the slack stays below a location
  threshold ``a`` and decay exponentially beyond it. Setting ``a = 2``
  recovers the baseline behaviour where every majority sample with slack
  under 2 keeps full weight; lowering ``a`` stops badly-placed majority
  samples from dragging the boundary into minority territory.
"""

from dataclasses import dataclass

import numpy as np

from .validation import check_lengths_match

A_MIN, A_MAX = 1.1, 2.0
A_GRID = tuple(round(1.1 + 0.1 * i, 1) for i in range(10))  # 1.1 .. 2.0


@dataclass(frozen=True)
class MembershipParams:
    """Decay rate ``mu`` and location threshold ``a`` of the majority rule."""

    mu: float = 1.0
    a: float = 2.0

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError("mu must be positive")
        if not A_MIN <= self.a <= A_MAX:
            raise ValueError(f"a must lie in [{A_MIN}, {A_MAX}], got {self.a}")


@dataclass(frozen=True)
class SampleSets:
    """Index partition by class and by slack: below 1 vs at-least 1.

    The four arrays are disjoint and together cover every sample index.
    """

    t_plus: np.ndarray
    f_plus: np.ndarray
    t_minus: np.ndarray
    f_minus: np.ndarray


def _check_slacks(slacks):
    slacks = np.asarray(slacks, dtype=np.float64)
    if slacks.ndim != 1:
        raise ValueError("slacks must be a 1-D vector")
    if np.any(slacks < 0) or not np.all(np.isfinite(slacks)):
        raise ValueError("slacks must be finite and non-negative")
    return slacks


def partition_sets(slacks, labels):
    """Split sample indices into the four class/slack groups.

    The boundary slack of exactly 1 counts as misclassified (the F side).
    """
    slacks = _check_slacks(slacks)
    labels = np.asarray(labels)
    check_lengths_match(slacks, labels, names=("slacks", "labels"))
    ok = slacks < 1.0
    pos = labels == 1
    return SampleSets(
        t_plus=np.flatnonzero(pos & ok),
        f_plus=np.flatnonzero(pos & ~ok),
        t_minus=np.flatnonzero(~pos & ok),
        f_minus=np.flatnonzero(~pos & ~ok),
    )


def generic_slack_membership(slacks, mu):
    """Class-agnostic rule: weight 1 below slack 1, exp(-mu*slack) beyond."""
    slacks = _check_slacks(slacks)
    if not mu > 0:
        raise ValueError("mu must be positive")
    return np.where(slacks < 1.0, 1.0, np.exp(-mu * slacks))


def minority_membership(slacks, mu):
    """Weights for minority-class samples.

    Correctly classified samples (slack < 1) get ``2 / (exp(mu*slack) + 1)``,
    which starts at exactly 1 for zero slack and decreases with the slack;
    misclassified samples get 0 and are expected to be dropped from the
    second-stage fit. Note the rule is discontinuous at slack 1: the left
    limit is ``2 / (exp(mu) + 1) > 0`` while the value at 1 is 0.
    """
    slacks = _check_slacks(slacks)
    if not mu > 0:
        raise ValueError("mu must be positive")
    return np.where(slacks < 1.0, 2.0 / (np.exp(mu * slacks) + 1.0), 0.0)


def majority_membership(slacks, params):
    """Weights for majority-class samples.

    Weight 1 while the slack is strictly below the location threshold ``a``
    (whether or not the sample is misclassified), ``exp(-mu*slack)`` once the
    slack reaches ``a``.
    """
    slacks = _check_slacks(slacks)
    return np.where(slacks < params.a, 1.0, np.exp(-params.mu * slacks))
