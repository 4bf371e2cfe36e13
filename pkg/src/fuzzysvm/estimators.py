"""Cost-sensitive SVM estimators with the scikit-learn fit/predict API.

Three classifiers are provided, from simplest to most refined:

``DECClassifier``
    different-error-cost SVM: every minority sample costs ``zeta * IR`` and
    every majority sample ``zeta``, where IR is the majority/minority count
    ratio of the training data.

``SFFSVMClassifier``
    two-stage fuzzy model: a DEC fit produces hinge slacks, slacks produce
    per-sample membership weights, and a second weighted fit uses costs
    scaled by those weights. Equivalent to ``ISFFSVMClassifier`` with the
    location threshold pinned at 2.

``ISFFSVMClassifier``
    same two-stage pipeline with a tunable location threshold ``a`` in
    [1.1, 2] controlling how far majority samples may sit past the margin
    before their weight starts to decay. Tuning ``a`` is what lets the
    second-stage boundary favour minority recall without sacrificing the
    majority class wholesale.

All estimators expect labels in {+1, -1} with +1 the minority class (see
:mod:`fuzzysvm.data` for loaders that arrange this) and break prediction
ties at score 0 toward the minority class.
"""

import json
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .data import Scaler
from .errors import AllMinorityExcludedError, SingleClassError
from .kernels import KernelSpec, kernel_matrix
from .membership import MembershipParams, majority_membership, minority_membership
from .solver import SolverConfig, SvmModel, compute_slack_factors, fit_weighted_svm
from .validation import check_features, check_labels, check_lengths_match

MODEL_FORMAT = "fuzzysvm-model"


@dataclass(frozen=True)
class HyperParams:
    """One point of the tuning grid. ``mu`` and ``a`` are None for models
    that do not use memberships."""

    zeta: float
    mu: float | None
    a: float | None
    kernel: KernelSpec

    def to_dict(self):
        return {
            "zeta": self.zeta,
            "mu": self.mu,
            "a": self.a,
            "kernel": self.kernel.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            zeta=d["zeta"],
            mu=d.get("mu"),
            a=d.get("a"),
            kernel=KernelSpec.from_dict(d["kernel"]),
        )


def imbalance_ratio(y):
    n_pos = int(np.sum(y == 1))
    n_neg = int(np.sum(y == -1))
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError("both classes must be present")
    return max(n_pos, n_neg) / min(n_pos, n_neg)


def build_dec_costs(y, zeta, ir=None):
    """Per-sample box bounds: ``zeta * IR`` for +1 rows, ``zeta`` for -1."""
    if not zeta > 0:
        raise ValueError("zeta must be positive")
    if ir is None:
        ir = imbalance_ratio(y)
    return np.where(y == 1, zeta * ir, zeta).astype(np.float64)


@dataclass
class TwoStageFit:
    """Everything produced by one run of the two-stage pipeline."""

    dec_model: SvmModel
    slacks: np.ndarray
    memberships: np.ndarray
    sample_costs: np.ndarray
    final_model: SvmModel
    ir: float


def _train_scores(model, X, gram):
    # decision values on the training rows; reuse the Gram matrix if we have it
    if gram is None or model.support_indices is None:
        return model.decision_function(X)
    return gram[:, model.support_indices] @ model.dual_coef + model.bias


def fit_two_stage(
    X,
    y,
    zeta,
    mu,
    a,
    kernel=KernelSpec(),
    config=SolverConfig(),
    gram=None,
    dec_model=None,
    dec_slacks=None,
):
    """Run the slack-membership pipeline and return all its artifacts.

    Stage 1 fits a DEC model (unless a prefitted ``dec_model`` with its
    training ``dec_slacks`` is supplied, which tuning loops use to share the
    stage across membership settings). Stage 2 refits with costs
    ``zeta * IR * psi`` for minority rows and ``zeta * psi`` for majority
    rows; minority rows whose membership is 0 drop out of the dual. IR is
    always computed on the full training set.
    """
    X = check_features(X)
    y = check_labels(y)
    check_lengths_match(X, y, names=("X", "y"))
    for label in (1, -1):
        if int(np.sum(y == label)) < 2:
            raise ValueError("each class needs at least 2 samples")
    params = MembershipParams(mu=mu, a=a)
    ir = imbalance_ratio(y)

    if gram is None and X.shape[0] <= config.cache_budget:
        gram = kernel_matrix(kernel, X)

    if dec_model is None:
        dec_model = fit_weighted_svm(
            X, y, build_dec_costs(y, zeta, ir), kernel, config, gram=gram
        )
        dec_slacks = None
    if dec_slacks is None:
        scores = _train_scores(dec_model, X, gram)
        dec_slacks = np.maximum(0.0, 1.0 - y * scores)

    pos = y == 1
    memberships = np.empty(len(y))
    memberships[pos] = minority_membership(dec_slacks[pos], mu)
    memberships[~pos] = majority_membership(dec_slacks[~pos], params)

    if not np.any(memberships[pos] > 0):
        raise AllMinorityExcludedError(
            "the first-stage model misclassified every minority sample; "
            "all minority memberships are zero"
        )

    sample_costs = np.where(pos, zeta * ir, zeta) * memberships
    final_model = fit_weighted_svm(X, y, sample_costs, kernel, config, gram=gram)
    return TwoStageFit(
        dec_model=dec_model,
        slacks=dec_slacks,
        memberships=memberships,
        sample_costs=sample_costs,
        final_model=final_model,
        ir=ir,
    )


class _BaseSvmEstimator(BaseEstimator, ClassifierMixin):
    """Shared prediction plumbing; subclasses set ``self.model_`` in fit."""

    def _kernel_spec(self):
        return KernelSpec(
            kind=self.kernel,
            gamma=self.gamma if self.kernel == "rbf" else None,
        )

    def _solver_config(self):
        return SolverConfig(
            kkt_tolerance=self.tol,
            max_passes=self.max_passes,
            cache_budget=self.cache_rows,
        )

    def decision_function(self, X):
        return self.model_.decision_function(X)

    def predict(self, X):
        """Predicted labels; a score of exactly 0 goes to the minority
        class (+1)."""
        scores = self.decision_function(X)
        return np.where(scores >= 0.0, 1, -1)

    def slack_factors(self, X, y):
        """Hinge slacks of (X, y) under the fitted decision function."""
        return compute_slack_factors(self.model_, X, y)


class DECClassifier(_BaseSvmEstimator):
    """Different-error-cost SVM.

    Parameters
    ----------
    zeta : float, regularization weight; minority rows get ``zeta * IR``.
    kernel : "rbf" or "linear".
    gamma : float, RBF width (ignored for the linear kernel).
    tol : float, KKT stopping tolerance of the SMO solver.
    max_passes : int, iteration budget in full sweeps over the data.
    cache_rows : int, kernel rows kept in memory during the solve.

    Attributes
    ----------
    model_ : SvmModel
    imbalance_ratio_ : float
    classes_ : ndarray (-1, +1)
    """

    def __init__(self, zeta=1.0, kernel="rbf", gamma=1.0, tol=1e-3,
                 max_passes=10_000, cache_rows=4096):
        self.zeta = zeta
        self.kernel = kernel
        self.gamma = gamma
        self.tol = tol
        self.max_passes = max_passes
        self.cache_rows = cache_rows

    def fit(self, X, y):
        X = check_features(X)
        y = check_labels(y)
        self.imbalance_ratio_ = imbalance_ratio(y)
        costs = build_dec_costs(y, self.zeta, self.imbalance_ratio_)
        self.model_ = fit_weighted_svm(
            X, y, costs, self._kernel_spec(), self._solver_config()
        )
        self.classes_ = np.array([-1, 1])
        return self

    def _payload(self):
        return {
            "algorithm": "dec",
            "hyperparams": HyperParams(
                zeta=self.zeta, mu=None, a=None, kernel=self._kernel_spec()
            ).to_dict(),
            "final_model": self.model_.to_dict(),
        }


class ISFFSVMClassifier(_BaseSvmEstimator):
    """Two-stage slack-membership SVM with a tunable location threshold.

    Parameters
    ----------
    zeta : float, regularization weight (both stages).
    mu : float, decay rate of the membership rules.
    a : float in [1.1, 2], slack threshold below which majority samples keep
        full weight. ``a=2`` reproduces the fixed-threshold baseline; tune
        over ``fuzzysvm.membership.A_GRID`` for best results.
    kernel, gamma, tol, max_passes, cache_rows : as in DECClassifier.

    Attributes
    ----------
    model_ : SvmModel, the second-stage model used for prediction.
    dec_model_ : SvmModel, the first-stage model (kept for introspection).
    slacks_ : ndarray, training hinge slacks under the first stage.
    memberships_ : ndarray, per-sample weights in [0, 1].
    sample_costs_ : ndarray, second-stage box bounds (0 = excluded row).
    imbalance_ratio_ : float
    """

    def __init__(self, zeta=1.0, mu=1.0, a=2.0, kernel="rbf", gamma=1.0,
                 tol=1e-3, max_passes=10_000, cache_rows=4096):
        self.zeta = zeta
        self.mu = mu
        self.a = a
        self.kernel = kernel
        self.gamma = gamma
        self.tol = tol
        self.max_passes = max_passes
        self.cache_rows = cache_rows

    def fit(self, X, y):
        result = fit_two_stage(
            X, y, self.zeta, self.mu, self.a,
            kernel=self._kernel_spec(), config=self._solver_config(),
        )
        self._adopt(result)
        return self

    def _adopt(self, result):
        self.dec_model_ = result.dec_model
        self.slacks_ = result.slacks
        self.memberships_ = result.memberships
        self.sample_costs_ = result.sample_costs
        self.model_ = result.final_model
        self.imbalance_ratio_ = result.ir
        self.classes_ = np.array([-1, 1])

    def _algorithm_name(self):
        return "isffsvm"

    def _hyperparams(self):
        return HyperParams(
            zeta=self.zeta, mu=self.mu, a=self.a, kernel=self._kernel_spec()
        )

    def _payload(self):
        return {
            "algorithm": self._algorithm_name(),
            "hyperparams": self._hyperparams().to_dict(),
            "imbalance_ratio": float(self.imbalance_ratio_),
            "memberships": self.memberships_.tolist(),
            "sample_costs": self.sample_costs_.tolist(),
            "dec_model": self.dec_model_.to_dict(),
            "final_model": self.model_.to_dict(),
        }


class SFFSVMClassifier(ISFFSVMClassifier):
    """Baseline fixed-threshold variant: ISFFSVM with ``a`` pinned at 2."""

    def __init__(self, zeta=1.0, mu=1.0, kernel="rbf", gamma=1.0, tol=1e-3,
                 max_passes=10_000, cache_rows=4096):
        super().__init__(
            zeta=zeta, mu=mu, a=2.0, kernel=kernel, gamma=gamma, tol=tol,
            max_passes=max_passes, cache_rows=cache_rows,
        )

    def _algorithm_name(self):
        return "sffsvm"


# ---------------------------------------------------------------------------
# serialization

_ALGORITHMS = {"dec": DECClassifier, "sffsvm": SFFSVMClassifier,
               "isffsvm": ISFFSVMClassifier}


def model_to_json(estimator, scaler=None, indent=None):
    """Serialize a fitted estimator (and optionally its feature scaler) to a
    JSON document that :func:`model_from_json` restores."""
    payload = {"format": MODEL_FORMAT, "version": 1}
    payload.update(estimator._payload())
    payload["scaler"] = None if scaler is None else scaler.to_dict()
    return json.dumps(payload, indent=indent)


def model_from_json(text):
    """Restore ``(estimator, scaler)`` from :func:`model_to_json` output."""
    d = json.loads(text)
    if d.get("format") != MODEL_FORMAT:
        raise ValueError("not a fuzzysvm model document")
    algorithm = d["algorithm"]
    hp = HyperParams.from_dict(d["hyperparams"])
    kernel_kwargs = {
        "kernel": hp.kernel.kind,
        "gamma": hp.kernel.gamma if hp.kernel.kind == "rbf" else 1.0,
    }
    if algorithm == "dec":
        est = DECClassifier(zeta=hp.zeta, **kernel_kwargs)
        est.model_ = SvmModel.from_dict(d["final_model"])
        est.imbalance_ratio_ = d.get("imbalance_ratio")
    else:
        if algorithm == "sffsvm":
            est = SFFSVMClassifier(zeta=hp.zeta, mu=hp.mu, **kernel_kwargs)
        else:
            est = ISFFSVMClassifier(zeta=hp.zeta, mu=hp.mu, a=hp.a, **kernel_kwargs)
        est.model_ = SvmModel.from_dict(d["final_model"])
        est.dec_model_ = SvmModel.from_dict(d["dec_model"])
        est.memberships_ = np.asarray(d["memberships"], float)
        est.sample_costs_ = np.asarray(d["sample_costs"], float)
        est.imbalance_ratio_ = d.get("imbalance_ratio")
    est.classes_ = np.array([-1, 1])
    scaler = None if d.get("scaler") is None else Scaler.from_dict(d["scaler"])
    return est, scaler
