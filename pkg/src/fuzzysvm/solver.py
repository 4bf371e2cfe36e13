"""Weighted soft-margin SVM solved by sequential minimal optimization.

The dual problem solved here allows a distinct box bound per sample::

    min_a  1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j) - sum_i a_i
    s.t.   0 <= a_i <= C_i,   sum_i y_i a_i = 0

Per-sample bounds are what make fuzzy-membership and different-error-cost
models expressible: each C_i is the product of a regularization weight and
that sample's membership. The solver is a two-variable SMO whose working set
is the maximal-violation pair; it is fully deterministic, so identical inputs
always produce identical models.

Internally the iteration works on the transformed variables ``beta_i =
y_i * a_i`` with per-sample interval bounds, which keeps the equality
constraint ``sum(beta) = 0`` and the pair update symmetric in both classes.
"""

import json
import warnings
from dataclasses import dataclass, field

import numpy as np
from sklearn.exceptions import ConvergenceWarning

from .errors import AllZeroCostClassError
from .kernels import KernelRowCache, KernelSpec, kernel_matrix
from .validation import check_dimension, check_features, check_labels, check_lengths_match


@dataclass(frozen=True)
class SolverConfig:
    """Stopping and caching knobs for the SMO loop.

    max_passes counts full sweeps over the active set: the iteration budget
    is ``max_passes * n_active`` pair updates.
    """

    kkt_tolerance: float = 1e-3
    max_passes: int = 10_000
    cache_budget: int = 4096

    def __post_init__(self):
        if not self.kkt_tolerance > 0:
            raise ValueError("kkt_tolerance must be positive")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")


@dataclass
class SvmModel:
    """A fitted kernel expansion ``f(x) = sum_s dual_coef_s K(sv_s, x) + bias``.

    dual_coef holds ``a_s * y_s`` for the support vectors only. The model is
    immutable in practice (nothing mutates it after fit) and safe to share
    across threads.
    """

    kernel: KernelSpec
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    bias: float
    n_features: int
    support_indices: np.ndarray = field(default=None, repr=False)
    converged: bool = True
    n_iter: int = 0

    def decision_function(self, X):
        X = check_features(X)
        check_dimension(X, self.n_features)
        if len(self.dual_coef) == 0:
            return np.full(X.shape[0], self.bias)
        return kernel_matrix(self.kernel, X, self.support_vectors) @ self.dual_coef + self.bias

    @property
    def coef(self):
        """Primal weight vector (linear kernel only)."""
        if self.kernel.kind != "linear":
            raise ValueError("primal coefficients exist only for the linear kernel")
        if len(self.dual_coef) == 0:
            return np.zeros(self.n_features)
        return self.dual_coef @ self.support_vectors

    def to_dict(self):
        return {
            "kernel": self.kernel.to_dict(),
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "bias": float(self.bias),
            "n_features": int(self.n_features),
            "support_indices": (
                None
                if self.support_indices is None
                else [int(i) for i in self.support_indices]
            ),
            "converged": bool(self.converged),
            "n_iter": int(self.n_iter),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            kernel=KernelSpec.from_dict(d["kernel"]),
            support_vectors=np.asarray(d["support_vectors"], float).reshape(
                len(d["dual_coef"]), -1
            )
            if d["dual_coef"]
            else np.zeros((0, d["n_features"])),
            dual_coef=np.asarray(d["dual_coef"], float),
            bias=float(d["bias"]),
            n_features=int(d["n_features"]),
            support_indices=(
                None
                if d.get("support_indices") is None
                else np.asarray(d["support_indices"], int)
            ),
            converged=bool(d.get("converged", True)),
            n_iter=int(d.get("n_iter", 0)),
        )

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def fit_weighted_svm(X, y, costs, kernel=KernelSpec(), config=SolverConfig(), gram=None):
    """Fit the per-sample-cost SVM dual.

    Parameters
    ----------
    X : array of shape (n, d)
    y : array of +1/-1 labels
    costs : array of per-sample non-negative box bounds C_i. Samples with
        cost exactly zero are removed from the dual (their a_i is fixed 0).
    kernel : KernelSpec
    config : SolverConfig
    gram : optional precomputed full Gram matrix of X under ``kernel``;
        passing it lets callers amortize kernel evaluation across several
        fits on the same rows.

    Returns
    -------
    SvmModel. When the iteration budget runs out a best-effort model is
    returned with ``converged=False`` and a ConvergenceWarning is emitted.
    """
    X = check_features(X)
    y = check_labels(y)
    costs = np.asarray(costs, dtype=np.float64)
    check_lengths_match(X, y, names=("X", "y"))
    check_lengths_match(X, costs, names=("X", "costs"))
    if np.any(costs < 0) or not np.all(np.isfinite(costs)):
        raise ValueError("costs must be finite and non-negative")

    active = np.flatnonzero(costs > 0)
    for label in (1, -1):
        if not np.any(y[active] == label):
            raise AllZeroCostClassError(
                f"every sample of class {label:+d} has cost zero"
            )

    Xa, ya, Ca = X[active], y[active].astype(np.float64), costs[active]
    if gram is not None:
        gram = np.asarray(gram, dtype=np.float64)[np.ix_(active, active)]

    beta, bias, n_iter, converged = _smo(Xa, ya, Ca, kernel, config, gram)

    sv_local = np.flatnonzero(beta != 0.0)
    model = SvmModel(
        kernel=kernel,
        support_vectors=Xa[sv_local].copy(),
        dual_coef=beta[sv_local].copy(),
        bias=bias,
        n_features=X.shape[1],
        support_indices=active[sv_local],
        converged=converged,
        n_iter=n_iter,
    )
    if not converged:
        warnings.warn(
            f"SMO did not reach kkt_tolerance={config.kkt_tolerance} within "
            f"{n_iter} pair updates; returning best-effort model",
            ConvergenceWarning,
            stacklevel=2,
        )
    return model


def _smo(X, y, C, kernel, config, gram=None):
    """Core SMO loop on beta = y * alpha. Returns (beta, bias, n_iter, ok)."""
    n = len(y)
    lower = np.where(y > 0, 0.0, -C)
    upper = np.where(y > 0, C, 0.0)

    if gram is not None:
        cache = None
        kget = lambda i: gram[i]
    else:
        cache = KernelRowCache(kernel, X, budget=config.cache_budget)
        kget = cache.row

    beta = np.zeros(n)
    val = y.copy()  # val_i = y_i - (K beta)_i
    tol = config.kkt_tolerance
    max_iter = config.max_passes * n
    neg_inf = -np.inf

    it = 0
    converged = False
    while it < max_iter:
        can_up = beta < upper
        can_dn = beta > lower
        if not can_up.any() or not can_dn.any():
            converged = True
            break
        i = int(np.argmax(np.where(can_up, val, neg_inf)))
        j = int(np.argmin(np.where(can_dn, val, np.inf)))
        violation = val[i] - val[j]
        if violation <= tol:
            converged = True
            break

        ki = kget(i)
        kj = kget(j)
        quad = ki[i] + kj[j] - 2.0 * ki[j]
        if quad <= 1e-12:
            quad = 1e-12
        gap_i = upper[i] - beta[i]
        gap_j = beta[j] - lower[j]
        step = min(violation / quad, gap_i, gap_j)
        # assign bounds exactly when a gap is the binding limit, so the
        # box constraints hold exactly and no 1-ulp residue can stall the
        # working-set selection
        beta[i] = upper[i] if step == gap_i else beta[i] + step
        beta[j] = lower[j] if step == gap_j else beta[j] - step
        val -= step * (ki - kj)
        it += 1

    bias = _bias(beta, val, lower, upper)
    return beta, bias, it, converged


def _bias(beta, val, lower, upper):
    """Bias from free support vectors, else the midpoint of the feasible
    interval [max val over raisable, min val over lowerable]."""
    free = (beta > lower) & (beta < upper)
    if free.any():
        return float(val[free].mean())
    can_up = beta < upper
    can_dn = beta > lower
    lo = val[can_up].max() if can_up.any() else None
    hi = val[can_dn].min() if can_dn.any() else None
    if lo is None and hi is None:
        return 0.0
    if lo is None:
        return float(hi)
    if hi is None:
        return float(lo)
    return float((lo + hi) / 2.0)


def compute_slack_factors(model, X, y):
    """Hinge slacks ``max(0, 1 - y * f(x))`` of samples under a model.

    A slack below 1 means the sample is on the correct side of the decision
    boundary (possibly inside the margin); 1 or more means it is
    misclassified or on the boundary.
    """
    y = check_labels(y)
    scores = model.decision_function(X)
    check_lengths_match(scores, y, names=("X", "y"))
    return np.maximum(0.0, 1.0 - y * scores)


def dual_objective(K, y, alpha):
    """Value of the maximization-form dual ``sum a - 1/2 a'Qa`` with
    Q_ij = y_i y_j K_ij. Used for solver diagnostics and oracle comparison."""
    alpha = np.asarray(alpha, float)
    ya = alpha * y
    return float(alpha.sum() - 0.5 * ya @ K @ ya)
