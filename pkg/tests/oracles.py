"""Independent reference implementations used to verify the package.

Everything here is deliberately written from the mathematical definitions,
sharing no code path with the implementations under test: a dense
projected-gradient QP solver for the SVM dual, literal grid minimization of
the primal, metric recomputation by explicit counting, and a
threshold-enumeration PR curve.
"""

import numpy as np


# ---------------------------------------------------------------------------
# dual QP oracle (projected gradient on beta = y * alpha)


def _project(v, lo, hi):
    """Euclidean projection onto {lo <= x <= hi, sum(x) = 0} by bisection on
    the shift lambda in x = clip(v - lambda, lo, hi)."""
    span = np.abs(v).max() + np.abs(lo).max() + np.abs(hi).max() + 1.0
    a, b = -span, span
    for _ in range(200):
        mid = 0.5 * (a + b)
        if np.clip(v - mid, lo, hi).sum() > 0:
            a = mid
        else:
            b = mid
    return np.clip(v - 0.5 * (a + b), lo, hi)


def pg_qp_solve(K, y, costs, max_iter=200_000, rtol=1e-15):
    """Solve min_a 1/2 a'Qa - sum(a) s.t. 0 <= a <= C, sum(y*a) = 0 by
    projected gradient with exact projection. Returns alpha."""
    K = np.asarray(K, float)
    y = np.asarray(y, float)
    costs = np.asarray(costs, float)
    lo = np.where(y > 0, 0.0, -costs)
    hi = np.where(y > 0, costs, 0.0)

    eigmax = float(np.linalg.eigvalsh(K).max())
    step = 1.0 / max(eigmax, 1e-12)
    beta = np.zeros(len(y))
    for _ in range(max_iter):
        grad = K @ beta - y
        new = _project(beta - step * grad, lo, hi)
        delta = np.abs(new - beta).max()
        beta = new
        if delta < rtol * (1.0 + np.abs(beta).max()):
            break
    return beta * y  # alpha = y * beta


def pg_dual_objective(K, y, alpha):
    """Maximization-form dual value sum(a) - 1/2 sum_ij a_i a_j y_i y_j K_ij,
    written as explicit loops so it shares nothing with the package."""
    n = len(alpha)
    total = float(np.sum(alpha))
    quad = 0.0
    for i in range(n):
        for j in range(n):
            quad += alpha[i] * alpha[j] * y[i] * y[j] * K[i][j]
    return total - 0.5 * quad


def kkt_violation(K, y, alpha, costs, bias):
    """Worst violation of the KKT conditions at the given solution:
    free alphas must sit on the margin, zero alphas outside it, saturated
    alphas inside it. Returns the largest violation magnitude."""
    f = K @ (alpha * y) + bias
    worst = 0.0
    for i in range(len(y)):
        margin = y[i] * f[i]
        if alpha[i] <= 0.0:
            worst = max(worst, (1.0 - margin))  # need margin >= 1
        elif alpha[i] >= costs[i]:
            worst = max(worst, (margin - 1.0))  # need margin <= 1
        else:
            worst = max(worst, abs(margin - 1.0))
    return worst


# ---------------------------------------------------------------------------
# primal oracle (linear kernel, low dimension): nested grid refinement


def grid_min_primal(X, y, costs, rounds=12, grid=25, half_width=10.0):
    """Minimize 1/2 ||w||^2 + sum_i C_i max(0, 1 - y_i (w.x_i + b)) over
    (w, b) by repeatedly refined grid search. Only practical for d <= 2."""
    X = np.asarray(X, float)
    y = np.asarray(y, float)
    costs = np.asarray(costs, float)
    d = X.shape[1]

    def objective(params):
        w = params[:d]
        b = params[d]
        slack = np.maximum(0.0, 1.0 - y * (X @ w + b))
        return 0.5 * float(w @ w) + float(costs @ slack)

    center = np.zeros(d + 1)
    width = half_width
    best = center.copy()
    for _ in range(rounds):
        axes = [np.linspace(c - width, c + width, grid) for c in center]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        vals = np.array([objective(p) for p in pts])
        best = pts[int(np.argmin(vals))]
        center = best
        width = width * 2.5 / (grid - 1)  # keep neighbors of the best cell
    return best[:d], float(best[d]), objective(best)


# ---------------------------------------------------------------------------
# metric oracles


def f1_by_counting(y_true, y_pred):
    tp = sum(1 for t, p in zip(y_true, y_pred) if t == 1 and p == 1)
    fp = sum(1 for t, p in zip(y_true, y_pred) if t == -1 and p == 1)
    fn = sum(1 for t, p in zip(y_true, y_pred) if t == 1 and p == -1)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def mcc_by_counting(y_true, y_pred):
    tp = sum(1 for t, p in zip(y_true, y_pred) if t == 1 and p == 1)
    fp = sum(1 for t, p in zip(y_true, y_pred) if t == -1 and p == 1)
    fn = sum(1 for t, p in zip(y_true, y_pred) if t == 1 and p == -1)
    tn = sum(1 for t, p in zip(y_true, y_pred) if t == -1 and p == -1)
    denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn)
    if denom == 0:
        return 0.0
    return (tp * tn - fp * fn) / denom**0.5


def ap_by_threshold_enumeration(y_true, scores):
    """Average precision by literally predicting at every distinct score
    threshold (descending) and summing precision times recall increments."""
    y_true = list(y_true)
    scores = list(scores)
    n_pos = sum(1 for t in y_true if t == 1)
    thresholds = sorted(set(scores), reverse=True)
    area = 0.0
    prev_recall = 0.0
    for t in thresholds:
        tp = sum(1 for yt, s in zip(y_true, scores) if s >= t and yt == 1)
        pred_pos = sum(1 for s in scores if s >= t)
        recall = tp / n_pos
        precision = tp / pred_pos if pred_pos else 0.0
        area += (recall - prev_recall) * precision
        prev_recall = recall
    return area


# ---------------------------------------------------------------------------
# shared random problem generator


def random_weighted_problem(rng, n_max=20, d_max=4):
    """A small random binary problem with per-sample costs, for solver
    comparisons. Guarantees at least 2 samples of each class."""
    n = int(rng.integers(6, n_max + 1))
    d = int(rng.integers(1, d_max + 1))
    X = rng.normal(size=(n, d))
    y = np.concatenate([np.ones(2, int), -np.ones(2, int),
                        rng.choice([-1, 1], size=n - 4)])
    rng.shuffle(y)
    # shift classes apart a little so problems vary in hardness
    X[y == 1] += rng.uniform(0.0, 1.5)
    costs = rng.uniform(0.05, 20.0, size=n)
    return X, y, costs
