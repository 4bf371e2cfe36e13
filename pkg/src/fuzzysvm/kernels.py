"""Kernel specifications and Gram-matrix evaluation.

Only the linear and RBF kernels are supported; both are evaluated with dense
numpy expressions. The solver pulls kernel values one training row at a time,
so :class:`KernelRowCache` keeps recently used rows (or the whole matrix when
it fits inside the configured budget).
"""

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus its parameters.

    kind is "linear" or "rbf"; gamma is required (and must be positive) for
    the RBF kernel and ignored otherwise.
    """

    kind: str = "rbf"
    gamma: float | None = 1.0

    def __post_init__(self):
        if self.kind not in ("linear", "rbf"):
            raise ValueError(f"unknown kernel kind: {self.kind!r}")
        if self.kind == "rbf":
            if self.gamma is None or not self.gamma > 0:
                raise ValueError("rbf kernel requires gamma > 0")

    def to_dict(self):
        if self.kind == "linear":
            return {"kind": "linear"}
        return {"kind": "rbf", "gamma": float(self.gamma)}

    @classmethod
    def from_dict(cls, d):
        return cls(kind=d["kind"], gamma=d.get("gamma"))

    def __str__(self):
        if self.kind == "linear":
            return "linear"
        return f"rbf(gamma={self.gamma:g})"


def kernel_matrix(spec, A, B=None):
    """Gram matrix K[i, j] = k(A[i], B[j]); B defaults to A."""
    A = np.asarray(A, dtype=np.float64)
    B = A if B is None else np.asarray(B, dtype=np.float64)
    if spec.kind == "linear":
        return A @ B.T
    # squared euclidean distances via the expanded form; clip guards the
    # tiny negatives rounding can produce
    sq = (A * A).sum(axis=1)[:, None] + (B * B).sum(axis=1)[None, :] - 2.0 * (A @ B.T)
    np.clip(sq, 0.0, None, out=sq)
    return np.exp(-spec.gamma * sq)


class KernelRowCache:
    """Row-wise kernel evaluation with LRU reuse.

    When the training set has at most ``budget`` rows the full Gram matrix is
    materialized once up front; otherwise individual rows are computed on
    demand and at most ``budget`` of them are kept alive.
    """

    def __init__(self, spec, X, budget=4096):
        self.spec = spec
        self.X = np.asarray(X, dtype=np.float64)
        self.n = self.X.shape[0]
        self.budget = int(budget)
        self._full = None
        self._rows = OrderedDict()
        if self.n <= self.budget:
            self._full = kernel_matrix(spec, self.X)

    def row(self, i):
        """Kernel values between training row i and every training row."""
        if self._full is not None:
            return self._full[i]
        cached = self._rows.get(i)
        if cached is not None:
            self._rows.move_to_end(i)
            return cached
        r = kernel_matrix(self.spec, self.X[i : i + 1], self.X)[0]
        self._rows[i] = r
        if len(self._rows) > self.budget:
            self._rows.popitem(last=False)
        return r
