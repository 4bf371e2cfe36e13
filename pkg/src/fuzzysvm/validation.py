"""Input validation helpers shared by the estimators and core functions."""

import numpy as np

from .errors import DimensionMismatchError, LengthMismatchError


def check_features(X, *, name="X"):
    """Coerce to a finite float64 2-D array (a 1-D vector becomes one row)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got ndim={X.ndim}")
    if X.shape[1] < 1:
        raise ValueError(f"{name} must have at least one feature column")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return X


def check_labels(y, *, name="y"):
    """Coerce to an int array of +1/-1 labels."""
    y = np.asarray(y)
    if y.ndim != 1:
        raise ValueError(f"{name} must be a 1-D array, got ndim={y.ndim}")
    y = y.astype(np.int64, copy=True)
    bad = ~np.isin(y, (-1, 1))
    if bad.any():
        raise ValueError(
            f"{name} must contain only +1/-1 labels; "
            f"first offending value: {y[bad][0]!r}"
        )
    return y


def check_lengths_match(a, b, *, names=("first", "second")):
    if len(a) != len(b):
        raise LengthMismatchError(
            f"{names[0]} has length {len(a)} but {names[1]} has length {len(b)}"
        )


def check_dimension(X, n_features, *, name="X"):
    if X.shape[1] != n_features:
        raise DimensionMismatchError(
            f"{name} has {X.shape[1]} features, model was trained with {n_features}"
        )
