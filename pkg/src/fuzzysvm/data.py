"""Loading, validating, and splitting imbalanced binary-classification data.

Two on-disk formats are understood: KEEL ``.dat`` files (``@relation`` /
``@attribute`` / ``@data`` headers) and plain CSV with a header row. In
memory everything becomes a :class:`Dataset` whose labels are +1 for the
minority class and -1 for the majority class.
"""

import csv
import io
import warnings
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import (
    DegenerateSplitError,
    EmptyDataError,
    MalformedHeaderError,
    MoreThanTwoClassesError,
    NonNumericFeatureError,
    RaggedRowsError,
    SingleClassError,
    TooFewSamplesPerClassError,
    UnknownPositiveLabelError,
)
from .validation import check_features, check_labels, check_lengths_match


@dataclass(frozen=True)
class Dataset:
    """A dense feature matrix with +1/-1 labels.

    Instances are immutable: the arrays are copied at construction and marked
    read-only, so a Dataset can be shared freely across parallel workers.
    """

    features: np.ndarray
    labels: np.ndarray
    name: str = ""

    def __post_init__(self):
        X = check_features(self.features, name="features")
        y = check_labels(self.labels, name="labels")
        check_lengths_match(X, y, names=("features", "labels"))
        if X.shape[0] < 2:
            raise ValueError("a dataset needs at least 2 rows")
        X.flags.writeable = False
        y.flags.writeable = False
        object.__setattr__(self, "features", X)
        object.__setattr__(self, "labels", y)

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]

    def subset(self, indices, name=None):
        """New Dataset limited to the given row indices."""
        indices = np.asarray(indices)
        return Dataset(
            features=self.features[indices],
            labels=self.labels[indices],
            name=self.name if name is None else name,
        )


@dataclass(frozen=True)
class ClassStats:
    n_minority: int
    n_majority: int
    imbalance_ratio: float


@dataclass(frozen=True)
class FoldPlan:
    """Assignment of every sample to one of k folds."""

    k: int
    assignments: np.ndarray
    seed: int

    def fold_indices(self, fold):
        """(train_indices, validation_indices) for one fold."""
        val = np.flatnonzero(self.assignments == fold)
        train = np.flatnonzero(self.assignments != fold)
        return train, val


@dataclass(frozen=True)
class Scaler:
    """Per-column affine transform fitted by :func:`standardize`."""

    means: np.ndarray
    scales: np.ndarray

    def transform(self, X):
        return (np.asarray(X, dtype=np.float64) - self.means) / self.scales

    def to_dict(self):
        return {"means": self.means.tolist(), "scales": self.scales.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(np.asarray(d["means"], float), np.asarray(d["scales"], float))


def class_stats(ds):
    """Count each class and form the majority/minority ratio."""
    n_pos = int(np.sum(ds.labels == 1))
    n_neg = int(np.sum(ds.labels == -1))
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError(f"dataset {ds.name!r} has a single class")
    n_minority = min(n_pos, n_neg)
    n_majority = max(n_pos, n_neg)
    return ClassStats(n_minority, n_majority, n_majority / n_minority)


# ---------------------------------------------------------------------------
# parsing


def _to_float(token, context):
    try:
        return float(token)
    except ValueError:
        raise NonNumericFeatureError(
            f"non-numeric value {token!r} in {context}"
        ) from None


def parse_keel(text, name=""):
    """Parse a KEEL ``.dat`` file into a Dataset.

    Keywords are case-insensitive and ``%`` comment lines are skipped. The
    output (class) attribute is taken from ``@outputs`` when present,
    otherwise the last declared attribute. The minority class is mapped to
    +1 by counting rows, regardless of how the classes are named; a warning
    is emitted when a class literally named "positive" turns out to be the
    majority. Categorical input attributes are rejected.
    """
    attributes = []  # declaration order
    nominal = {}  # attribute name -> set of allowed values (nominal attrs)
    inputs = None
    outputs = None
    data_rows = []
    in_data = False
    saw_data_header = False

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if in_data:
            data_rows.append(line)
            continue
        lower = line.lower()
        if lower.startswith("@relation"):
            if not name:
                parts = line.split(None, 1)
                name = parts[1].strip() if len(parts) > 1 else ""
        elif lower.startswith("@attribute"):
            body = line[len("@attribute") :].strip()
            if "{" in body:
                attr_name = body.split("{", 1)[0].strip().rstrip(",")
                values = body.split("{", 1)[1].rsplit("}", 1)[0]
                nominal[attr_name] = [v.strip() for v in values.split(",")]
            else:
                attr_name = body.split(None, 1)[0].strip()
            attributes.append(attr_name)
        elif lower.startswith("@inputs"):
            inputs = [a.strip() for a in line.split(None, 1)[1].split(",")]
        elif lower.startswith("@outputs") or lower.startswith("@output"):
            outputs = [a.strip() for a in line.split(None, 1)[1].split(",")]
        elif lower.startswith("@data"):
            in_data = True
            saw_data_header = True

    if not saw_data_header:
        raise MalformedHeaderError("missing @data section")
    if not attributes:
        raise MalformedHeaderError("no @attribute declarations before @data")
    if not data_rows:
        raise EmptyDataError("@data section has no rows")

    if outputs is None:
        outputs = [attributes[-1]]
    if len(outputs) != 1:
        raise MalformedHeaderError("exactly one output attribute is required")
    label_attr = outputs[0]
    if inputs is None:
        inputs = [a for a in attributes if a != label_attr]
    for attr in inputs:
        if attr in nominal:
            raise NonNumericFeatureError(
                f"input attribute {attr!r} is categorical"
            )

    col_index = {a: i for i, a in enumerate(attributes)}
    missing = [a for a in inputs + [label_attr] if a not in col_index]
    if missing:
        raise MalformedHeaderError(f"undeclared attribute(s): {missing}")

    feats = []
    labels_raw = []
    for row in data_rows:
        fields = [f.strip() for f in row.split(",")]
        if len(fields) != len(attributes):
            raise RaggedRowsError(
                f"row has {len(fields)} fields, expected {len(attributes)}: {row!r}"
            )
        feats.append(
            [_to_float(fields[col_index[a]], f"attribute {a!r}") for a in inputs]
        )
        labels_raw.append(fields[col_index[label_attr]])

    return _finish_dataset(feats, labels_raw, name=name)


def parse_csv(text, label_column=-1, positive_label=None, name=""):
    """Parse CSV text (header row required) into a Dataset.

    ``label_column`` picks the class column by index; every other column must
    be numeric. When ``positive_label`` is given that class maps to +1;
    otherwise the minority class (by count) maps to +1.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if len(rows) < 2:
        raise EmptyDataError("CSV needs a header row and at least one data row")
    header = rows[0]
    width = len(header)
    label_column = label_column % width
    data = rows[1:]

    feats = []
    labels_raw = []
    for row in data:
        if len(row) != width:
            raise RaggedRowsError(
                f"row has {len(row)} fields, expected {width}: {row!r}"
            )
        feats.append(
            [
                _to_float(v, f"column {header[j]!r}")
                for j, v in enumerate(row)
                if j != label_column
            ]
        )
        labels_raw.append(row[label_column].strip())

    return _finish_dataset(
        feats, labels_raw, name=name, positive_label=positive_label
    )


def _finish_dataset(feats, labels_raw, name="", positive_label=None):
    distinct = sorted(set(labels_raw))
    if len(distinct) == 1:
        raise SingleClassError(f"all rows share the label {distinct[0]!r}")
    if len(distinct) > 2:
        raise MoreThanTwoClassesError(
            f"label column has {len(distinct)} distinct values: {distinct}"
        )

    counts = {v: labels_raw.count(v) for v in distinct}
    if positive_label is not None:
        if positive_label not in counts:
            raise UnknownPositiveLabelError(
                f"positive label {positive_label!r} not found; "
                f"labels present: {distinct}"
            )
        pos = positive_label
    else:
        # minority by count; break a tie toward a class literally named
        # "positive", then lexicographically
        low = min(counts.values())
        tied = sorted(v for v, c in counts.items() if c == low)
        pos = next((v for v in tied if v.lower() == "positive"), tied[0])
        declared_pos = next((v for v in distinct if v.lower() == "positive"), None)
        if declared_pos is not None and declared_pos != pos:
            warnings.warn(
                f"class named {declared_pos!r} is the majority; relabeling "
                f"minority class {pos!r} as +1",
                stacklevel=3,
            )

    labels = np.where(np.asarray(labels_raw) == pos, 1, -1)
    return Dataset(features=np.asarray(feats, float), labels=labels, name=name)


def dataset_to_csv(ds):
    """Render a Dataset as CSV text that :func:`parse_csv` round-trips
    bit-exactly (floats are written with shortest round-trip repr)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"f{j}" for j in range(ds.n_features)] + ["class"])
    for row, label in zip(ds.features, ds.labels):
        writer.writerow(
            [repr(float(v)) for v in row]
            + ["positive" if label == 1 else "negative"]
        )
    return out.getvalue()


def load_dataset_file(path, positive_label=None):
    """Load a ``.dat`` (KEEL) or ``.csv`` file by extension."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".dat":
        return parse_keel(text, name=path.stem)
    return parse_csv(text, positive_label=positive_label, name=path.stem)


def load_bundled(name):
    """Load one of the KEEL-format datasets shipped with the package."""
    ref = resources.files("fuzzysvm.datasets").joinpath(f"{name}.dat")
    try:
        text = ref.read_text()
    except FileNotFoundError:
        raise FileNotFoundError(
            f"no bundled dataset named {name!r}; available: {bundled_names()}"
        ) from None
    return parse_keel(text, name=name)


def bundled_names():
    return sorted(
        p.name[: -len(".dat")]
        for p in resources.files("fuzzysvm.datasets").iterdir()
        if p.name.endswith(".dat")
    )


# ---------------------------------------------------------------------------
# splitting


def _class_indices(ds):
    return np.flatnonzero(ds.labels == 1), np.flatnonzero(ds.labels == -1)


def stratified_kfold(ds, k, seed):
    """Assign every sample to one of k folds, stratified by class.

    Within each class the indices are shuffled with a seeded generator and
    dealt round-robin over the folds, which makes the per-fold class counts
    differ by at most one sample from perfect proportionality.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = np.random.default_rng(seed)
    assignments = np.empty(ds.n_samples, dtype=np.int64)
    for idx in _class_indices(ds):
        if len(idx) < k:
            raise TooFewSamplesPerClassError(
                f"a class has {len(idx)} samples, fewer than k={k}"
            )
        perm = rng.permutation(idx)
        assignments[perm] = np.arange(len(perm)) % k
    return FoldPlan(k=k, assignments=assignments, seed=seed)


def train_test_split(ds, test_fraction, seed):
    """Stratified disjoint split into (train, test) Datasets."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    rng = np.random.default_rng(seed)
    test_idx = []
    train_idx = []
    for idx in _class_indices(ds):
        n_test = int(round(len(idx) * test_fraction))
        if n_test == 0 or n_test == len(idx):
            raise DegenerateSplitError(
                f"test_fraction={test_fraction} would leave a class with "
                f"{len(idx)} samples empty on one side"
            )
        perm = rng.permutation(idx)
        test_idx.append(perm[:n_test])
        train_idx.append(perm[n_test:])
    train_idx = np.sort(np.concatenate(train_idx))
    test_idx = np.sort(np.concatenate(test_idx))
    return ds.subset(train_idx), ds.subset(test_idx)


def standardize(train, others=()):
    """Z-score each feature column of ``train`` (population variance) and
    apply the identical transform to every dataset in ``others``.

    Zero-variance columns are centered and left at scale 1 so column indices
    are preserved. Returns ``(train_std, others_std, scaler)``.
    """
    X = train.features
    means = X.mean(axis=0)
    scales = X.std(axis=0)  # population (ddof=0)
    scales = np.where(scales == 0.0, 1.0, scales)
    scaler = Scaler(means=means, scales=scales)
    train_std = Dataset(scaler.transform(X), train.labels, train.name)
    others_std = [
        Dataset(scaler.transform(d.features), d.labels, d.name) for d in others
    ]
    return train_std, others_std, scaler


def apply_scaler(ds, scaler):
    return Dataset(scaler.transform(ds.features), ds.labels, ds.name)


# ---------------------------------------------------------------------------
# synthetic data


def make_imbalanced_moons(n_majority=1000, n_minority=200, noise=0.2, seed=0):
    """Two interleaving half-circles with controlled class sizes.

    The majority class (-1) sits on the upper arc, the minority class (+1)
    on the lower arc; gaussian noise is added to both coordinates.
    """
    if n_majority < 1 or n_minority < 1:
        raise ValueError("both classes need at least one sample")
    rng = np.random.default_rng(seed)
    t_maj = np.linspace(0.0, np.pi, n_majority)
    t_min = np.linspace(0.0, np.pi, n_minority)
    upper = np.column_stack([np.cos(t_maj), np.sin(t_maj)])
    lower = np.column_stack([1.0 - np.cos(t_min), 0.5 - np.sin(t_min)])
    X = np.vstack([upper, lower])
    X += rng.normal(scale=noise, size=X.shape)
    y = np.concatenate([-np.ones(n_majority, int), np.ones(n_minority, int)])
    order = rng.permutation(len(y))
    return Dataset(
        X[order],
        y[order],
        name=f"moons(ir={n_majority / n_minority:g},n={n_majority + n_minority})",
    )
