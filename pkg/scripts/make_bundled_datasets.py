#!/usr/bin/env python3
"""Regenerate the KEEL-format datasets bundled with the package.

Both files come from real measurement data shipped with scikit-learn:

* iris0: Fisher's iris flowers, with Iris-setosa as the positive (minority)
  class and the other two species pooled as negative — the standard
  imbalanced recast of iris used by the KEEL repository (IR = 2).
* wdbc: Wisconsin diagnostic breast cancer; malignant tumours are the
  positive (minority) class (212 of 569, IR ~ 1.68).

Run from the repository root:  python3 scripts/make_bundled_datasets.py
"""

from pathlib import Path

import numpy as np
from sklearn.datasets import load_breast_cancer, load_iris

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "fuzzysvm" / "datasets"


def fmt(v):
    # shortest round-trip decimal; KEEL files carry plain decimal literals
    return repr(float(v))


def write_keel(path, relation, feature_names, X, labels):
    lines = [f"@relation {relation}"]
    for j, name in enumerate(feature_names):
        col = X[:, j]
        lines.append(
            f"@attribute {name} real [{fmt(col.min())}, {fmt(col.max())}]"
        )
    lines.append("@attribute Class {positive, negative}")
    lines.append(f"@inputs {', '.join(feature_names)}")
    lines.append("@outputs Class")
    lines.append("@data")
    for row, lab in zip(X, labels):
        lines.append(", ".join(fmt(v) for v in row) + f", {lab}")
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(labels)} rows, {X.shape[1]} attributes)")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)

    iris = load_iris()
    labels = np.where(iris.target == 0, "positive", "negative")
    names = [n.replace(" (cm)", "").replace(" ", "_") for n in iris.feature_names]
    write_keel(OUT_DIR / "iris0.dat", "iris0", names, iris.data, labels)

    bc = load_breast_cancer()
    # target 0 = malignant (212 rows) -> positive minority class
    labels = np.where(bc.target == 0, "positive", "negative")
    names = [n.replace(" ", "_") for n in bc.feature_names]
    write_keel(OUT_DIR / "wdbc.dat", "wdbc", names, bc.data, labels)


if __name__ == "__main__":
    main()
