"""KEEL-format datasets shipped with the package for demos and smoke tests.

* ``iris0.dat`` — the classic 150-flower iris data recast as the standard
  imbalanced benchmark task: Iris-setosa (50 rows) is the positive minority
  class against the other two species pooled as the majority (IR = 2).
* ``wdbc.dat`` — the Wisconsin diagnostic breast-cancer data (569 rows,
  30 features); malignant is the positive minority class (IR ~ 1.68).

Load them with :func:`fuzzysvm.data.load_bundled`, e.g.
``load_bundled("iris0")``. See ``scripts/make_bundled_datasets.py`` in the
source tree for how the files were produced.
"""
