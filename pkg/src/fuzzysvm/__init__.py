"""Cost-sensitive fuzzy-membership SVMs for imbalanced binary classification.

The package centers on three scikit-learn-style classifiers (DECClassifier,
SFFSVMClassifier, ISFFSVMClassifier) backed by an in-house SMO solver with
per-sample cost bounds, plus dataset loaders for KEEL/CSV files, imbalance
metrics, rank-based model-comparison statistics, and a benchmark CLI
(``fuzzysvm bench|stats|fit|predict``).
"""

__version__ = "0.1.0"

from .data import (
    ClassStats,
    Dataset,
    FoldPlan,
    Scaler,
    apply_scaler,
    class_stats,
    dataset_to_csv,
    load_bundled,
    load_dataset_file,
    make_imbalanced_moons,
    parse_csv,
    parse_keel,
    standardize,
    stratified_kfold,
    train_test_split,
)
from .estimators import (
    DECClassifier,
    HyperParams,
    ISFFSVMClassifier,
    SFFSVMClassifier,
    build_dec_costs,
    fit_two_stage,
    model_from_json,
    model_to_json,
)
from .kernels import KernelSpec, kernel_matrix
from .membership import (
    A_GRID,
    MembershipParams,
    SampleSets,
    generic_slack_membership,
    majority_membership,
    minority_membership,
    partition_sets,
)
from .metrics import (
    ConfusionMatrix,
    PRCurve,
    auc_pr,
    confusion_matrix,
    evaluate_predictions,
    f1_score,
    mcc,
    pr_curve,
    precision_recall,
)
from .model_selection import GridSearchResult, default_kernel_grid, grid_search
from .solver import (
    SolverConfig,
    SvmModel,
    compute_slack_factors,
    dual_objective,
    fit_weighted_svm,
)
from .stats import (
    FriedmanResult,
    RankTable,
    ScoreMatrix,
    friedman,
    nemenyi_cd,
    nemenyi_pairs,
    rank_rows,
    score_matrix_from_csv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
