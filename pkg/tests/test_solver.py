import numpy as np
import pytest
from sklearn.exceptions import ConvergenceWarning

from fuzzysvm import KernelSpec, SolverConfig, SvmModel, compute_slack_factors, fit_weighted_svm
from fuzzysvm.errors import AllZeroCostClassError, DimensionMismatchError
from fuzzysvm.kernels import kernel_matrix
from fuzzysvm.solver import dual_objective

from .oracles import (
    grid_min_primal,
    kkt_violation,
    pg_dual_objective,
    pg_qp_solve,
    random_weighted_problem,
)

LINEAR = KernelSpec("linear", None)


def alpha_from_model(model, n):
    alpha = np.zeros(n)
    if model.support_indices is not None:
        alpha[model.support_indices] = np.abs(model.dual_coef)
    return alpha


class TestClosedForms:
    def test_two_point_hard_margin(self):
        X = np.array([[0.0], [2.0]])
        y = np.array([1, -1])
        model = fit_weighted_svm(X, y, [1e6, 1e6], LINEAR)
        assert model.coef[0] == pytest.approx(-1.0, abs=1e-6)
        assert model.bias == pytest.approx(1.0, abs=1e-6)
        # the midpoint lies on the boundary, x=0 on the positive margin
        assert model.decision_function([[1.0]])[0] == pytest.approx(0.0, abs=1e-6)
        assert model.decision_function([[0.0]])[0] == pytest.approx(1.0, abs=1e-6)

    def test_two_point_against_primal_grid_oracle(self):
        X = np.array([[0.0], [2.0]])
        y = np.array([1, -1])
        w, b, _ = grid_min_primal(X, y, np.array([1e6, 1e6]))
        assert w[0] == pytest.approx(-1.0, abs=1e-3)
        assert b == pytest.approx(1.0, abs=1e-3)

    def test_xor_rbf(self):
        X = np.array([[0, 0], [1, 1], [0, 1], [1, 0]], float)
        y = np.array([-1, -1, 1, 1])
        model = fit_weighted_svm(X, y, np.full(4, 10.0), KernelSpec("rbf", 1.0))
        preds = np.sign(model.decision_function(X))
        assert np.array_equal(preds, y)
        # cross-check the dual objective against the projected-gradient oracle
        K = kernel_matrix(KernelSpec("rbf", 1.0), X)
        a_pg = pg_qp_solve(K, y, np.full(4, 10.0))
        assert dual_objective(K, y, alpha_from_model(model, 4)) == pytest.approx(
            pg_dual_objective(K, y, a_pg), rel=1e-3, abs=1e-3
        )


class TestOracleEquivalence:
    def test_dual_objective_matches_pg_on_random_problems(self):
        rng = np.random.default_rng(101)
        for trial in range(12):
            X, y, costs = random_weighted_problem(rng)
            spec = KernelSpec("rbf", float(rng.uniform(0.1, 2.0))) if trial % 2 else LINEAR
            K = kernel_matrix(spec, X)
            model = fit_weighted_svm(X, y, costs, spec)
            assert model.converged
            a_smo = alpha_from_model(model, len(y))
            a_pg = pg_qp_solve(K, y, costs)
            obj_smo = dual_objective(K, y, a_smo)
            obj_pg = pg_dual_objective(K, y, a_pg)
            assert abs(obj_smo - obj_pg) <= 1e-3 * max(1.0, abs(obj_pg))

    def test_kkt_conditions_at_return(self):
        rng = np.random.default_rng(55)
        cfg = SolverConfig()
        for trial in range(12):
            X, y, costs = random_weighted_problem(rng)
            spec = KernelSpec("rbf", 0.8) if trial % 2 else LINEAR
            model = fit_weighted_svm(X, y, costs, spec, cfg)
            K = kernel_matrix(spec, X)
            alpha = alpha_from_model(model, len(y))
            assert kkt_violation(K, y.astype(float), alpha, costs, model.bias) <= cfg.kkt_tolerance


class TestDualFeasibility:
    def test_box_and_equality_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            X, y, costs = random_weighted_problem(rng, n_max=40)
            model = fit_weighted_svm(X, y, costs, KernelSpec("rbf", 0.5))
            alpha = alpha_from_model(model, len(y))
            assert np.all(alpha >= 0.0)
            assert np.all(alpha <= costs)
            assert abs(np.sum(alpha * y)) <= 1e-8


class TestCostHandling:
    def test_zero_cost_class_raises(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        y = np.array([1, 1, -1, -1])
        with pytest.raises(AllZeroCostClassError):
            fit_weighted_svm(X, y, [0.0, 0.0, 1.0, 1.0], LINEAR)

    def test_zero_cost_samples_excluded(self):
        rng = np.random.default_rng(0)
        X = np.r_[rng.normal(size=(10, 2)) + 2.0, rng.normal(size=(10, 2))]
        y = np.r_[np.ones(10, int), -np.ones(10, int)]
        costs = np.full(20, 5.0)
        costs[[0, 11]] = 0.0
        model = fit_weighted_svm(X, y, costs, LINEAR)
        assert 0 not in model.support_indices
        assert 11 not in model.support_indices

    def test_monotone_hardening_on_separable_data(self):
        # scaling all costs up never hurts training accuracy when the data
        # is separable
        rng = np.random.default_rng(3)
        X = np.r_[rng.normal(size=(15, 2)) + 3.0, rng.normal(size=(15, 2)) - 3.0]
        y = np.r_[np.ones(15, int), -np.ones(15, int)]
        base = rng.uniform(0.01, 0.1, size=30)
        accs = []
        for t in (1.0, 10.0, 100.0):
            model = fit_weighted_svm(X, y, base * t, LINEAR)
            preds = np.where(model.decision_function(X) >= 0, 1, -1)
            accs.append(float(np.mean(preds == y)))
        assert accs[0] <= accs[1] + 1e-12
        assert accs[1] <= accs[2] + 1e-12


class TestDecisionFunction:
    def test_dimension_mismatch(self):
        X = np.array([[0.0, 1.0], [2.0, 3.0]])
        model = fit_weighted_svm(X, np.array([1, -1]), [10.0, 10.0], LINEAR)
        with pytest.raises(DimensionMismatchError):
            model.decision_function([[1.0, 2.0, 3.0]])

    def test_empty_support_returns_bias(self):
        model = SvmModel(
            kernel=LINEAR,
            support_vectors=np.zeros((0, 2)),
            dual_coef=np.zeros(0),
            bias=0.75,
            n_features=2,
        )
        assert np.array_equal(model.decision_function([[1.0, 2.0]]), [0.75])


class TestSlackFactors:
    def test_formula_cases(self):
        # f(x) = x on the real line via a known linear model
        model = SvmModel(
            kernel=LINEAR,
            support_vectors=np.array([[1.0]]),
            dual_coef=np.array([1.0]),
            bias=0.0,
            n_features=1,
        )
        X = np.array([[1.0], [-0.5], [0.0]])
        y = np.array([1, 1, -1])
        slacks = compute_slack_factors(model, X, y)
        assert slacks[0] == pytest.approx(0.0)   # on the margin
        assert slacks[1] == pytest.approx(1.5)   # misclassified positive
        assert slacks[2] == pytest.approx(1.0)   # on the separating plane

    def test_nonnegative_and_zero_outside_margin(self):
        rng = np.random.default_rng(12)
        X, y, costs = random_weighted_problem(rng)
        model = fit_weighted_svm(X, y, costs, KernelSpec("rbf", 1.0))
        slacks = compute_slack_factors(model, X, y)
        margins = y * model.decision_function(X)
        assert np.all(slacks >= 0.0)
        assert np.all(slacks[margins > 1.0] == 0.0)
        # slack below 1 exactly when classified correctly with f*y > 0
        assert np.array_equal(slacks < 1.0, margins > 0.0)


class TestConvergenceBudget:
    def test_best_effort_model_flagged(self):
        rng = np.random.default_rng(8)
        X = rng.normal(size=(40, 2))
        y = np.r_[np.ones(20, int), -np.ones(20, int)]
        cfg = SolverConfig(kkt_tolerance=1e-12, max_passes=1)
        with pytest.warns(ConvergenceWarning):
            model = fit_weighted_svm(X, y, np.full(40, 100.0), KernelSpec("rbf", 2.0), cfg)
        assert not model.converged
        assert model.n_iter == 40  # one sweep


class TestSerialization:
    def test_json_round_trip(self):
        rng = np.random.default_rng(21)
        X, y, costs = random_weighted_problem(rng)
        model = fit_weighted_svm(X, y, costs, KernelSpec("rbf", 0.9))
        again = SvmModel.from_json(model.to_json())
        probe = rng.normal(size=(5, X.shape[1]))
        assert np.allclose(
            model.decision_function(probe), again.decision_function(probe)
        )
        assert again.kernel == model.kernel
        assert again.converged == model.converged


class TestDeterminism:
    def test_identical_runs(self):
        rng = np.random.default_rng(33)
        X, y, costs = random_weighted_problem(rng, n_max=30)
        a = fit_weighted_svm(X, y, costs, KernelSpec("rbf", 0.6))
        b = fit_weighted_svm(X, y, costs, KernelSpec("rbf", 0.6))
        assert a.to_json() == b.to_json()
