import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzysvm import (
    ConfusionMatrix,
    auc_pr,
    confusion_matrix,
    f1_score,
    mcc,
    pr_curve,
    precision_recall,
)
from fuzzysvm.errors import LengthMismatchError, NoPositivesError

from .oracles import ap_by_threshold_enumeration, f1_by_counting, mcc_by_counting

label_vectors = st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=12)


class TestConfusionMatrix:
    def test_simple(self):
        cm = confusion_matrix([1, -1], [1, -1])
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (1, 1, 0, 0)

    def test_all_missed(self):
        cm = confusion_matrix([1, 1], [-1, -1])
        assert (cm.fn, cm.tp, cm.fp, cm.tn) == (2, 0, 0, 0)

    def test_counts_sum(self):
        rng = np.random.default_rng(0)
        t = rng.choice([-1, 1], size=10)
        p = rng.choice([-1, 1], size=10)
        assert confusion_matrix(t, p).total == 10

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            confusion_matrix([1, -1], [1])


class TestPrecisionRecallF1:
    def test_hand_values(self):
        cm = ConfusionMatrix(tp=3, fp=1, fn=2, tn=0)
        p, r = precision_recall(cm)
        assert p == 0.75
        assert r == 0.6
        assert f1_score(cm) == pytest.approx(0.9 / 1.35)
        assert f1_score(cm) == pytest.approx(0.6667, abs=1e-4)

    def test_degenerate_conventions(self):
        assert precision_recall(ConfusionMatrix(0, 0, 3, 5)) == (0.0, 0.0)
        assert f1_score(ConfusionMatrix(0, 0, 0, 5)) == 0.0

    def test_perfect(self):
        cm = ConfusionMatrix(tp=4, fp=0, fn=0, tn=6)
        assert precision_recall(cm) == (1.0, 1.0)
        assert f1_score(cm) == 1.0

    def test_harmonic_identity_on_random_matrices(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            tp, fp, fn, tn = rng.integers(0, 8, size=4)
            cm = ConfusionMatrix(int(tp), int(fp), int(fn), int(tn))
            lhs = f1_score(cm)
            rhs = 2 * tp / (2 * tp + fp + fn) if 2 * tp + fp + fn > 0 else 0.0
            assert lhs == pytest.approx(rhs, abs=1e-12)


class TestMcc:
    def test_hand_value(self):
        cm = ConfusionMatrix(tp=3, fp=1, fn=2, tn=4)
        assert mcc(cm) == pytest.approx(10.0 / np.sqrt(600.0), abs=1e-12)
        assert mcc(cm) == pytest.approx(0.4082, abs=1e-4)

    def test_perfect(self):
        assert mcc(ConfusionMatrix(5, 0, 0, 5)) == pytest.approx(1.0)

    def test_independent_predictions(self):
        assert mcc(ConfusionMatrix(1, 1, 1, 1)) == 0.0

    def test_degenerate_marginal(self):
        assert mcc(ConfusionMatrix(0, 0, 3, 5)) == 0.0

    def test_label_swap_symmetry(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            tp, fp, fn, tn = (int(v) for v in rng.integers(0, 9, size=4))
            a = mcc(ConfusionMatrix(tp, fp, fn, tn))
            b = mcc(ConfusionMatrix(tn, fn, fp, tp))  # swap classes
            assert a == pytest.approx(b, abs=1e-12)


class TestAucPr:
    def test_perfect_ranking(self):
        assert auc_pr([1, 1, -1, -1], [0.9, 0.8, 0.2, 0.1]) == pytest.approx(1.0)

    def test_single_positive_ranked_last(self):
        assert auc_pr([-1, -1, -1, 1], [4.0, 3.0, 2.0, 1.0]) == pytest.approx(0.25)

    def test_interleaved_hand_case(self):
        # positives at ranks 1 and 3: AP = 0.5*1 + 0.5*(2/3)
        got = auc_pr([1, -1, 1, -1], [0.9, 0.8, 0.7, 0.6])
        assert got == pytest.approx(0.5 + 0.5 * (2.0 / 3.0), abs=1e-12)
        assert got == pytest.approx(0.8333, abs=1e-4)

    def test_no_positives(self):
        with pytest.raises(NoPositivesError):
            auc_pr([-1, -1], [0.5, 0.2])

    def test_tied_scores_are_one_block(self):
        # both orderings of the tied pair give the same value
        a = auc_pr([1, -1, 1], [0.5, 0.5, 0.1])
        b = auc_pr([-1, 1, 1], [0.5, 0.5, 0.1])
        assert a == b
        # block value: threshold 0.5 -> (R=1/2, P=1/2); 0.1 -> (1, 2/3)
        assert a == pytest.approx(0.5 * 0.5 + 0.5 * (2.0 / 3.0), abs=1e-12)

    def test_matches_enumeration_oracle_exhaustively(self):
        rng = np.random.default_rng(3)
        for trial in range(300):
            n = int(rng.integers(1, 13))
            y = rng.choice([-1, 1], size=n)
            if not np.any(y == 1):
                y[int(rng.integers(n))] = 1
            # mix continuous scores and heavy ties
            if trial % 3 == 0:
                scores = rng.integers(0, 3, size=n).astype(float)
            else:
                scores = rng.normal(size=n)
            assert auc_pr(y, scores) == pytest.approx(
                ap_by_threshold_enumeration(y, scores), abs=1e-12
            )

    def test_monotone_transform_invariance(self):
        rng = np.random.default_rng(4)
        y = rng.choice([-1, 1], size=30)
        y[0] = 1
        scores = rng.normal(size=30)
        base = auc_pr(y, scores)
        assert auc_pr(y, 3.0 * scores + 7.0) == pytest.approx(base, abs=1e-12)
        assert auc_pr(y, np.exp(scores)) == pytest.approx(base, abs=1e-12)
        assert auc_pr(y, np.tanh(scores)) == pytest.approx(base, abs=1e-12)


class TestPrCurve:
    def test_recalls_nondecreasing_and_bounded(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            n = int(rng.integers(2, 40))
            y = rng.choice([-1, 1], size=n)
            y[0] = 1
            curve = pr_curve(y, rng.normal(size=n))
            recalls = [r for r, _ in curve.points]
            precisions = [p for _, p in curve.points]
            assert all(b >= a for a, b in zip(recalls, recalls[1:]))
            assert all(0.0 <= v <= 1.0 for v in recalls + precisions)
            assert recalls[-1] == 1.0  # lowest threshold includes everything


@settings(max_examples=300, deadline=None)
@given(pairs=st.lists(
    st.tuples(st.sampled_from([-1, 1]), st.sampled_from([-1, 1])),
    min_size=1, max_size=12,
))
def test_f1_and_mcc_match_counting_oracles(pairs):
    y_true = [t for t, _ in pairs]
    y_pred = [p for _, p in pairs]
    cm = confusion_matrix(y_true, y_pred)
    assert f1_score(cm) == pytest.approx(f1_by_counting(y_true, y_pred), abs=1e-15)
    assert mcc(cm) == pytest.approx(mcc_by_counting(y_true, y_pred), abs=1e-15)
