import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scenelearn.classifier import (LabeledExample, TrainConfig, fit,
                                   loss_and_grad, predict_proba,
                                   predict_proba_batch)


def _toy_separable(n_per_class=20, seed=0):
    """Three well-separated Gaussian blobs in 2D."""
    rng = np.random.default_rng(seed)
    centers = np.array([[0.0, 0.0], [4.0, 0.0], [0.0, 4.0]])
    examples = []
    for c, mu in enumerate(centers):
        for _ in range(n_per_class):
            examples.append(LabeledExample(mu + 0.3 * rng.normal(size=2), c))
    return examples


class TestLossAndGrad:
    def test_zero_weights_loss_is_log_c(self):
        rng = np.random.default_rng(0)
        Xb = np.hstack([rng.normal(size=(8, 3)), np.ones((8, 1))])
        y = np.array([0, 1, 2, 0, 1, 2, 0, 1])
        loss, _ = loss_and_grad(np.zeros((3, 4)), Xb, y, 0.0)
        assert loss == pytest.approx(np.log(3), abs=1e-12)

    def test_finite_difference_gradient(self):
        rng = np.random.default_rng(1)
        n, d, c = 12, 5, 4
        Xb = np.hstack([rng.normal(size=(n, d)), np.ones((n, 1))])
        y = rng.integers(0, c, size=n)
        W = rng.normal(scale=0.3, size=(c, d + 1))
        _, grad = loss_and_grad(W, Xb, y, 1e-3)
        eps = 1e-6
        num = np.zeros_like(W)
        for i in range(c):
            for j in range(d + 1):
                Wp, Wm = W.copy(), W.copy()
                Wp[i, j] += eps
                Wm[i, j] -= eps
                lp, _ = loss_and_grad(Wp, Xb, y, 1e-3)
                lm, _ = loss_and_grad(Wm, Xb, y, 1e-3)
                num[i, j] = (lp - lm) / (2 * eps)
        rel = np.abs(grad - num).max() / max(np.abs(num).max(), 1e-12)
        assert rel < 1e-4

    def test_bias_column_unregularized(self):
        Xb = np.array([[1.0, 1.0]])
        y = np.array([0])
        W = np.array([[2.0, 3.0], [0.0, 0.0]])
        loss_a, _ = loss_and_grad(W, Xb, y, 0.0)
        loss_b, _ = loss_and_grad(W, Xb, y, 0.5)
        # only the non-bias weight (2.0) contributes to the penalty
        assert loss_b - loss_a == pytest.approx(0.5 * 0.5 * 2.0 ** 2, abs=1e-12)


class TestFit:
    def test_separable_perfect_accuracy(self):
        examples = _toy_separable()
        model = fit(examples)
        X = np.vstack([e.features for e in examples])
        y = np.array([e.class_id for e in examples])
        pred = predict_proba_batch(model, X).argmax(axis=1)
        assert (pred == y).all()

    def test_loss_history_monotone(self):
        model = fit(_toy_separable())
        diffs = np.diff(model.loss_history)
        assert (diffs <= 1e-15).all()
        assert len(model.loss_history) > 1

    def test_order_independent(self):
        examples = _toy_separable()
        rng = np.random.default_rng(3)
        shuffled = [examples[i] for i in rng.permutation(len(examples))]
        a = fit(examples, config=TrainConfig(max_iters=50))
        b = fit(shuffled, config=TrainConfig(max_iters=50))
        np.testing.assert_allclose(a.weights, b.weights, atol=1e-12)

    def test_mirrored_classes_near_uniform(self):
        # a point equidistant from symmetric classes gets ~uniform probs
        examples = [LabeledExample(np.array([-1.0, 0.0]), 0),
                    LabeledExample(np.array([1.0, 0.0]), 1)]
        model = fit(examples, config=TrainConfig(max_iters=200))
        p = predict_proba(model, np.array([0.0, 0.0]))
        np.testing.assert_allclose(p, [0.5, 0.5], atol=1e-9)

    def test_missing_class(self):
        examples = [LabeledExample(np.zeros(2), 0),
                    LabeledExample(np.ones(2), 2)]
        with pytest.raises(ValueError, match="missing class in training data: 1"):
            fit(examples)

    def test_no_examples(self):
        with pytest.raises(ValueError, match="no training examples"):
            fit([])

    def test_explicit_class_count_missing(self):
        examples = [LabeledExample(np.zeros(2), 0),
                    LabeledExample(np.ones(2), 1)]
        with pytest.raises(ValueError, match="missing class"):
            fit(examples, class_count=3)


class TestPredict:
    def test_zero_iter_model_uniform(self):
        model = fit(_toy_separable(), config=TrainConfig(max_iters=0))
        p = predict_proba_batch(model, np.random.default_rng(0).normal(size=(5, 2)))
        np.testing.assert_allclose(p, 1.0 / 3.0, atol=1e-15)

    def test_dimension_mismatch(self):
        model = fit(_toy_separable())
        with pytest.raises(ValueError, match="feature dimension"):
            predict_proba_batch(model, np.zeros((1, 7)))

    @given(st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_rows_are_distributions(self, seed):
        model = fit(_toy_separable(), config=TrainConfig(max_iters=30))
        X = np.random.default_rng(seed).normal(scale=5.0, size=(4, 2))
        P = predict_proba_batch(model, X)
        assert (P >= 0).all()
        np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-12)
