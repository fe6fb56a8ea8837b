import math

import numpy as np
import pytest

from scenelearn.classifier import TrainConfig, fit, LabeledExample
from scenelearn.evaluation import (AccuracyCurve, curve_from_logs, deficiency,
                                   interpolate_curve, scene_accuracy,
                                   top_accuracy)
from scenelearn.features import extract
from scenelearn.strategies import RoundLog, TrialConfig


def _curve(name, accs, start=10, step=5):
    return AccuracyCurve(name, tuple((start + i * step, a)
                                     for i, a in enumerate(accs)))


class TestDeficiency:
    def test_identical_curves_equal_one(self):
        a = _curve("a", [0.3, 0.5, 0.7])
        b = _curve("b", [0.3, 0.5, 0.7])
        rep = deficiency(a, b, 0.8)
        assert rep.deficiency == pytest.approx(1.0)
        assert rep.deficiency_unclamped == pytest.approx(1.0)

    def test_hand_example_two_thirds(self):
        # gaps below 1.0: a = 0.1 + 0.1 = 0.2, b = 0.15 + 0.15 = 0.3
        a = _curve("a", [0.9, 0.9])
        b = _curve("b", [0.85, 0.85])
        rep = deficiency(a, b, 1.0)
        assert rep.deficiency == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_better_method_below_one(self):
        a = _curve("a", [0.5, 0.7, 0.8])
        b = _curve("b", [0.4, 0.5, 0.6])
        assert deficiency(a, b, 0.85).deficiency < 1.0

    def test_clamping_above_line(self):
        # a exceeds acc_max in round 2: that gap clamps to 0, not negative
        a = _curve("a", [0.7, 0.95])
        b = _curve("b", [0.6, 0.8])
        rep = deficiency(a, b, 0.9)
        expected = (0.2 + 0.0) / (0.3 + 0.1)
        assert rep.deficiency == pytest.approx(expected, abs=1e-12)
        unclamped = (0.2 - 0.05) / (0.3 + 0.1)
        assert rep.deficiency_unclamped == pytest.approx(unclamped, abs=1e-12)

    def test_zero_denominator(self):
        at_max = _curve("b", [0.9, 0.9])
        below = _curve("a", [0.8, 0.8])
        assert deficiency(at_max, at_max, 0.9).deficiency == pytest.approx(1.0)
        assert deficiency(below, at_max, 0.9).deficiency == math.inf

    def test_misaligned(self):
        with pytest.raises(ValueError, match="curves not aligned"):
            deficiency(_curve("a", [0.5]), _curve("b", [0.5, 0.6]), 0.9)

    def test_report_metadata(self):
        rep = deficiency(_curve("SwS", [0.5]), _curve("random", [0.5]), 0.7)
        assert rep.method_a == "SwS" and rep.method_b == "random"
        assert rep.acc_max == 0.7


class TestInterpolation:
    def test_exact_nodes(self):
        c = _curve("a", [0.2, 0.4, 0.6], start=10, step=10)
        out = interpolate_curve(c, [10, 20, 30])
        assert out.points == c.points

    def test_midpoints(self):
        c = _curve("a", [0.2, 0.4], start=10, step=10)
        out = interpolate_curve(c, [15])
        assert out.points[0] == (15, pytest.approx(0.3))

    def test_extrapolation_rejected(self):
        c = _curve("a", [0.2, 0.4], start=10, step=10)
        for grid in ([5, 10], [10, 25]):
            with pytest.raises(ValueError, match="extrapolation"):
                interpolate_curve(c, grid)


def test_curve_from_logs():
    logs = [RoundLog(0, "ArM", 0, 40, 0.5),
            RoundLog(1, "ArM", 12, 52, 0.6)]
    c = curve_from_logs(logs)
    assert c.strategy == "ArM"
    assert c.points == ((40, 0.5), (52, 0.6))


class TestSceneAccuracy:
    def test_empty_test_set(self, tiny_repeat):
        model = fit([LabeledExample(extract(s.primitives), s.class_id)
                     for s in tiny_repeat.seed_set],
                    config=TrainConfig(max_iters=10))
        with pytest.raises(ValueError, match="empty test set"):
            scene_accuracy(model, [], max_span=3)

    def test_seed_model_in_range(self, tiny_repeat):
        model = fit([LabeledExample(extract(s.primitives), s.class_id)
                     for s in tiny_repeat.seed_set],
                    config=TrainConfig(max_iters=100))
        acc = scene_accuracy(model, tiny_repeat.test_scenes, max_span=3)
        assert 0.0 <= acc <= 1.0

    def test_top_accuracy_beats_seed_model(self, tiny_repeat):
        config = TrialConfig(max_span=3, classifier=TrainConfig(max_iters=150))
        model = fit([LabeledExample(extract(s.primitives), s.class_id)
                     for s in tiny_repeat.seed_set],
                    config=config.classifier)
        seed_acc = scene_accuracy(model, tiny_repeat.test_scenes, config.max_span)
        top = top_accuracy(tiny_repeat, config)
        assert top >= seed_acc - 0.05
        assert 0.0 <= top <= 1.0
