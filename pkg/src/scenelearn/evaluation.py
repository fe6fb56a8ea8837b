"""Accuracy curves, top accuracy, and the deficiency measure.

Deficiency compares two learning curves against a maximum-accuracy line:
the ratio of the summed per-round gaps below that line.  Values below 1
mean the first method is superior; 1 means the curves perform alike.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .classifier import ClassifierModel, LabeledExample, fit
from .scene import Scene, is_correctly_segmented
from .segmentation import build_weights, segment
from .scenegen import RepeatData


@dataclass(frozen=True)
class AccuracyCurve:
    strategy: str
    points: tuple[tuple[int, float], ...]  # (cumulative labeled objects, accuracy)

    @property
    def labels(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @property
    def accuracies(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])


@dataclass(frozen=True)
class DeficiencyReport:
    method_a: str
    method_b: str
    acc_max: float
    deficiency: float
    deficiency_unclamped: float


def curve_from_logs(logs) -> AccuracyCurve:
    return AccuracyCurve(logs[0].strategy,
                         tuple((l.cumulative_labeled_count, l.accuracy) for l in logs))


def scene_accuracy(model: ClassifierModel, test_scenes: Sequence[Scene],
                   max_span: int, store=None) -> float:
    """Fraction of ground-truth objects whose interval is recovered exactly
    with the correct predicted label."""
    if not test_scenes:
        raise ValueError("empty test set")
    correct = 0
    total = 0
    for scene in test_scenes:
        cache = store.intervals(scene) if store is not None else None
        res = segment(scene, build_weights(scene, model, max_span, cache))
        truth = {(o.first, o.last): o.class_id for o in scene.objects}
        total += len(scene.objects)
        for cand in res.candidates:
            if truth.get(cand.range) == cand.predicted_class:
                correct += 1
    return correct / total


def top_accuracy(repeat: RepeatData, config, store=None) -> float:
    """Accuracy when every training-scene object is labeled (plus seeds);
    the maximum-accuracy line for deficiency."""
    from .features import extract
    from .strategies import FeatureStore

    if store is None:
        store = FeatureStore(config.max_span)
    examples = [LabeledExample(extract(s.primitives), s.class_id)
                for s in repeat.seed_set]
    for scene in repeat.train_scenes:
        for obj in scene.objects:
            examples.append(LabeledExample(
                store.object_features(scene, obj.first, obj.last), obj.class_id))
    class_count = max(e.class_id for e in examples) + 1
    model = fit(examples, class_count, config.classifier)
    return scene_accuracy(model, repeat.test_scenes, config.max_span, store)


def _gap_sums(a: np.ndarray, b: np.ndarray, acc_max: float, clamp: bool
              ) -> tuple[float, float]:
    ga = acc_max - a
    gb = acc_max - b
    if clamp:
        ga = np.maximum(ga, 0.0)
        gb = np.maximum(gb, 0.0)
    return float(ga.sum()), float(gb.sum())


def deficiency(curve_a: AccuracyCurve, curve_b: AccuracyCurve,
               acc_max: float) -> DeficiencyReport:
    """Per-round gap-area ratio of curve_a to curve_b below acc_max.

    Gaps above the line are clamped to 0 for the headline value; the
    unclamped ratio is reported alongside.
    """
    if len(curve_a.points) != len(curve_b.points):
        raise ValueError("curves not aligned")
    a = curve_a.accuracies
    b = curve_b.accuracies

    def ratio(num: float, den: float) -> float:
        if den == 0.0:
            return 1.0 if num == 0.0 else math.inf
        return num / den

    num_c, den_c = _gap_sums(a, b, acc_max, clamp=True)
    num_u, den_u = _gap_sums(a, b, acc_max, clamp=False)
    return DeficiencyReport(curve_a.strategy, curve_b.strategy, acc_max,
                            ratio(num_c, den_c), ratio(num_u, den_u))


def interpolate_curve(curve: AccuracyCurve, grid: Sequence[int]) -> AccuracyCurve:
    """Piecewise-linear resample onto an annotation-effort grid."""
    x = curve.labels.astype(float)
    y = curve.accuracies
    g = np.asarray(grid, dtype=float)
    if g.min() < x[0] or g.max() > x[-1]:
        raise ValueError("extrapolation not supported")
    vals = np.interp(g, x, y)
    return AccuracyCurve(curve.strategy,
                         tuple((int(gx), float(v)) for gx, v in zip(grid, vals)))
