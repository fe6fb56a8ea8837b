"""Interval weight matrix and optimal scene interpretation.

Every contiguous primitive interval up to ``max_span`` is scored by the
classifier; the weight of an interval is the max class probability.  The
optimal partition maximizes the product of interval weights, computed by
dynamic programming over prefixes with deterministic tie-breaking (fewer
segments first, then leftmost split).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classifier import ClassifierModel, predict_proba_batch
from .features import extract
from .scene import CandidateObject, Scene


class SceneIntervalFeatures:
    """Precomputed features for all intervals of span <= max_span.

    Features depend only on geometry, so one cache serves every round and
    strategy touching the scene.
    """

    def __init__(self, scene: Scene, max_span: int):
        prims = sorted(scene.primitives, key=lambda p: p.draw_index)
        n = len(prims)
        self.n = n
        self.max_span = max_span
        self.intervals: list[tuple[int, int]] = [
            (i, j) for i in range(n) for j in range(i, min(n, i + max_span))
        ]
        self.matrix = np.vstack([extract(prims[i:j + 1]) for i, j in self.intervals])
        self.row = {iv: r for r, iv in enumerate(self.intervals)}


@dataclass(eq=False)
class WeightMatrix:
    w: np.ndarray      # (n, n), upper triangular; 0 beyond max_span
    dist: np.ndarray   # (n, n, C); uniform marker beyond max_span
    max_span: int


@dataclass(eq=False)
class SegmentationResult:
    candidates: list[CandidateObject]
    interpretation_probability: float
    degenerate: bool = False


def build_weights(scene: Scene, model: ClassifierModel, max_span: int,
                  cache: SceneIntervalFeatures | None = None) -> WeightMatrix:
    if max_span < 1:
        raise ValueError("max_span must be >= 1")
    if cache is None or cache.max_span != max_span:
        cache = SceneIntervalFeatures(scene, max_span)
    n = cache.n
    C = model.class_count
    dist = np.full((n, n, C), 1.0 / C)
    w = np.zeros((n, n))
    P = predict_proba_batch(model, cache.matrix)
    for r, (i, j) in enumerate(cache.intervals):
        dist[i, j] = P[r]
        w[i, j] = P[r].max()
    return WeightMatrix(w, dist, max_span)


def weights_from_array(w: np.ndarray, max_span: int | None = None) -> WeightMatrix:
    """Wrap a raw weight array (testing / oracle use); distributions are
    one-hot-free uniform placeholders."""
    n = w.shape[0]
    if max_span is None:
        max_span = n
    dist = np.full((n, n, 2), 0.5)
    return WeightMatrix(np.asarray(w, dtype=float), dist, max_span)


def segment(scene: Scene, wm: WeightMatrix) -> SegmentationResult:
    """Optimal partition of [0, n-1] maximizing the product of weights."""
    n = wm.w.shape[0]
    # best[j]: (value, segment count, start of last segment) for prefix 0..j
    value = np.zeros(n)
    nseg = np.zeros(n, dtype=int)
    start = np.zeros(n, dtype=int)
    for j in range(n):
        best_v, best_s, best_i = -1.0, 0, 0
        lo = max(0, j - wm.max_span + 1)
        for i in range(lo, j + 1):
            if i == 0:
                v, s = wm.w[0, j], 1
            else:
                v = value[i - 1] * wm.w[i, j]
                s = nseg[i - 1] + 1
            if v > best_v or (v == best_v and (s < best_s or (s == best_s and i < best_i))):
                best_v, best_s, best_i = v, s, i
        value[j], nseg[j], start[j] = best_v, best_s, best_i

    degenerate = value[n - 1] <= 0.0
    if degenerate:
        parts = [(i, i) for i in range(n)]
        prob = 0.0
    else:
        parts = []
        j = n - 1
        while j >= 0:
            i = int(start[j])
            parts.append((i, j))
            j = i - 1
        parts.reverse()
        prob = float(value[n - 1])

    candidates = []
    for (i, j) in parts:
        d = wm.dist[i, j]
        cls = int(np.argmax(d))  # argmax ties resolve to the lowest class id
        candidates.append(CandidateObject(i, j, cls, d.copy(), float(wm.w[i, j])))
    return SegmentationResult(candidates, prob, degenerate)


def brute_force_best(w: np.ndarray) -> float:
    """Enumerate all 2^(n-1) contiguous partitions; oracle for segment()."""
    n = w.shape[0]
    best = 0.0
    for mask in range(1 << (n - 1)):
        prod = 1.0
        i = 0
        for j in range(n):
            if j == n - 1 or (mask >> j) & 1:
                prod *= w[i, j]
                i = j + 1
        best = max(best, prod)
    return best
