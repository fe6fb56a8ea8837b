"""Selection strategies and the active-learning trial driver.

Implements candidate informativeness (least confidence / margin /
entropy), the four scene-score aggregators (ArM, GM, MoS, SP), scene-wise
and segment-wise selection, a random baseline, the ground-truth annotator
oracle, and the round loop tying them together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classifier import LabeledExample, TrainConfig, fit
from .features import extract
from .scene import CandidateObject, GroundTruthObject, Scene, intersecting_objects
from .scenegen import RepeatData
from .segmentation import (SceneIntervalFeatures, SegmentationResult,
                           build_weights, segment)

MEASURES = ("least_confidence", "margin", "entropy")
SCENE_WISE = ("ArM", "GM", "MoS", "SP")
STRATEGIES = ("random",) + SCENE_WISE + ("SwS",)


def measure_distribution(p: np.ndarray, measure: str = "least_confidence") -> float:
    """Uncertainty of a class distribution, normalized to [0, 1]."""
    p = np.asarray(p, dtype=float)
    if measure == "least_confidence":
        return float(1.0 - p.max())
    if measure == "margin":
        top2 = np.sort(p)[-2:]
        return float(1.0 - (top2[1] - top2[0]))
    if measure == "entropy":
        nz = p[p > 0]
        return float(-(nz * np.log(nz)).sum() / math.log(len(p)))
    raise ValueError(f"unknown measure {measure!r}")


def informativeness(candidate: CandidateObject,
                    measure: str = "least_confidence") -> float:
    return measure_distribution(candidate.class_distribution, measure)


def score_arm(scores: Sequence[float]) -> float:
    if not scores:
        raise ValueError("empty score list")
    return float(sum(scores) / len(scores))


def score_gm(scores: Sequence[float]) -> float:
    if not scores:
        raise ValueError("empty score list")
    prod = 1.0
    for s in scores:
        prod *= s
    return float(prod ** (1.0 / len(scores)))


def score_mos(scores: Sequence[float]) -> float:
    if not scores:
        raise ValueError("empty score list")
    return float(max(scores))


def score_sp(result: SegmentationResult) -> float:
    return 1.0 - result.interpretation_probability


@dataclass(frozen=True)
class SceneScore:
    scene_id: str
    score: float


def select_scenes(scores: Sequence[SceneScore], batch_scenes: int) -> list[str]:
    """Top scenes by descending score; ties by ascending scene id."""
    ranked = sorted(scores, key=lambda s: (-s.score, s.scene_id))
    return [s.scene_id for s in ranked[:batch_scenes]]


def select_segments(candidates: Sequence[tuple[str, CandidateObject]],
                    scenes: dict[str, Scene],
                    labeled_keys: set[tuple[str, int, int]],
                    batch_objects: int,
                    ) -> list[tuple[str, GroundTruthObject]]:
    """Greedy segment-wise selection over the whole pool.

    Repeatedly takes the highest-informativeness unprocessed candidate and
    accrues the not-yet-labeled ground-truth objects intersecting it,
    until at least ``batch_objects`` new objects accrue or candidates run
    out.  May overshoot by at most one candidate's worth of objects.
    """
    ranked = sorted(candidates,
                    key=lambda c: (-c[1].informativeness, c[0], c[1].first))
    newly: list[tuple[str, GroundTruthObject]] = []
    seen = set(labeled_keys)
    for scene_id, cand in ranked:
        for obj in intersecting_objects(cand.range, scenes[scene_id]):
            key = (scene_id, obj.first, obj.last)
            if key not in seen:
                seen.add(key)
                newly.append((scene_id, obj))
        if len(newly) >= batch_objects:
            break
    return newly


def simulated_annotator(scene: Scene, request: tuple[int, int] | None = None
                        ) -> list[tuple[GroundTruthObject, int]]:
    """Ground-truth oracle: whole scene, or the objects intersecting a
    candidate range.  Never errs."""
    if request is None:
        objs = sorted(scene.objects, key=lambda o: o.first)
    else:
        objs = intersecting_objects(request, scene)
    return [(o, o.class_id) for o in objs]


@dataclass
class PoolState:
    unlabeled_scenes: dict[str, Scene]
    labeled_examples: list[LabeledExample]
    labeled_object_keys: set[tuple[str, int, int]]
    round_index: int = 0


@dataclass(frozen=True)
class RoundLog:
    round_index: int
    strategy: str
    newly_labeled_count: int
    cumulative_labeled_count: int  # includes the seed set
    accuracy: float
    scenes_selected: int = 0  # whole scenes picked this round (scene-wise/random)


@dataclass(frozen=True)
class TrialConfig:
    rounds: int = 25
    batch_scenes: int = 3
    batch_objects: int = 12
    measure: str = "least_confidence"
    max_span: int = 8
    classifier: TrainConfig = TrainConfig()


class FeatureStore:
    """Per-repeat cache of interval features and object/seed features.

    Shareable across strategies and rounds of the same repeat; everything
    inside depends only on scene geometry.
    """

    def __init__(self, max_span: int):
        self.max_span = max_span
        self._intervals: dict[str, SceneIntervalFeatures] = {}
        self._objects: dict[tuple[str, int, int], np.ndarray] = {}

    def intervals(self, scene: Scene) -> SceneIntervalFeatures:
        sif = self._intervals.get(scene.scene_id)
        if sif is None:
            sif = SceneIntervalFeatures(scene, self.max_span)
            self._intervals[scene.scene_id] = sif
        return sif

    def object_features(self, scene: Scene, first: int, last: int) -> np.ndarray:
        key = (scene.scene_id, first, last)
        feats = self._objects.get(key)
        if feats is None:
            sif = self._intervals.get(scene.scene_id)
            if sif is not None and (first, last) in sif.row:
                feats = sif.matrix[sif.row[(first, last)]]
            else:
                prims = sorted(scene.primitives, key=lambda p: p.draw_index)
                feats = extract(prims[first:last + 1])
            self._objects[key] = feats
        return feats


def _segment_pool(pool: dict[str, Scene], model, config: TrialConfig,
                  store: FeatureStore) -> dict[str, SegmentationResult]:
    results = {}
    for sid in sorted(pool):
        scene = pool[sid]
        wm = build_weights(scene, model, config.max_span, store.intervals(scene))
        res = segment(scene, wm)
        for cand in res.candidates:
            cand.informativeness = informativeness(cand, config.measure)
        results[sid] = res
    return results


def _scene_score(strategy: str, res: SegmentationResult) -> float:
    scores = [c.informativeness for c in res.candidates]
    if strategy == "ArM":
        return score_arm(scores)
    if strategy == "GM":
        return score_gm(scores)
    if strategy == "MoS":
        return score_mos(scores)
    if strategy == "SP":
        return score_sp(res)
    raise ValueError(f"unknown scene-wise strategy {strategy!r}")


def run_trial(repeat: RepeatData, strategy: str, config: TrialConfig,
              seed: int = 0, store: FeatureStore | None = None) -> list[RoundLog]:
    """Run one active-learning trial and return one log per round,
    including the seed-only round 0."""
    from .evaluation import scene_accuracy  # local import to avoid a cycle

    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if store is None:
        store = FeatureStore(config.max_span)
    rng = np.random.default_rng(seed)

    seed_examples = [LabeledExample(extract(s.primitives), s.class_id)
                     for s in repeat.seed_set]
    scene_by_id = {s.scene_id: s for s in repeat.train_scenes}
    class_count = max(s.class_id for s in repeat.seed_set) + 1
    state = PoolState(
        unlabeled_scenes={s.scene_id: s for s in repeat.train_scenes},
        labeled_examples=[],
        labeled_object_keys=set(),
    )

    model = fit(seed_examples, class_count, config.classifier)
    acc = scene_accuracy(model, repeat.test_scenes, config.max_span, store)
    logs = [RoundLog(0, strategy, 0, len(seed_examples), acc)]

    for rnd in range(1, config.rounds + 1):
        if not state.unlabeled_scenes:
            break
        state.round_index = rnd
        newly: list[tuple[str, GroundTruthObject]] = []
        scenes_selected = 0

        if strategy == "random":
            ids = sorted(state.unlabeled_scenes)
            k = min(config.batch_scenes, len(ids))
            picked = [ids[i] for i in rng.choice(len(ids), size=k, replace=False)]
            for sid in picked:
                for obj, _ in simulated_annotator(state.unlabeled_scenes[sid]):
                    newly.append((sid, obj))
                del state.unlabeled_scenes[sid]
                scenes_selected += 1
        elif strategy in SCENE_WISE:
            results = _segment_pool(state.unlabeled_scenes, model, config, store)
            scores = [SceneScore(sid, _scene_score(strategy, res))
                      for sid, res in results.items()]
            for sid in select_scenes(scores, config.batch_scenes):
                for obj, _ in simulated_annotator(state.unlabeled_scenes[sid]):
                    newly.append((sid, obj))
                del state.unlabeled_scenes[sid]
                scenes_selected += 1
        else:  # SwS
            results = _segment_pool(state.unlabeled_scenes, model, config, store)
            candidates = [(sid, c) for sid, res in sorted(results.items())
                          for c in res.candidates]
            newly = select_segments(candidates, state.unlabeled_scenes,
                                    state.labeled_object_keys,
                                    config.batch_objects)
            fully = []
            for sid, scene in state.unlabeled_scenes.items():
                keys = {(sid, o.first, o.last) for o in scene.objects}
                new_keys = {(s, o.first, o.last) for s, o in newly if s == sid}
                if keys <= (state.labeled_object_keys | new_keys):
                    fully.append(sid)
            for sid in fully:
                del state.unlabeled_scenes[sid]

        for sid, obj in newly:
            key = (sid, obj.first, obj.last)
            if key in state.labeled_object_keys:
                raise RuntimeError(f"object labeled twice: {key}")
            state.labeled_object_keys.add(key)
            feats = store.object_features(scene_by_id[sid], obj.first, obj.last)
            state.labeled_examples.append(LabeledExample(feats, obj.class_id))

        model = fit(seed_examples + state.labeled_examples, class_count,
                    config.classifier)
        acc = scene_accuracy(model, repeat.test_scenes, config.max_span, store)
        logs.append(RoundLog(
            rnd, strategy, len(newly),
            len(seed_examples) + len(state.labeled_examples), acc,
            scenes_selected))
    return logs
