"""Procedural data generation: symbol templates, folds, repeats, scenes.

The pipeline mirrors a fold-based cross-validation layout: equally sized
per-class folds are merged into mutually exclusive combined folds, which
are circularly shifted to produce one (source train, source test) pair per
repeat.  Seeds are drawn from the source train set, and scenes of 2-6
objects are composed from the remaining samples without reuse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scene import ARC, LINE, GroundTruthObject, Primitive, Scene

ARC_SAMPLES = 16


@dataclass(frozen=True)
class JitterSpec:
    vertex_sigma: float = 0.02       # Gaussian per-vertex noise, clipped at 3 sigma
    max_rotation_deg: float = 10.0
    scale_min: float = 0.8
    scale_max: float = 1.2


@dataclass(frozen=True)
class SymbolTemplate:
    class_id: int
    name: str
    strokes: tuple  # ("line", (x0,y0), (x1,y1)) or ("arc", (cx,cy), r, a0_deg, a1_deg)
    jitter: JitterSpec = JitterSpec()


# 20 hand-designed shapes in the unit box, 2-5 strokes each.  Order is the
# class-id assignment; a configuration with C classes uses the first C.
_SHAPES: list[tuple[str, tuple]] = [
    ("triangle", (
        ("line", (0.2, 0.2), (0.8, 0.2)),
        ("line", (0.8, 0.2), (0.5, 0.8)),
        ("line", (0.5, 0.8), (0.2, 0.2)),
    )),
    ("box", (
        ("line", (0.2, 0.2), (0.8, 0.2)),
        ("line", (0.8, 0.2), (0.8, 0.8)),
        ("line", (0.8, 0.8), (0.2, 0.8)),
        ("line", (0.2, 0.8), (0.2, 0.2)),
    )),
    ("zigzag", (
        ("line", (0.15, 0.25), (0.4, 0.75)),
        ("line", (0.4, 0.75), (0.6, 0.25)),
        ("line", (0.6, 0.25), (0.85, 0.75)),
    )),
    ("plus", (
        ("line", (0.5, 0.15), (0.5, 0.85)),
        ("line", (0.15, 0.5), (0.85, 0.5)),
    )),
    ("tee", (
        ("line", (0.15, 0.8), (0.85, 0.8)),
        ("line", (0.5, 0.8), (0.5, 0.15)),
    )),
    ("ell", (
        ("line", (0.25, 0.85), (0.25, 0.2)),
        ("line", (0.25, 0.2), (0.8, 0.2)),
    )),
    ("cross", (
        ("line", (0.2, 0.2), (0.8, 0.8)),
        ("line", (0.2, 0.8), (0.8, 0.2)),
    )),
    ("arrow", (
        ("line", (0.15, 0.5), (0.85, 0.5)),
        ("line", (0.85, 0.5), (0.6, 0.7)),
        ("line", (0.85, 0.5), (0.6, 0.3)),
    )),
    ("house", (
        ("line", (0.25, 0.2), (0.75, 0.2)),
        ("line", (0.75, 0.2), (0.75, 0.6)),
        ("line", (0.75, 0.6), (0.5, 0.85)),
        ("line", (0.5, 0.85), (0.25, 0.6)),
        ("line", (0.25, 0.6), (0.25, 0.2)),
    )),
    ("circle", (
        ("arc", (0.5, 0.5), 0.32, 0.0, 180.0),
        ("arc", (0.5, 0.5), 0.32, 180.0, 360.0),
    )),
    ("dome", (
        ("arc", (0.5, 0.35), 0.33, 0.0, 180.0),
        ("line", (0.17, 0.35), (0.83, 0.35)),
    )),
    ("wave", (
        ("arc", (0.3, 0.5), 0.18, 0.0, 180.0),
        ("arc", (0.66, 0.5), 0.18, 180.0, 360.0),
    )),
    ("lens", (
        ("arc", (0.5, 0.18), 0.45, 45.0, 135.0),
        ("arc", (0.5, 0.82), 0.45, 225.0, 315.0),
    )),
    ("flag", (
        ("line", (0.25, 0.1), (0.25, 0.9)),
        ("line", (0.25, 0.9), (0.8, 0.75)),
        ("line", (0.8, 0.75), (0.25, 0.6)),
    )),
    ("hourglass", (
        ("line", (0.25, 0.85), (0.75, 0.85)),
        ("line", (0.75, 0.85), (0.25, 0.15)),
        ("line", (0.25, 0.15), (0.75, 0.15)),
        ("line", (0.75, 0.15), (0.25, 0.85)),
    )),
    ("stairs", (
        ("line", (0.15, 0.2), (0.45, 0.2)),
        ("line", (0.45, 0.2), (0.45, 0.5)),
        ("line", (0.45, 0.5), (0.75, 0.5)),
        ("line", (0.75, 0.5), (0.75, 0.8)),
    )),
    ("bolt", (
        ("line", (0.55, 0.9), (0.35, 0.5)),
        ("line", (0.35, 0.5), (0.6, 0.5)),
        ("line", (0.6, 0.5), (0.4, 0.1)),
    )),
    ("gate", (
        ("line", (0.25, 0.15), (0.25, 0.6)),
        ("arc", (0.5, 0.6), 0.25, 0.0, 180.0),
        ("line", (0.75, 0.6), (0.75, 0.15)),
    )),
    ("tent", (
        ("line", (0.15, 0.2), (0.5, 0.8)),
        ("line", (0.5, 0.8), (0.85, 0.2)),
        ("line", (0.85, 0.2), (0.15, 0.2)),
        ("line", (0.5, 0.8), (0.5, 0.2)),
    )),
    ("diamond", (
        ("line", (0.5, 0.1), (0.85, 0.5)),
        ("line", (0.85, 0.5), (0.5, 0.9)),
        ("line", (0.5, 0.9), (0.15, 0.5)),
        ("line", (0.15, 0.5), (0.5, 0.1)),
    )),
]

MAX_CLASSES = len(_SHAPES)


def default_templates(class_count: int, jitter: JitterSpec | None = None) -> dict[int, SymbolTemplate]:
    if not (1 <= class_count <= MAX_CLASSES):
        raise ValueError(f"class_count must be in [1, {MAX_CLASSES}]")
    jitter = jitter or JitterSpec()
    return {
        c: SymbolTemplate(c, _SHAPES[c][0], _SHAPES[c][1], jitter)
        for c in range(class_count)
    }


def _stroke_points(stroke) -> np.ndarray:
    kind = stroke[0]
    if kind == "line":
        return np.array([stroke[1], stroke[2]], dtype=np.float64)
    if kind == "arc":
        (cx, cy), r, a0, a1 = stroke[1], stroke[2], stroke[3], stroke[4]
        ang = np.radians(np.linspace(a0, a1, ARC_SAMPLES))
        return np.column_stack([cx + r * np.cos(ang), cy + r * np.sin(ang)])
    raise ValueError(f"unknown stroke kind {kind!r}")


def synth_symbol(class_id: int, rng: np.random.Generator,
                 templates: dict[int, SymbolTemplate]) -> list[Primitive]:
    """Instantiate a template with a random rotation/scale about the box
    center plus clipped per-vertex Gaussian jitter."""
    if class_id not in templates:
        raise ValueError(f"unknown class_id {class_id}")
    tpl = templates[class_id]
    jit = tpl.jitter
    theta = rng.uniform(-1.0, 1.0) * math.radians(jit.max_rotation_deg)
    scale = rng.uniform(jit.scale_min, jit.scale_max)
    rot = np.array([[math.cos(theta), -math.sin(theta)],
                    [math.sin(theta), math.cos(theta)]])
    center = np.array([0.5, 0.5])
    prims = []
    for i, stroke in enumerate(tpl.strokes):
        pts = _stroke_points(stroke)
        pts = (pts - center) @ rot.T * scale + center
        noise = rng.normal(0.0, jit.vertex_sigma, size=pts.shape)
        limit = 3.0 * jit.vertex_sigma
        pts = pts + np.clip(noise, -limit, limit)
        kind = LINE if stroke[0] == "line" else ARC
        prims.append(Primitive(i, kind, pts))
    return prims


@dataclass(frozen=True, eq=False)
class IsolatedSample:
    """One labeled isolated object, tracked by a unique id so reuse across
    scenes, seeds, and splits can be ruled out."""

    sample_id: str
    class_id: int
    primitives: tuple[Primitive, ...]


def generate_samples(class_count: int, samples_per_class: int,
                     rng: np.random.Generator,
                     templates: dict[int, SymbolTemplate] | None = None,
                     ) -> dict[int, list[IsolatedSample]]:
    templates = templates or default_templates(class_count)
    out: dict[int, list[IsolatedSample]] = {}
    for c in range(class_count):
        out[c] = [
            IsolatedSample(f"c{c}-s{i}", c, tuple(synth_symbol(c, rng, templates)))
            for i in range(samples_per_class)
        ]
    return out


def make_folds(samples_per_class: dict[int, list[IsolatedSample]],
               n_folds: int, rng: np.random.Generator,
               ) -> dict[int, list[list[IsolatedSample]]]:
    """Random equally sized disjoint folds, per class."""
    folds: dict[int, list[list[IsolatedSample]]] = {}
    for c in sorted(samples_per_class):
        samples = samples_per_class[c]
        if len(samples) % n_folds != 0:
            raise ValueError(
                f"fold size mismatch: class {c} has {len(samples)} samples, "
                f"not divisible by {n_folds} folds")
        size = len(samples) // n_folds
        order = rng.permutation(len(samples))
        folds[c] = [[samples[order[f * size + k]] for k in range(size)]
                    for f in range(n_folds)]
    return folds


def combine_folds(per_class_folds: dict[int, list[list[IsolatedSample]]]
                  ) -> list[list[IsolatedSample]]:
    """Merge fold i of every class into combined-fold i."""
    counts = {len(f) for f in per_class_folds.values()}
    if len(counts) != 1:
        raise ValueError("mismatched fold counts across classes")
    n_folds = counts.pop()
    return [
        [s for c in sorted(per_class_folds) for s in per_class_folds[c][i]]
        for i in range(n_folds)
    ]


def make_repeats(combined_folds: list[list[IsolatedSample]]
                 ) -> list[tuple[list[IsolatedSample], list[IsolatedSample]]]:
    """Circular shift: repeat r trains on folds r..r+N-2 and tests on fold
    r+N-1 (mod N)."""
    n = len(combined_folds)
    if n < 2:
        raise ValueError("need at least 2 combined folds")
    out = []
    for r in range(n):
        train = [s for i in range(n - 1) for s in combined_folds[(r + i) % n]]
        test = list(combined_folds[(r + n - 1) % n])
        out.append((train, test))
    return out


def draw_seeds(source_train: list[IsolatedSample], seeds_per_class: int,
               rng: np.random.Generator,
               ) -> tuple[list[IsolatedSample], list[IsolatedSample]]:
    by_class: dict[int, list[int]] = {}
    for i, s in enumerate(source_train):
        by_class.setdefault(s.class_id, []).append(i)
    chosen: set[int] = set()
    seeds: list[IsolatedSample] = []
    for c in sorted(by_class):
        idxs = by_class[c]
        if len(idxs) < seeds_per_class:
            raise ValueError(f"class {c} has fewer than {seeds_per_class} samples")
        picks = rng.choice(len(idxs), size=seeds_per_class, replace=False)
        for p in sorted(picks):
            chosen.add(idxs[p])
            seeds.append(source_train[idxs[p]])
    remaining = [s for i, s in enumerate(source_train) if i not in chosen]
    return seeds, remaining


def _bbox(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return points.min(axis=0), points.max(axis=0)


def compose_scenes(source: list[IsolatedSample], sizes: tuple[int, ...],
                   per_size: int, rng: np.random.Generator, id_prefix: str,
                   ) -> tuple[list[Scene], dict[str, tuple[str, ...]], list[IsolatedSample]]:
    """Compose ``per_size`` scenes for each size k, each drawing one sample
    of k distinct classes and removing them from the source pool.

    Objects are laid out left to right on a jittered horizontal strip with
    >= 0.1 bounding-box separation; drawing order is placement order.
    Returns (scenes, scene_id -> sample ids, remaining source samples).
    """
    pools: dict[int, list[IsolatedSample]] = {}
    for s in source:
        pools.setdefault(s.class_id, []).append(s)
    scenes: list[Scene] = []
    provenance: dict[str, tuple[str, ...]] = {}
    for k in sorted(sizes):
        for t in range(per_size):
            available = sorted(c for c, p in pools.items() if p)
            if len(available) < k:
                raise ValueError(f"insufficient samples for size {k}")
            classes = rng.choice(len(available), size=k, replace=False)
            picked: list[IsolatedSample] = []
            for ci in classes:
                pool = pools[available[ci]]
                picked.append(pool.pop(int(rng.integers(len(pool)))))
            prims: list[Primitive] = []
            objects: list[GroundTruthObject] = []
            cursor = 0.0
            for sample in picked:
                pts_all = np.vstack([p.points for p in sample.primitives])
                lo, hi = _bbox(pts_all)
                shift = np.array([cursor - lo[0], rng.uniform(-0.1, 0.1)])
                first = len(prims)
                for p in sample.primitives:
                    prims.append(Primitive(len(prims), p.kind, p.points + shift))
                objects.append(GroundTruthObject(sample.class_id, first, len(prims) - 1))
                cursor += (hi[0] - lo[0]) + 0.1 + rng.uniform(0.0, 0.1)
            scene_id = f"{id_prefix}k{k}-{t:02d}"
            scenes.append(Scene(scene_id, tuple(prims), tuple(objects)))
            provenance[scene_id] = tuple(s.sample_id for s in picked)
    remaining = [s for c in sorted(pools) for s in pools[c]]
    return scenes, provenance, remaining


@dataclass(frozen=True, eq=False)
class RepeatData:
    repeat_index: int
    seed_set: tuple[IsolatedSample, ...]
    train_scenes: tuple[Scene, ...]
    test_scenes: tuple[Scene, ...]
    provenance: dict[str, tuple[str, ...]]  # scene_id -> sample ids


DEFAULT_SIZES = (2, 3, 4, 5, 6)


def generate_repeats(master_seed: int, class_count: int = 10,
                     samples_per_class: int = 250, n_repeats: int = 5,
                     seeds_per_class: int = 4,
                     sizes: tuple[int, ...] = DEFAULT_SIZES,
                     scenes_per_size: int = 20,
                     jitter: JitterSpec | None = None,
                     ) -> list[RepeatData]:
    """Run the full generation pipeline deterministically from one seed."""
    ss = np.random.SeedSequence(master_seed)
    children = ss.spawn(2 + n_repeats)
    templates = default_templates(class_count, jitter)
    samples = generate_samples(class_count, samples_per_class,
                               np.random.default_rng(children[0]), templates)
    folds = make_folds(samples, n_repeats, np.random.default_rng(children[1]))
    combined = combine_folds(folds)
    sources = make_repeats(combined)
    repeats: list[RepeatData] = []
    for r, (src_train, src_test) in enumerate(sources):
        rng = np.random.default_rng(children[2 + r])
        seeds, src_train = draw_seeds(src_train, seeds_per_class, rng)
        train_scenes, prov_train, _ = compose_scenes(
            src_train, sizes, scenes_per_size, rng, f"r{r}-train-")
        test_scenes, prov_test, _ = compose_scenes(
            src_test, sizes, scenes_per_size, rng, f"r{r}-test-")
        repeats.append(RepeatData(
            repeat_index=r,
            seed_set=tuple(seeds),
            train_scenes=tuple(train_scenes),
            test_scenes=tuple(test_scenes),
            provenance={**prov_train, **prov_test},
        ))
    return repeats
