"""Domain model for multi-object scenes built from drawing primitives.

A scene is an ordered list of primitives (lines and arcs, stored as
polylines) together with a ground-truth partition of the drawing order
into labeled objects.  Objects are contiguous intervals of draw indices;
interspersed drawing is unsupported.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

LINE = "line"
ARC = "arc"
KINDS = (LINE, ARC)


@dataclass(frozen=True, eq=False)
class Primitive:
    """Smallest segmentation unit: a sampled polyline."""

    draw_index: int
    kind: str
    points: np.ndarray  # (k, 2) float64, k >= 2

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        object.__setattr__(self, "points", pts)
        if self.kind not in KINDS:
            raise ValueError(f"unknown primitive kind {self.kind!r}")
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ValueError("primitive needs a (k, 2) polyline with k >= 2")
        if not np.isfinite(pts).all():
            raise ValueError("primitive has non-finite coordinates")


@dataclass(frozen=True)
class GroundTruthObject:
    """A labeled contiguous interval [first, last] of draw indices."""

    class_id: int
    first: int
    last: int

    def __post_init__(self):
        if self.first > self.last:
            raise ValueError("object interval has first > last")
        if self.first < 0:
            raise ValueError("object interval starts below 0")

    @property
    def range(self) -> tuple[int, int]:
        return (self.first, self.last)

    @property
    def size(self) -> int:
        return self.last - self.first + 1


@dataclass(frozen=True, eq=False)
class Scene:
    scene_id: str
    primitives: tuple[Primitive, ...]
    objects: tuple[GroundTruthObject, ...]

    def __post_init__(self):
        object.__setattr__(self, "primitives", tuple(self.primitives))
        object.__setattr__(self, "objects", tuple(self.objects))

    def __len__(self) -> int:
        return len(self.primitives)


@dataclass(eq=False)
class CandidateObject:
    """A primitive interval proposed by segmentation.

    ``weight`` is the max entry of ``class_distribution``;
    ``informativeness`` is filled in by the selection strategies.
    """

    first: int
    last: int
    predicted_class: int
    class_distribution: np.ndarray
    weight: float
    informativeness: float = 0.0

    @property
    def range(self) -> tuple[int, int]:
        return (self.first, self.last)


def validate_scene(scene: Scene) -> str | None:
    """Return None if the scene satisfies all invariants, else a message
    naming the first violated one."""
    n = len(scene.primitives)
    if n == 0:
        return "scene has no primitives"
    indices = sorted(p.draw_index for p in scene.primitives)
    if indices != list(range(n)):
        return "draw_index values are not exactly 0..n-1"
    if not (1 <= len(scene.objects) <= n):
        return "object count outside [1, n]"
    objs = sorted(scene.objects, key=lambda o: o.first)
    expected = 0
    for o in objs:
        if o.last >= n:
            return "range exceeds scene"
        if o.first < expected:
            return f"overlapping ranges at index {o.first}"
        if o.first > expected:
            return f"gap at index {expected}"
        expected = o.last + 1
    if expected != n:
        return f"gap at index {expected}"
    return None


def _check_bounds(rng: tuple[int, int], scene: Scene) -> None:
    first, last = rng
    if first > last or first < 0 or last >= len(scene.primitives):
        raise ValueError("range exceeds scene")


def is_correctly_segmented(rng: tuple[int, int], scene: Scene) -> bool:
    """True iff some ground-truth object has exactly this interval."""
    _check_bounds(rng, scene)
    first, last = rng
    return any(o.first == first and o.last == last for o in scene.objects)


def intersecting_objects(rng: tuple[int, int], scene: Scene) -> list[GroundTruthObject]:
    """All ground-truth objects sharing >= 1 draw index with the range,
    in drawing order.  Never empty for a valid scene."""
    _check_bounds(rng, scene)
    first, last = rng
    hits = [o for o in scene.objects if o.first <= last and first <= o.last]
    hits.sort(key=lambda o: o.first)
    return hits


# --- scene file format -------------------------------------------------
#
# Line-oriented UTF-8 text, space separated:
#   S <scene_id>                       starts a scene block
#   P <draw_index> <kind> <x0> <y0> <x1> <y1> ...
#   O <class_id> <first> <last>


def write_scenes(scenes: Iterable[Scene], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for scene in scenes:
            fh.write(f"S {scene.scene_id}\n")
            for p in scene.primitives:
                coords = " ".join(repr(float(v)) for v in p.points.ravel())
                fh.write(f"P {p.draw_index} {p.kind} {coords}\n")
            for o in scene.objects:
                fh.write(f"O {o.class_id} {o.first} {o.last}\n")


def read_scenes(path) -> list[Scene]:
    scenes: list[Scene] = []
    scene_id: str | None = None
    prims: list[Primitive] = []
    objs: list[GroundTruthObject] = []

    def flush():
        if scene_id is not None:
            scenes.append(Scene(scene_id, tuple(prims), tuple(objs)))

    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts:
                continue
            tag = parts[0]
            if tag == "S":
                flush()
                scene_id = parts[1]
                prims, objs = [], []
            elif tag == "P":
                vals = [float(v) for v in parts[3:]]
                if len(vals) % 2:
                    raise ValueError(f"line {lineno}: odd coordinate count")
                pts = np.array(vals, dtype=np.float64).reshape(-1, 2)
                prims.append(Primitive(int(parts[1]), parts[2], pts))
            elif tag == "O":
                objs.append(GroundTruthObject(int(parts[1]), int(parts[2]), int(parts[3])))
            else:
                raise ValueError(f"line {lineno}: unknown record tag {tag!r}")
    flush()
    return scenes
