import numpy as np
import pytest

from scenelearn.scene import GroundTruthObject, Primitive, Scene
from scenelearn.scenegen import generate_repeats


def make_scene(ranges, scene_id="s", classes=None):
    """Scene with dummy line primitives and the given object ranges."""
    n = max(last for _, last in ranges) + 1
    prims = tuple(
        Primitive(i, "line", np.array([[0.0, 0.0], [1.0, 1.0]]) + i)
        for i in range(n))
    classes = classes or [0] * len(ranges)
    objs = tuple(GroundTruthObject(c, f, l)
                 for c, (f, l) in zip(classes, ranges))
    return Scene(scene_id, prims, objs)


@pytest.fixture(scope="session")
def tiny_repeat():
    """Small but complete repeat: 5 classes, 10 train / 10 test scenes."""
    reps = generate_repeats(master_seed=7, class_count=5, samples_per_class=20,
                            n_repeats=2, seeds_per_class=2,
                            sizes=(2, 3), scenes_per_size=5)
    return reps[0]
