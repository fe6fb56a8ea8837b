import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scenelearn.scene import (GroundTruthObject, Primitive, Scene,
                              intersecting_objects, is_correctly_segmented,
                              read_scenes, validate_scene, write_scenes)

from conftest import make_scene


class TestValidateScene:
    def test_exact_partition_ok(self):
        assert validate_scene(make_scene([(0, 2), (3, 4)])) is None

    def test_overlap(self):
        scene = make_scene([(0, 2), (2, 4)])
        assert "overlapping ranges" in validate_scene(scene)

    def test_gap(self):
        scene = make_scene([(0, 1), (3, 4)])
        assert "gap at index 2" in validate_scene(scene)

    def test_range_out_of_bounds(self):
        prims = tuple(Primitive(i, "line", np.array([[0.0, 0.0], [1.0, 1.0]]))
                      for i in range(2))
        scene = Scene("s", prims, (GroundTruthObject(0, 0, 5),))
        assert validate_scene(scene) is not None

    def test_bad_draw_indices(self):
        prims = (Primitive(0, "line", np.array([[0.0, 0.0], [1.0, 1.0]])),
                 Primitive(2, "line", np.array([[0.0, 0.0], [1.0, 1.0]])))
        scene = Scene("s", prims, (GroundTruthObject(0, 0, 1),))
        assert "draw_index" in validate_scene(scene)


class TestIsCorrectlySegmented:
    def test_exact_match(self):
        scene = make_scene([(0, 2), (3, 5)])
        assert is_correctly_segmented((3, 5), scene)

    def test_spans_boundary(self):
        scene = make_scene([(0, 2), (3, 5), (6, 6)])
        assert not is_correctly_segmented((3, 6), scene)

    def test_single_primitive(self):
        scene = make_scene([(0, 0)])
        assert is_correctly_segmented((0, 0), scene)

    def test_out_of_bounds(self):
        scene = make_scene([(0, 2)])
        with pytest.raises(ValueError, match="range exceeds scene"):
            is_correctly_segmented((0, 3), scene)


class TestIntersectingObjects:
    def test_partial_overlaps(self):
        scene = make_scene([(0, 2), (3, 4), (5, 6)])
        hits = intersecting_objects((2, 4), scene)
        assert [o.range for o in hits] == [(0, 2), (3, 4)]

    def test_full_cover(self):
        scene = make_scene([(0, 1), (2, 4), (5, 6)])
        assert len(intersecting_objects((0, 6), scene)) == 3

    def test_single_overlap(self):
        scene = make_scene([(0, 4), (5, 6)])
        assert [o.range for o in intersecting_objects((5, 5), scene)] == [(5, 6)]

    def test_out_of_bounds(self):
        scene = make_scene([(0, 2)])
        with pytest.raises(ValueError, match="range exceeds scene"):
            intersecting_objects((-1, 1), scene)


@st.composite
def partitions(draw):
    n = draw(st.integers(1, 12))
    cuts = sorted(draw(st.sets(st.integers(0, n - 2), max_size=n - 1))) if n > 1 else []
    bounds = [0] + [c + 1 for c in cuts] + [n]
    return n, [(bounds[i], bounds[i + 1] - 1) for i in range(len(bounds) - 1)]


@given(partitions(), st.data())
@settings(max_examples=200)
def test_intersection_properties(part, data):
    n, ranges = part
    scene = make_scene(ranges)
    first = data.draw(st.integers(0, n - 1))
    last = data.draw(st.integers(first, n - 1))
    hits = intersecting_objects((first, last), scene)
    assert hits
    covered = set()
    for o in hits:
        covered.update(range(o.first, o.last + 1))
    assert set(range(first, last + 1)) <= covered
    # correctness predicate agrees with the single-exact-hit reading
    exact = len(hits) == 1 and hits[0].range == (first, last)
    assert is_correctly_segmented((first, last), scene) == exact


def test_file_round_trip(tmp_path, tiny_repeat):
    path = tmp_path / "scenes.txt"
    scenes = tiny_repeat.train_scenes[:4]
    write_scenes(scenes, path)
    back = read_scenes(path)
    assert len(back) == len(scenes)
    for a, b in zip(scenes, back):
        assert a.scene_id == b.scene_id
        assert len(a.primitives) == len(b.primitives)
        assert a.objects == b.objects
        for pa, pb in zip(a.primitives, b.primitives):
            assert pa.kind == pb.kind
            np.testing.assert_array_equal(pa.points, pb.points)
