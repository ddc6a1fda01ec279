import numpy as np
import pytest

from incgeom.cover import (Box, BoxCover, COUNT_CONSTANT,
                           slab_intersection_cover, verify_cover)
from incgeom.geometry import point_plane_distance

DELTA = 2.0**-8
PI1 = np.array([0.0, 0.0, 0.0])
PI2 = np.array([2.0**-3, 0.0, 3 * DELTA])


@pytest.fixture(scope="module")
def reference_cover():
    return slab_intersection_cover(PI1, PI2, DELTA)


class TestBox:
    def test_contains_axis_aligned(self):
        box = Box(
            center=np.zeros(2),
            axes=np.eye(2),
            half_lengths=np.array([1.0, 0.5]),
            thin_axis=1,
        )
        inside = np.array([[0.9, 0.4], [-1.0, 0.5]])
        outside = np.array([[1.1, 0.0], [0.0, 0.51]])
        assert box.contains(inside).all()
        assert not box.contains(outside).any()

    def test_rejects_skew_axes(self):
        axes = np.array([[1.0, 0.0], [1.0, 1.0]])
        with pytest.raises(ValueError, match="orthonormal"):
            Box(np.zeros(2), axes, np.ones(2), 0)

    def test_rejects_degenerate_half_lengths(self):
        with pytest.raises(ValueError, match="positive"):
            Box(np.zeros(2), np.eye(2), np.array([1.0, 0.0]), 0)

    def test_rejects_thin_axis_out_of_range(self):
        with pytest.raises(ValueError, match="thin_axis"):
            Box(np.zeros(2), np.eye(2), np.ones(2), 2)


class TestCoverConstruction:
    def test_reference_box_count(self, reference_cover):
        assert len(reference_cover.boxes) == 774
        assert reference_cover.count_bound == COUNT_CONSTANT / DELTA
        assert len(reference_cover.boxes) <= reference_cover.count_bound

    def test_box_shape(self, reference_cover):
        """Every tile is delta/w long in the intersection direction and at
        most a few delta across everywhere else."""
        w = reference_cover.w
        for box in reference_cover.boxes:
            thin = box.half_lengths[box.thin_axis]
            assert DELTA / w / 4 <= thin <= 4 * DELTA / w
            others = np.delete(box.half_lengths, box.thin_axis)
            assert np.all(others <= 4 * DELTA)

    def test_axes_orthonormal(self, reference_cover):
        for box in reference_cover.boxes[:25]:
            gram = box.axes @ box.axes.T
            assert np.allclose(gram, np.eye(3), atol=1e-9)

    def test_angle_recorded(self, reference_cover):
        # w is the distance of unit normals, here ~ the slope difference
        assert reference_cover.w == pytest.approx(2.0**-3, rel=0.1)

    def test_parallel_far_apart_is_empty(self):
        cover = slab_intersection_cover(PI1, np.array([0.0, 0.0, 0.5]), DELTA)
        assert cover.boxes == ()

    def test_small_angle_still_covers(self):
        # w between delta and 4 delta: the strip branch must still fire
        pi2 = np.array([2.5 * DELTA, 0.0, DELTA])
        cover = slab_intersection_cover(PI1, pi2, DELTA)
        assert len(cover.boxes) > 0
        report = verify_cover(PI1, pi2, DELTA, cover, n_samples=1000, seed=4)
        assert report.fraction == 1.0

    def test_merged_scales_are_refused(self):
        pi2 = np.array([DELTA / 2, 0.0, 0.0])
        with pytest.raises(ValueError, match="scales merge"):
            slab_intersection_cover(PI1, pi2, DELTA)

    def test_plane_validation_applies(self):
        with pytest.raises(ValueError, match="plane"):
            slab_intersection_cover(np.array([11.0, 0.0, 0.0]), PI2, DELTA)

    def test_planar_case_is_constant_size(self):
        pi1 = np.array([0.0, 0.0])
        pi2 = np.array([0.25, 2 * DELTA])
        cover = slab_intersection_cover(pi1, pi2, DELTA)
        assert len(cover.boxes) <= 64
        report = verify_cover(pi1, pi2, DELTA, cover, n_samples=2000, seed=3)
        assert report.fraction == 1.0

    def test_count_bound_enforced_by_boxcover(self):
        box = Box(np.zeros(2), np.eye(2), np.ones(2), 0)
        with pytest.raises(ValueError, match="exceeding"):
            BoxCover(boxes=(box, box), w=0.5, delta=0.25, dim=2, count_bound=1)


class TestVerifyCover:
    def test_full_coverage(self, reference_cover):
        report = verify_cover(PI1, PI2, DELTA, reference_cover, n_samples=2000, seed=0)
        assert report.fraction == 1.0
        assert report.obtained == report.requested == 2000
        assert report.miss_count == 0
        assert not report.vacuous

    def test_seed_determinism(self, reference_cover):
        a = verify_cover(PI1, PI2, DELTA, reference_cover, n_samples=500, seed=7)
        b = verify_cover(PI1, PI2, DELTA, reference_cover, n_samples=500, seed=7)
        assert a == b

    def test_shrunken_cover_misses(self, reference_cover):
        report = verify_cover(
            PI1, PI2, DELTA, reference_cover.scaled(0.25), n_samples=2000, seed=0
        )
        assert report.fraction < 1.0
        assert report.miss_count > 0
        assert 0 < len(report.miss_examples) <= 20

    def test_miss_examples_really_lie_in_the_intersection(self, reference_cover):
        report = verify_cover(
            PI1, PI2, DELTA, reference_cover.scaled(0.25), n_samples=2000, seed=0
        )
        for x in report.miss_examples:
            x = np.asarray(x)
            assert np.linalg.norm(x) <= 1.0 + 1e-9
            assert point_plane_distance(x, PI1) <= DELTA + 1e-9
            assert point_plane_distance(x, PI2) <= DELTA + 1e-9

    def test_empty_intersection_is_vacuous_pass(self):
        pi2 = np.array([0.0, 0.0, 0.5])
        cover = slab_intersection_cover(PI1, pi2, DELTA)
        report = verify_cover(PI1, pi2, DELTA, cover, n_samples=500, seed=1)
        assert report.vacuous
        assert report.fraction == 1.0
        assert report.obtained == 0


class TestSerialization:
    def test_cover_to_dict(self, reference_cover):
        d = reference_cover.to_dict()
        assert d["dim"] == 3
        assert d["delta"] == DELTA
        assert len(d["boxes"]) == len(reference_cover.boxes)
        first = d["boxes"][0]
        assert set(first) == {"center", "axes", "half_lengths", "thin_axis"}

    def test_scaled_multiplies_half_lengths(self, reference_cover):
        shrunk = reference_cover.scaled(0.5)
        orig = reference_cover.boxes[0].half_lengths
        assert np.allclose(shrunk.boxes[0].half_lengths, orig * 0.5)
        assert shrunk.w == reference_cover.w
