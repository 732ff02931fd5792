from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from vecflow.geometry import (
    DistanceProfile,
    PointConfiguration,
    distance_profile,
    hd_points,
    regular_simplex,
    simplex_points,
    two_simplex_points,
)


def test_point_configuration_validation():
    with pytest.raises(ValueError, match="shape"):
        PointConfiguration(3, np.zeros((4, 2)), exact=False)
    with pytest.raises(ValueError, match="integer"):
        PointConfiguration(2, np.zeros((4, 2)), exact=True)
    cfg = PointConfiguration(2, np.zeros((4, 2), dtype=np.int64), exact=True)
    assert cfg.count == 4
    with pytest.raises(ValueError):
        cfg.points[0, 0] = 1  # read-only


def test_hd_points_enumerates_the_set():
    for d in range(3, 8):
        cfg = hd_points(d)
        assert cfg.exact and cfg.ambient_dim == d
        assert cfg.count == d * (d - 1)
        rows = [tuple(int(x) for x in row) for row in cfg.points]
        expected = set()
        for i, j in itertools.permutations(range(d), 2):
            vec = [0] * d
            vec[i], vec[j] = 1, -1
            expected.add(tuple(vec))
        assert set(rows) == expected
        assert rows == sorted(rows)  # lexicographic, no duplicates
    with pytest.raises(ValueError):
        hd_points(2)


def test_simplex_points_identities():
    for d in range(3, 13):
        cfg = simplex_points(d)
        assert cfg.ambient_dim == d - 1 and cfg.count == d
        pts = cfg.points
        assert np.linalg.norm(pts.sum(axis=0)) <= 1e-9
        diff = (d - 1) * math.sqrt(2 * d)
        summ = (d - 1) * math.sqrt(2 * (d - 2))
        radius = (d - 1) ** 1.5
        for i in range(d):
            assert abs(np.linalg.norm(pts[i]) - radius) <= 1e-9
            for j in range(i + 1, d):
                assert abs(np.linalg.norm(pts[i] - pts[j]) - diff) <= 1e-9
                assert abs(np.linalg.norm(pts[i] + pts[j]) - summ) <= 1e-9
    with pytest.raises(ValueError):
        simplex_points(2)


def test_simplex_points_profile_classes():
    for d in (3, 5, 8):
        cfg = simplex_points(d)
        profile = distance_profile(cfg, mode="sums-and-differences")
        # one class of differences, one of sums (they never coincide)
        assert len(profile.classes) == 2
        counts = sorted(mult for _, mult in profile.classes)
        assert counts == [d * (d - 1) // 2, d * (d - 1) // 2]
        assert abs(profile.ratio - math.sqrt(d / (d - 2))) <= 1e-9


def test_regular_simplex_metric():
    for n in range(1, 9):
        side = 0.5 + 0.25 * n
        cfg = regular_simplex(n, side)
        assert cfg.ambient_dim == n and cfg.count == n + 1
        assert np.linalg.norm(cfg.points.sum(axis=0)) <= 1e-12
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                dist = np.linalg.norm(cfg.points[i] - cfg.points[j])
                assert abs(dist - side) <= 1e-12
    single = regular_simplex(0, 1.0)
    assert single.count == 1 and single.ambient_dim == 0
    with pytest.raises(ValueError):
        regular_simplex(-1, 1.0)
    with pytest.raises(ValueError):
        regular_simplex(2, 0.0)


def _two_simplex_expected_ratio(d: int) -> float:
    # circumradius of a regular n-simplex with side s is s * sqrt(n / (2(n+1)));
    # the two blocks sit in orthogonal subspaces, so cross distances are
    # sqrt(R1^2 + R2^2), always shorter than the common side
    d1 = (d - 2) // 2
    d2 = (d - 2) - d1
    cross_sq = d1 / (2 * (d1 + 1)) + d2 / (2 * (d2 + 1))
    return 1.0 / math.sqrt(cross_sq)


def test_two_simplex_points_identities():
    for d in range(4, 13):
        cfg = two_simplex_points(d)
        assert cfg.ambient_dim == d - 2 and cfg.count == d
        assert np.linalg.norm(cfg.points.sum(axis=0)) <= 1e-9
        profile = distance_profile(cfg)
        assert len(profile.classes) == 2
        d1 = (d - 2) // 2
        d2 = (d - 2) - d1
        within = d1 * (d1 + 1) // 2 + d2 * (d2 + 1) // 2
        across = (d1 + 1) * (d2 + 1)
        assert sorted(mult for _, mult in profile.classes) == sorted([within, across])
        assert abs(profile.ratio - _two_simplex_expected_ratio(d)) <= 1e-9
    with pytest.raises(ValueError):
        two_simplex_points(3)


def test_two_simplex_small_cases_pinned():
    # d=4: side sqrt(2), cross distance 1 -> ratio sqrt(2)
    assert abs(distance_profile(two_simplex_points(4)).ratio - math.sqrt(2)) <= 1e-12
    # d=5: ratio sqrt(12/7)
    assert abs(distance_profile(two_simplex_points(5)).ratio - math.sqrt(12 / 7)) <= 1e-12


def test_distance_profile_square():
    square = PointConfiguration(
        2, np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=np.int64), exact=True
    )
    profile = distance_profile(square)
    assert isinstance(profile, DistanceProfile)
    assert profile.classes == ((1.0, 4), (pytest.approx(math.sqrt(2)), 2))
    assert profile.min == 1.0
    assert profile.max == pytest.approx(math.sqrt(2))
    assert profile.ratio == pytest.approx(math.sqrt(2))


def test_distance_profile_modes_and_errors():
    cfg = PointConfiguration(1, np.array([[-1], [1]], dtype=np.int64), exact=True)
    diff_only = distance_profile(cfg)
    assert diff_only.classes == ((2.0, 1),)
    both = distance_profile(cfg, mode="sums-and-differences")
    assert both.min == 0.0 and both.ratio == math.inf
    with pytest.raises(ValueError, match="unknown mode"):
        distance_profile(cfg, mode="sums")
    lonely = PointConfiguration(1, np.array([[0]], dtype=np.int64), exact=True)
    with pytest.raises(ValueError, match="at least 2"):
        distance_profile(lonely)


def test_distance_profile_tolerance_clustering():
    pts = np.array([[0.0], [1.0], [2.0 + 5e-7]])
    cfg = PointConfiguration(1, pts, exact=False)
    fine = distance_profile(cfg, tol=1e-9)
    assert len(fine.classes) == 3  # 1, 1+5e-7, 2+5e-7 all distinct
    coarse = distance_profile(cfg, tol=1e-3)
    assert len(coarse.classes) == 2  # the two near-1 distances merge
    assert coarse.classes[0][1] == 2
