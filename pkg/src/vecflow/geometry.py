"""Point configurations behind the geometric flow constructions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vecflow.flows import DEFAULT_TOL, sigma_basis


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """An ordered list of points in R^ambient_dim; order is part of the contract."""

    ambient_dim: int
    points: np.ndarray
    exact: bool

    def __post_init__(self):
        points = np.asarray(self.points)
        if points.ndim != 2 or points.shape[1] != self.ambient_dim:
            raise ValueError(f"points must have shape (count, {self.ambient_dim})")
        if self.exact and not np.issubdtype(points.dtype, np.integer):
            raise ValueError("exact configuration requires integer coordinates")
        points = points.copy()
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @property
    def count(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class DistanceProfile:
    """Pairwise-distance multiset summarized into tolerance classes."""

    classes: tuple[tuple[float, int], ...]  # (representative, multiplicity)
    min: float
    max: float
    ratio: float


def hd_points(d: int) -> PointConfiguration:
    """All d(d-1) integer vectors with one +1, one -1, rest 0, in lexicographic order."""
    if d < 3:
        raise ValueError("need d >= 3")
    pts = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue
            vec = [0] * d
            vec[i] = 1
            vec[j] = -1
            pts.append(tuple(vec))
    pts.sort()
    return PointConfiguration(d, np.array(pts, dtype=np.int64), exact=True)


def simplex_points(d: int) -> PointConfiguration:
    """d points in R^(d-1): a regular simplex centered at the origin.

    Points 1..d-1 have ``(d-2)*sqrt(d) - 1`` in their own coordinate and
    ``-sqrt(d) - 1`` elsewhere; the last point is ``(d-1, ..., d-1)``.  All
    pairwise differences have norm ``(d-1)*sqrt(2d)`` and all pairwise sums
    norm ``(d-1)*sqrt(2(d-2))``.
    """
    if d < 3:
        raise ValueError("need d >= 3")
    root = math.sqrt(d)
    pts = np.full((d, d - 1), -root - 1.0)
    for i in range(d - 1):
        pts[i, i] = (d - 2) * root - 1.0
    pts[d - 1, :] = d - 1.0
    return PointConfiguration(d - 1, pts, exact=False)


def regular_simplex(n: int, side: float) -> PointConfiguration:
    """n+1 points in R^n, pairwise at distance ``side``, centroid at the origin."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    if side <= 0:
        raise ValueError("side must be positive")
    if n == 0:
        return PointConfiguration(0, np.zeros((1, 0)), exact=False)
    # standard-basis simplex in R^(n+1), centered, then rotated down to R^n
    corners = np.eye(n + 1) - np.full((n + 1, n + 1), 1.0 / (n + 1))
    coords = corners @ sigma_basis(n + 1)  # pairwise distance sqrt(2) preserved
    coords *= side / math.sqrt(2.0)
    return PointConfiguration(n, coords, exact=False)


def two_simplex_points(d: int) -> PointConfiguration:
    """d points in R^(d-2): two equal-side regular simplices in orthogonal subspaces.

    Dimensions split as evenly as possible (the smaller simplex first); both
    simplices get side ``sqrt(d-2)``, placed in coordinate-aligned subspaces
    so the output is reproducible.  Only the max/min distance ratio matters
    downstream, and it is scale-invariant.
    """
    if d < 4:
        raise ValueError("need d >= 4")
    d1 = (d - 2) // 2
    d2 = (d - 2) - d1
    side = math.sqrt(d - 2)
    first = regular_simplex(d1, side)
    second = regular_simplex(d2, side)
    pts = np.zeros((d, d - 2))
    pts[: d1 + 1, :d1] = first.points
    pts[d1 + 1 :, d1:] = second.points
    return PointConfiguration(d - 2, pts, exact=False)


def distance_profile(
    config: PointConfiguration,
    mode: str = "differences-only",
    tol: float = DEFAULT_TOL,
) -> DistanceProfile:
    """Cluster pairwise norms |P_i - P_j| (and |P_i + P_j| in the second mode).

    Values closer than ``tol`` fall into one class; the ratio is max/min.
    """
    if mode not in ("differences-only", "sums-and-differences"):
        raise ValueError(f"unknown mode {mode!r}")
    if config.count < 2:
        raise ValueError("need at least 2 points")
    pts = config.points.astype(float)
    dists: list[float] = []
    for i in range(config.count):
        for j in range(i + 1, config.count):
            dists.append(float(np.linalg.norm(pts[i] - pts[j])))
            if mode == "sums-and-differences":
                dists.append(float(np.linalg.norm(pts[i] + pts[j])))
    dists.sort()
    classes: list[tuple[float, int]] = []
    start = 0
    for idx in range(1, len(dists) + 1):
        if idx == len(dists) or dists[idx] - dists[idx - 1] > tol:
            block = dists[start:idx]
            classes.append((sum(block) / len(block), len(block)))
            start = idx
    lo, hi = dists[0], dists[-1]
    ratio = math.inf if lo <= tol else hi / lo
    return DistanceProfile(tuple(classes), lo, hi, ratio)
