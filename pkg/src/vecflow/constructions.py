"""Concrete vector flows built from covers and from the Petersen unit-vector figure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from vecflow.cdc import CycleDoubleCover, OrientedCDC, verify_cdc, verify_oriented_cdc
from vecflow.flows import VectorFlow, conservation_residual, normalize, norm_range
from vecflow.geometry import PointConfiguration, simplex_points, two_simplex_points
from vecflow.graphs import Multigraph, Orientation, eulerian_orientation, petersen_graph


def simplex_ratio_bound(d: int) -> float:
    """Upper bound on r certified by the single-simplex construction."""
    return 1.0 + math.sqrt(d / (d - 2))


def two_simplex_ratio_bound(d: int) -> float:
    """Upper bound on r certified by the paired-simplices construction."""
    if d % 2 == 0:
        return 1.0 + math.sqrt(d / (d - 2))
    return 1.0 + math.sqrt((d * d - 1) / (d * d - 2 * d - 1))


@dataclass(frozen=True)
class ConstructedFlow:
    """A normalized constructed flow plus its certified bound and edge trace.

    ``trace[e]`` records the two (member index, sign) contributions that were
    summed on edge ``e``; ``points`` maps member indices to vectors.
    """

    flow: VectorFlow
    r: float
    bound: float
    trace: tuple[tuple[tuple[int, int], ...], ...]
    points: PointConfiguration
    raw: VectorFlow

    @property
    def within_bound(self) -> bool:
        return self.r <= self.bound + 1e-9


def simplex_flow(g: Multigraph, cover: CycleDoubleCover) -> ConstructedFlow:
    """Flow in R^(k-1) from an unoriented k-cover via regular-simplex points.

    Member i contributes +/- its simplex point along an eulerian orientation
    of the member, so each edge receives ``±a_i ± a_j``; both achievable norms
    are nonzero, and their ratio is at most ``sqrt(k/(k-2))``.
    """
    d = cover.k
    if d < 3:
        raise ValueError("need a cover with at least 3 members")
    report = verify_cdc(g, cover)
    if not report:
        raise ValueError(f"invalid cover: {report.failure}")
    if g.m == 0:
        raise ValueError("graph has no edges")
    orientation = Orientation.reference(g)
    points = simplex_points(d)
    values = np.zeros((g.m, d - 1))
    trace: list[list[tuple[int, int]]] = [[] for _ in range(g.m)]
    for idx, member in enumerate(cover.members):
        directed = eulerian_orientation(g, member)
        for eid, t, h in directed.directions:
            sign = 1 if (t, h) == orientation.directions[eid] else -1
            values[eid] += sign * points.points[idx]
            trace[eid].append((idx, sign))
    raw = VectorFlow(d - 1, orientation, values, exact=False)
    flow, r = normalize(raw)
    return ConstructedFlow(
        flow=flow,
        r=r,
        bound=simplex_ratio_bound(d),
        trace=tuple(tuple(t) for t in trace),
        points=points,
        raw=raw,
    )


def two_simplex_flow(g: Multigraph, cover: OrientedCDC) -> ConstructedFlow:
    """Flow in R^(k-2) from an oriented k-cover via two orthogonal simplices.

    The cover's own directions serve as the eulerian orientations, so the two
    covering members of an edge contribute with opposite signs and every edge
    value is exactly a difference ``P_i - P_j`` of distinct configuration
    points.  An unoriented cover is not accepted: with independent member
    orientations an edge could receive ``P_i + P_j``, whose norm can collapse
    (antipodal simplex corners), destroying the bound.
    """
    d = cover.k
    if d < 4:
        raise ValueError(
            "need an oriented cover with at least 4 members; "
            "3-member covers are handled by the integer-flow equivalence"
        )
    report = verify_oriented_cdc(g, cover)
    if not report:
        raise ValueError(f"invalid oriented cover: {report.failure}")
    if g.m == 0:
        raise ValueError("graph has no edges")
    orientation = Orientation.reference(g)
    points = two_simplex_points(d)
    values = np.zeros((g.m, d - 2))
    trace: list[list[tuple[int, int]]] = [[] for _ in range(g.m)]
    for idx, member in enumerate(cover.members):
        for eid, t, h in member.directions:
            sign = 1 if (t, h) == orientation.directions[eid] else -1
            values[eid] += sign * points.points[idx]
            trace[eid].append((idx, sign))
    raw = VectorFlow(d - 2, orientation, values, exact=False)
    flow, r = normalize(raw)
    return ConstructedFlow(
        flow=flow,
        r=r,
        bound=two_simplex_ratio_bound(d),
        trace=tuple(tuple(t) for t in trace),
        points=points,
        raw=raw,
    )


# ---------------------------------------------------------------------------
# Petersen unit-vector flow in R^3


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def petersen_s2_flow(
    tol: float = 1e-9, seed: int = 0, max_attempts: int = 40
) -> VectorFlow:
    """A unit-norm flow on the Petersen graph in R^3.

    Exploits the graph's 5-fold symmetry: outer-edge vectors are successive
    rotations (by 2*pi/5 about the z-axis) of one unit vector, inner-edge
    vectors rotations of another, and spoke vectors follow from conservation.
    The remaining 6-dimensional system (one vector identity plus three unit
    norms) is solved numerically from seeded random starts; the returned flow
    is verified to have every norm within ``tol`` of 1 and conservation
    residual at most ``tol``.
    """
    fifth = 2.0 * math.pi / 5.0
    rot = _rotation(fifth)
    rot_powers = [np.linalg.matrix_power(rot, i) for i in range(5)]
    eye = np.eye(3)
    # spokes are differences of consecutive outer vectors; the inner identity
    # couples the two free vectors: (I - R^3) B0 = (R^4 - I) A0
    lhs_b = eye - rot_powers[3]
    rhs_a = rot_powers[4] - eye

    def residuals(x: np.ndarray) -> np.ndarray:
        a0, b0 = x[:3], x[3:]
        s0 = rhs_a @ a0
        vec = lhs_b @ b0 - s0
        return np.concatenate(
            [vec, [a0 @ a0 - 1.0, b0 @ b0 - 1.0, s0 @ s0 - 1.0]]
        )

    rng = np.random.default_rng(seed)
    solution = None
    for _ in range(max_attempts):
        start = rng.normal(size=6)
        result = least_squares(residuals, start, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.max(np.abs(residuals(result.x))) <= 1e-12:
            solution = result.x
            break
    if solution is None:
        raise RuntimeError(
            "unit-vector solver did not converge; try a different seed"
        )

    a0, b0 = solution[:3], solution[3:]
    s0 = rhs_a @ a0
    directions = (
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i, 5 + i) for i in range(5)]
        + [(5 + i, 5 + ((i + 2) % 5)) for i in range(5)]
    )
    values = np.zeros((15, 3))
    for i in range(5):
        values[i] = rot_powers[i] @ a0
        values[5 + i] = rot_powers[i] @ s0
        values[10 + i] = rot_powers[i] @ b0
    flow = VectorFlow(3, Orientation(tuple(directions)), values, exact=False)

    g = petersen_graph()
    lo, hi = norm_range(flow)
    if not (1.0 - tol <= lo and hi <= 1.0 + tol):
        raise RuntimeError(f"solver produced norms outside [1-tol, 1+tol]: ({lo}, {hi})")
    residual = conservation_residual(g, flow)
    if residual > tol:
        raise RuntimeError(f"solver produced conservation residual {residual}")
    return flow
