"""Vector-valued flows: verification, special value sets, projection, integer search."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from vecflow.graphs import Multigraph, Orientation, bridges, spanning_forest

#: Default tolerance for floating-point residual and membership checks.
DEFAULT_TOL = 1e-9


class Verdict(str, enum.Enum):
    """Outcome of an exhaustive-with-budget search."""

    FOUND = "found"
    NONE = "none"
    UNKNOWN = "unknown"


@dataclass(frozen=True, eq=False)
class VectorFlow:
    """An assignment of one vector in ``R^d`` to every edge, with an orientation.

    ``exact`` flags integer-valued flows whose conservation can be checked in
    exact arithmetic.
    """

    d: int
    orientation: Orientation
    values: np.ndarray
    exact: bool

    def __post_init__(self):
        values = np.asarray(self.values)
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if values.ndim != 2 or values.shape != (len(self.orientation.directions), self.d):
            raise ValueError(
                f"values must have shape (m, d) = ({len(self.orientation.directions)}, {self.d})"
            )
        if self.exact:
            if not np.issubdtype(values.dtype, np.integer):
                if not np.all(values == np.round(values)):
                    raise ValueError("exact flow requires integer coordinates")
                values = values.astype(np.int64)
        else:
            values = values.astype(float)
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def m(self) -> int:
        return len(self.orientation.directions)


def validate_flow(g: Multigraph, f: VectorFlow) -> None:
    f.orientation.validate(g)


def conservation_residual(g: Multigraph, f: VectorFlow) -> float:
    """Max over vertices of the Euclidean norm of (inflow - outflow).

    Exactly ``0.0`` for valid exact-integer flows (integer accumulation).
    """
    validate_flow(g, f)
    net = np.zeros((g.n, f.d), dtype=f.values.dtype)
    for eid, (t, h) in enumerate(f.orientation.directions):
        net[h] += f.values[eid]
        net[t] -= f.values[eid]
    if f.exact and not net.any():
        return 0.0
    if g.n == 0:
        return 0.0
    return float(np.max(np.linalg.norm(net.astype(float), axis=1)))


def norm_range(f: VectorFlow) -> tuple[float, float]:
    """(min, max) Euclidean norm over edge values; rejects empty edge sets."""
    if f.m == 0:
        raise ValueError("norm range of a flow with no edges is undefined")
    norms = np.linalg.norm(f.values.astype(float), axis=1)
    return float(norms.min()), float(norms.max())


def normalize(f: VectorFlow) -> tuple[VectorFlow, float]:
    """Scale so the minimum norm is 1; returns ``(flow, r)`` with ``r = 1 + max/min``.

    The scaled flow has values with norms in ``[1, r - 1]``, so it witnesses an
    ``(r, d)``-NZF whenever its residual is within tolerance.
    """
    lo, hi = norm_range(f)
    if lo <= 0.0 or not math.isfinite(lo):
        raise ValueError("cannot normalize a flow with a zero-norm edge value")
    scaled = VectorFlow(f.d, f.orientation, f.values.astype(float) / lo, exact=False)
    return scaled, 1.0 + hi / lo


def in_hd(v: Sequence[float] | np.ndarray) -> bool:
    """Exactly one coordinate +1, one -1, all others 0."""
    arr = np.asarray(v)
    plus = int(np.count_nonzero(arr == 1))
    minus = int(np.count_nonzero(arr == -1))
    zero = int(np.count_nonzero(arr == 0))
    return plus == 1 and minus == 1 and plus + minus + zero == arr.size


def in_td(v: Sequence[float] | np.ndarray) -> bool:
    """Exactly two nonzero coordinates, each equal to +1 or -1.

    This set is closed under sign flips, so edge reorientation stays inside it.
    """
    arr = np.asarray(v)
    ones = int(np.count_nonzero(np.abs(arr) == 1))
    zero = int(np.count_nonzero(arr == 0))
    return ones == 2 and ones + zero == arr.size


def in_sigma(v: Sequence[float] | np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Coordinate sum 0 and squared norm 2, both within ``tol``."""
    arr = np.asarray(v, dtype=float)
    return abs(float(arr.sum())) <= tol and abs(float(arr @ arr) - 2.0) <= tol


@lru_cache(maxsize=None)
def sigma_basis(d: int) -> np.ndarray:
    """Deterministic orthonormal basis (columns) of the hyperplane sum(x) = 0.

    Gram-Schmidt applied to ``e_1 - e_2, e_2 - e_3, ..., e_{d-1} - e_d`` in
    that order, so outputs are reproducible across runs.
    """
    if d < 2:
        raise ValueError("hyperplane basis needs d >= 2")
    cols = []
    for i in range(d - 1):
        vec = np.zeros(d)
        vec[i] = 1.0
        vec[i + 1] = -1.0
        for q in cols:
            vec -= (q @ vec) * q
        vec /= np.linalg.norm(vec)
        cols.append(vec)
    basis = np.column_stack(cols)
    basis.setflags(write=False)
    return basis


def sigma_to_sphere(f: VectorFlow, tol: float = DEFAULT_TOL) -> VectorFlow:
    """Project a flow with values on the sphere ``sum(x)=0, |x|^2=2`` down one dimension.

    The image values are unit vectors in ``R^(d-1)``; conservation is preserved
    because the map is linear.  Inverse: :func:`sphere_to_sigma`.
    """
    if f.d < 2:
        raise ValueError("projection needs d >= 2")
    vals = f.values.astype(float)
    for eid in range(f.m):
        if not in_sigma(vals[eid], tol):
            raise ValueError(f"edge {eid} value is off the hyperplane sphere beyond tolerance")
    basis = sigma_basis(f.d)
    projected = vals @ basis / math.sqrt(2.0)
    return VectorFlow(f.d - 1, f.orientation, projected, exact=False)


def sphere_to_sigma(f: VectorFlow) -> VectorFlow:
    """Inverse of :func:`sigma_to_sphere` (exact up to floating error)."""
    basis = sigma_basis(f.d + 1)
    lifted = f.values.astype(float) @ basis.T * math.sqrt(2.0)
    return VectorFlow(f.d + 1, f.orientation, lifted, exact=False)


def embed_flow(f: VectorFlow, d: int) -> VectorFlow:
    """Zero-pad values into a higher dimension; norms and conservation persist."""
    if d < f.d:
        raise ValueError("target dimension must not shrink the flow")
    if d == f.d:
        return f
    padded = np.zeros((f.m, d), dtype=f.values.dtype)
    padded[:, : f.d] = f.values
    return VectorFlow(d, f.orientation, padded, exact=f.exact)


# ---------------------------------------------------------------------------
# Integer nowhere-zero k-flow search


@dataclass(frozen=True)
class IntegerFlowResult:
    verdict: Verdict
    flow: VectorFlow | None
    nodes: int
    reason: str = ""

    def __bool__(self) -> bool:
        return self.verdict is Verdict.FOUND


def _fundamental_cycles(
    g: Multigraph, tree: frozenset[int], cotree: Sequence[int], orientation: Orientation
) -> list[list[tuple[int, int]]]:
    """Per cotree edge: list of (tree edge id, sign) completing its cycle.

    The cycle is traversed along the cotree edge's direction; a tree edge gets
    sign +1 when traversed along its own direction.
    """
    parent: list[tuple[int, int] | None] = [None] * g.n
    depth = [-1] * g.n
    for root in range(g.n):
        if depth[root] != -1:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            v = queue.pop(0)
            for eid in g.incident(v):
                if eid not in tree:
                    continue
                w = g.other_endpoint(eid, v)
                if depth[w] == -1:
                    depth[w] = depth[v] + 1
                    parent[w] = (v, eid)
                    queue.append(w)

    def step_up(v: int, path: list[tuple[int, int]], forward: bool) -> int:
        p, eid = parent[v]
        t, h = orientation.directions[eid]
        # walking v -> p; sign is +1 when that matches the edge direction
        sign = 1 if (v, p) == (t, h) else -1
        path.append((eid, sign if forward else -sign))
        return p

    cycles = []
    for eid in cotree:
        t, h = orientation.directions[eid]
        # traverse t -> h along the cotree edge, then h -> t through the tree
        down: list[tuple[int, int]] = []  # walked h-side up toward the LCA
        up: list[tuple[int, int]] = []    # walked t-side up, reversed later
        a, b = h, t
        while a != b:
            if depth[a] >= depth[b]:
                a = step_up(a, down, forward=True)
            else:
                b = step_up(b, up, forward=False)
        cycles.append(down + up[::-1])
    return cycles


def fundamental_cycle_matrix(
    g: Multigraph, orientation: Orientation | None = None
) -> tuple[np.ndarray, frozenset[int], tuple[int, ...]]:
    """(B, tree edges, cotree edges): columns of B are fundamental-cycle circulations.

    Any coefficient matrix X makes ``B @ X`` a conserved flow, and a conserved
    flow is recovered exactly from its cotree rows.
    """
    orientation = orientation or Orientation.reference(g)
    tree, cotree = spanning_forest(g)
    cycles = _fundamental_cycles(g, tree, cotree, orientation)
    basis = np.zeros((g.m, len(cotree)))
    for j, (eid, cyc) in enumerate(zip(cotree, cycles)):
        basis[eid, j] = 1.0
        for f, sign in cyc:
            basis[f, j] = sign
    basis.setflags(write=False)
    return basis, tree, cotree


def integer_nzk_flow(g: Multigraph, k: int, node_budget: int = 0) -> IntegerFlowResult:
    """Exhaustive search for an integer flow with every value in ``±{1..k-1}``.

    Cotree edges are enumerated; tree-edge values are forced by conservation
    through the fundamental cycles, with interval pruning on partial sums.
    ``node_budget <= 0`` means unbounded; exceeding a budget yields UNKNOWN,
    never a false "none".
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    orientation = Orientation.reference(g)
    if g.m == 0:
        flow = VectorFlow(1, orientation, np.zeros((0, 1), dtype=np.int64), exact=True)
        return IntegerFlowResult(Verdict.FOUND, flow, 0)
    if bridges(g):
        return IntegerFlowResult(Verdict.NONE, None, 0, reason="bridge")

    tree, cotree = spanning_forest(g)
    cycles = _fundamental_cycles(g, tree, cotree, orientation)

    tree_ids = sorted(tree)
    tree_pos = {eid: i for i, eid in enumerate(tree_ids)}
    cover: list[list[tuple[int, int]]] = [[] for _ in cotree]  # (tree slot, sign)
    count = [0] * len(tree_ids)
    for j, cyc in enumerate(cycles):
        for eid, sign in cyc:
            cover[j].append((tree_pos[eid], sign))
            count[tree_pos[eid]] += 1

    # value order: 1, -1, 2, -2, ...
    candidates = [s * v for v in range(1, k) for s in (1, -1)]
    partial = [0] * len(tree_ids)
    left = count[:]
    x = [0] * len(cotree)
    hi = k - 1
    nodes = 0

    def feasible(slot: int) -> bool:
        s, c = partial[slot], left[slot]
        if c == 0:
            return 1 <= abs(s) <= hi
        return abs(s) <= (c + 1) * hi

    def assign(j: int, value: int) -> bool:
        ok = True
        for slot, sign in cover[j]:
            partial[slot] += sign * value
            left[slot] -= 1
            if ok and not feasible(slot):
                ok = False
        return ok

    def retract(j: int, value: int) -> None:
        for slot, sign in cover[j]:
            partial[slot] -= sign * value
            left[slot] += 1

    choice = [-1] * len(cotree)
    depth = 0
    while True:
        idx = choice[depth] + 1
        placed = False
        while idx < len(candidates):
            nodes += 1
            if node_budget > 0 and nodes > node_budget:
                return IntegerFlowResult(Verdict.UNKNOWN, None, nodes, reason="budget")
            value = candidates[idx]
            if assign(depth, value):
                choice[depth] = idx
                x[depth] = value
                placed = True
                break
            retract(depth, value)
            idx += 1
        if placed:
            depth += 1
            if depth == len(cotree):
                values = np.zeros((g.m, 1), dtype=np.int64)
                for j, eid in enumerate(cotree):
                    values[eid, 0] = x[j]
                for slot, eid in enumerate(tree_ids):
                    values[eid, 0] = partial[slot]
                flow = VectorFlow(1, orientation, values, exact=True)
                if conservation_residual(g, flow) != 0.0:
                    raise AssertionError("internal error: forced tree values not conserved")
                return IntegerFlowResult(Verdict.FOUND, flow, nodes)
            choice[depth] = -1
        else:
            choice[depth] = -1
            depth -= 1
            if depth < 0:
                return IntegerFlowResult(Verdict.NONE, None, nodes, reason="exhausted")
            retract(depth, x[depth])
