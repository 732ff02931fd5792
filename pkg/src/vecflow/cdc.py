"""Cycle double covers: types, verification, and exhaustive backtracking search."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vecflow._kernels import STATUS_BUDGET, STATUS_FOUND, search_cover
from vecflow.flows import VectorFlow, Verdict
from vecflow.graphs import (
    DirectedEvenSubgraph,
    EvenSubgraph,
    Multigraph,
    Orientation,
    bridges,
    eulerian_orientation,
    is_even_graph,
    is_even_subgraph,
)


@dataclass(frozen=True)
class CycleDoubleCover:
    """k even subgraphs covering every edge of the host graph exactly twice."""

    members: tuple[EvenSubgraph, ...]

    @property
    def k(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrientedCDC:
    """A double cover whose members are directed, oppositely on every edge."""

    members: tuple[DirectedEvenSubgraph, ...]

    @property
    def k(self) -> int:
        return len(self.members)

    def undirected(self) -> CycleDoubleCover:
        return CycleDoubleCover(tuple(m.undirected() for m in self.members))


@dataclass(frozen=True)
class VerificationReport:
    """Truthy when verification passed; otherwise names a counterexample."""

    ok: bool
    failure: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_cdc(g: Multigraph, c: CycleDoubleCover) -> VerificationReport:
    count = [0] * g.m
    for idx, member in enumerate(c.members):
        deg = [0] * g.n
        for eid in member.edges:
            if not 0 <= eid < g.m:
                return VerificationReport(False, f"member {idx} uses unknown edge {eid}")
            count[eid] += 1
            u, v = g.edges[eid]
            deg[u] += 1
            deg[v] += 1
        for v in range(g.n):
            if deg[v] % 2:
                return VerificationReport(False, f"member {idx} has odd degree at vertex {v}")
    for eid in range(g.m):
        if count[eid] != 2:
            return VerificationReport(
                False, f"edge {eid} is covered {count[eid]} times instead of 2"
            )
    return VerificationReport(True)


def verify_oriented_cdc(g: Multigraph, c: OrientedCDC) -> VerificationReport:
    base = verify_cdc(g, c.undirected())
    if not base:
        return base
    for idx, member in enumerate(c.members):
        net = [0] * g.n
        for eid, t, h in member.directions:
            if {t, h} != set(g.edges[eid]):
                return VerificationReport(
                    False, f"member {idx} direction of edge {eid} does not match its endpoints"
                )
            net[t] += 1
            net[h] -= 1
        for v in range(g.n):
            if net[v]:
                return VerificationReport(
                    False, f"member {idx} has indegree != outdegree at vertex {v}"
                )
    directions_by_edge: dict[int, list[tuple[int, int]]] = {}
    for member in c.members:
        for eid, t, h in member.directions:
            directions_by_edge.setdefault(eid, []).append((t, h))
    for eid, dirs in directions_by_edge.items():
        if len(dirs) == 2 and dirs[0] != (dirs[1][1], dirs[1][0]):
            return VerificationReport(
                False, f"edge {eid} is covered twice in the same direction"
            )
    return VerificationReport(True)


@dataclass(frozen=True)
class CoverSearchResult:
    """Search outcome; ``flow`` carries the H_k witness for oriented searches."""

    verdict: Verdict
    cover: CycleDoubleCover | OrientedCDC | None
    nodes: int
    reason: str = ""
    flow: VectorFlow | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.FOUND


def edge_processing_order(g: Multigraph) -> list[int]:
    """Edges grouped by a max-degree-first vertex order, for early pruning."""
    vertex_order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    seen: set[int] = set()
    order: list[int] = []
    for v in vertex_order:
        for eid in sorted(g.incident(v)):
            if eid not in seen:
                seen.add(eid)
                order.append(eid)
    return order


def _empty_cover(k: int, oriented: bool) -> CycleDoubleCover | OrientedCDC:
    if oriented:
        return OrientedCDC(tuple(DirectedEvenSubgraph(frozenset(), ()) for _ in range(k)))
    return CycleDoubleCover(tuple(EvenSubgraph(frozenset()) for _ in range(k)))


def find_cdc(g: Multigraph, k: int, node_budget: int = 0) -> CoverSearchResult:
    """Search for a k-cycle double cover.

    Returns FOUND with a verified cover, NONE only on provable exhaustion
    (or a bridge, which no even subgraph can cover), UNKNOWN on budget.
    """
    if k < 2:
        raise ValueError("a double cover needs at least 2 members")
    if g.m == 0:
        return CoverSearchResult(Verdict.FOUND, _empty_cover(k, False), 0)
    if bridges(g):
        return CoverSearchResult(Verdict.NONE, None, 0, reason="bridge")
    if k == 2:
        # both members must equal the whole edge set, so the graph must be even
        if is_even_graph(g):
            member = EvenSubgraph(frozenset(range(g.m)))
            cover = CycleDoubleCover((member, member))
            assert verify_cdc(g, cover)
            return CoverSearchResult(Verdict.FOUND, cover, 0)
        return CoverSearchResult(Verdict.NONE, None, 0, reason="2-cover forces an even graph")

    orientation = Orientation.reference(g)
    tails = [t for t, _ in orientation.directions]
    heads = [h for _, h in orientation.directions]
    status, pairs, nodes = search_cover(
        g.n, tails, heads, k, False, edge_processing_order(g), node_budget
    )
    if status == STATUS_BUDGET:
        return CoverSearchResult(Verdict.UNKNOWN, None, nodes, reason="budget")
    if status != STATUS_FOUND:
        return CoverSearchResult(Verdict.NONE, None, nodes, reason="exhausted")
    member_edges: list[set[int]] = [set() for _ in range(k)]
    for eid, (i, j) in enumerate(pairs):
        member_edges[i].add(eid)
        member_edges[j].add(eid)
    cover = CycleDoubleCover(tuple(EvenSubgraph(frozenset(s)) for s in member_edges))
    report = verify_cdc(g, cover)
    if not report:
        raise AssertionError(f"search returned an invalid cover: {report.failure}")
    return CoverSearchResult(Verdict.FOUND, cover, nodes)


def find_oriented_cdc(g: Multigraph, k: int, node_budget: int = 0) -> CoverSearchResult:
    """Search for an oriented k-cycle double cover.

    Implemented as a search for a flow with values having one +1 and one -1
    coordinate; a found flow is converted to the cover and re-verified.
    """
    if k < 2:
        raise ValueError("a double cover needs at least 2 members")
    if g.m == 0:
        flow = VectorFlow(k, Orientation(()), np.zeros((0, k), dtype=np.int64), exact=True)
        return CoverSearchResult(Verdict.FOUND, _empty_cover(k, True), 0, flow=flow)
    if bridges(g):
        return CoverSearchResult(Verdict.NONE, None, 0, reason="bridge")
    if k == 2:
        if is_even_graph(g):
            forward = eulerian_orientation(g, EvenSubgraph(frozenset(range(g.m))))
            cover = OrientedCDC((forward, forward.reversed()))
            assert verify_oriented_cdc(g, cover)
            flow = _pairs_to_flow(
                g, [(0, 1) for _ in range(g.m)], 2, _orientation_from(forward)
            )
            return CoverSearchResult(Verdict.FOUND, cover, 0, flow=flow)
        return CoverSearchResult(Verdict.NONE, None, 0, reason="2-cover forces an even graph")

    orientation = Orientation.reference(g)
    tails = [t for t, _ in orientation.directions]
    heads = [h for _, h in orientation.directions]
    status, pairs, nodes = search_cover(
        g.n, tails, heads, k, True, edge_processing_order(g), node_budget
    )
    if status == STATUS_BUDGET:
        return CoverSearchResult(Verdict.UNKNOWN, None, nodes, reason="budget")
    if status != STATUS_FOUND:
        return CoverSearchResult(Verdict.NONE, None, nodes, reason="exhausted")
    flow = _pairs_to_flow(g, pairs, k, orientation)
    from vecflow.correspondence import hd_flow_to_oriented_cdc

    cover = hd_flow_to_oriented_cdc(g, flow)
    report = verify_oriented_cdc(g, cover)
    if not report:
        raise AssertionError(f"search returned an invalid oriented cover: {report.failure}")
    return CoverSearchResult(Verdict.FOUND, cover, nodes, flow=flow)


def _orientation_from(sub: DirectedEvenSubgraph) -> Orientation:
    ordered = sorted(sub.directions)
    return Orientation(tuple((t, h) for _, t, h in ordered))


def _pairs_to_flow(
    g: Multigraph, pairs: list[tuple[int, int]], k: int, orientation: Orientation
) -> VectorFlow:
    values = np.zeros((g.m, k), dtype=np.int64)
    for eid, (i, j) in enumerate(pairs):
        values[eid, i] = 1
        values[eid, j] = -1
    return VectorFlow(k, orientation, values, exact=True)
