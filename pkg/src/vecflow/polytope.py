"""Adjacency structure of the one-plus-one-minus point set and crown graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

import numpy as np

from vecflow.geometry import hd_points
from vecflow.graphs import Multigraph


@dataclass(frozen=True)
class LabeledGraph:
    """A multigraph together with a distinct hashable label per vertex."""

    graph: Multigraph
    labels: tuple[Hashable, ...]

    def __post_init__(self):
        if len(self.labels) != self.graph.n:
            raise ValueError("one label per vertex required")
        if len(set(self.labels)) != self.graph.n:
            raise ValueError("labels must be distinct")

    def label_index(self) -> dict[Hashable, int]:
        return {lab: v for v, lab in enumerate(self.labels)}


def hd_graph(d: int) -> LabeledGraph:
    """Graph on the one-plus-one-minus vectors, joined when their difference is one too.

    2(d-2)-regular; d=3 gives a 6-cycle, d=4 the cuboctahedron skeleton.
    """
    config = hd_points(d)
    pts = [tuple(int(x) for x in p) for p in config.points]
    index = {p: i for i, p in enumerate(pts)}
    point_set = set(pts)
    edges = []
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            diff = tuple(pa - pb for pa, pb in zip(pts[a], pts[b]))
            if diff in point_set:
                edges.append((a, b))
    return LabeledGraph(Multigraph(len(pts), edges), tuple(pts))


def crown_graph(d: int) -> LabeledGraph:
    """Complete bipartite graph on d+d vertices minus a perfect matching."""
    if d < 3:
        raise ValueError("need d >= 3")
    edges = [(i, d + j) for i in range(d) for j in range(d) if i != j]
    labels = tuple(("u", i) for i in range(d)) + tuple(("v", j) for j in range(d))
    return LabeledGraph(Multigraph(2 * d, edges), labels)


def line_graph(lg: LabeledGraph) -> LabeledGraph:
    """Standard line graph; vertices are labeled by the endpoint label pairs."""
    g = lg.graph
    seen = set()
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError("line graph is defined here for simple graphs only")
        seen.add(key)
    labels = tuple(
        (lg.labels[min(u, v)], lg.labels[max(u, v)]) for u, v in g.edges
    )
    edges = []
    for a in range(g.m):
        ua, va = g.edges[a]
        for b in range(a + 1, g.m):
            ub, vb = g.edges[b]
            if len({ua, va} & {ub, vb}) == 1:
                edges.append((a, b))
    return LabeledGraph(Multigraph(g.m, edges), labels)


@dataclass(frozen=True)
class IsoReport:
    """Outcome of the explicit crown-line-graph isomorphism check."""

    isomorphic: bool
    d: int
    vertices: int
    mapping: tuple[tuple[Hashable, tuple[int, ...]], ...]
    failure: str = ""

    def __bool__(self) -> bool:
        return self.isomorphic


def check_crown_iso(d: int) -> IsoReport:
    """Verify that the line graph of the crown graph matches :func:`hd_graph`.

    The explicit map sends the line-graph vertex on edge (u_i, v_j) to the
    vector with +1 in entry i and -1 in entry j, and the check compares full
    adjacency (and non-adjacency) under that relabeling.  A False result
    indicates an implementation bug, not a mathematical outcome.
    """
    crown = crown_graph(d)
    lg = line_graph(crown)
    target = hd_graph(d)

    mapping = []
    mapped_labels = []
    for label in lg.labels:
        (_, i), (_, j) = label  # (("u", i), ("v", j)) by construction
        vec = [0] * d
        vec[i] = 1
        vec[j] = -1
        vec = tuple(vec)
        mapping.append((label, vec))
        mapped_labels.append(vec)

    if set(mapped_labels) != set(target.labels):
        return IsoReport(False, d, lg.graph.n, tuple(mapping), "not a bijection onto the point set")
    if len(set(mapped_labels)) != len(mapped_labels):
        return IsoReport(False, d, lg.graph.n, tuple(mapping), "map is not injective")

    target_index = target.label_index()
    n = lg.graph.n
    adj_src = np.zeros((n, n), dtype=bool)
    for u, v in lg.graph.edges:
        adj_src[u, v] = adj_src[v, u] = True
    adj_dst = np.zeros((n, n), dtype=bool)
    for u, v in target.graph.edges:
        adj_dst[u, v] = adj_dst[v, u] = True
    perm = np.array([target_index[vec] for vec in mapped_labels])
    if not np.array_equal(adj_src, adj_dst[np.ix_(perm, perm)]):
        return IsoReport(False, d, n, tuple(mapping), "adjacency matrices differ under the map")
    return IsoReport(True, d, n, tuple(mapping))
