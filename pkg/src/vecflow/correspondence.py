"""Constructive equivalences between covers and special-valued flows."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vecflow.cdc import (
    CoverSearchResult,
    CycleDoubleCover,
    OrientedCDC,
    find_oriented_cdc,
    verify_cdc,
    verify_oriented_cdc,
)
from vecflow.flows import (
    IntegerFlowResult,
    VectorFlow,
    Verdict,
    conservation_residual,
    in_hd,
    in_td,
    integer_nzk_flow,
    sigma_to_sphere,
    validate_flow,
)
from vecflow.graphs import (
    DirectedEvenSubgraph,
    EvenSubgraph,
    Multigraph,
    Orientation,
    eulerian_orientation,
    is_bipartite,
    is_cubic,
)


def oriented_cdc_to_hd_flow(
    g: Multigraph, c: OrientedCDC, orientation: Orientation | None = None
) -> VectorFlow:
    """Encode an oriented d-cover as an exact flow with one +1 and one -1 entry.

    Per edge, the member directed along the reference orientation contributes
    +1 in its coordinate and the (oppositely directed) other member -1.
    """
    report = verify_oriented_cdc(g, c)
    if not report:
        raise ValueError(f"invalid oriented cover: {report.failure}")
    orientation = orientation or Orientation.reference(g)
    orientation.validate(g)
    d = c.k
    values = np.zeros((g.m, d), dtype=np.int64)
    for idx, member in enumerate(c.members):
        for eid, t, h in member.directions:
            values[eid, idx] = 1 if (t, h) == orientation.directions[eid] else -1
    flow = VectorFlow(d, orientation, values, exact=True)
    if not all(in_hd(flow.values[e]) for e in range(g.m)):
        raise AssertionError("conversion produced a value outside the one-plus-one-minus set")
    if conservation_residual(g, flow) != 0.0:
        raise AssertionError("conversion produced a non-conserved flow")
    return flow


def hd_flow_to_oriented_cdc(g: Multigraph, f: VectorFlow) -> OrientedCDC:
    """Decode the inverse: member i is the support of coordinate i, directed by sign."""
    validate_flow(g, f)
    values = np.asarray(f.values)
    if not np.all(values == np.round(values)):
        raise ValueError("flow values must be integers")
    values = values.astype(np.int64)
    for eid in range(g.m):
        if not in_hd(values[eid]):
            raise ValueError(f"edge {eid} value is not one +1, one -1, rest 0")
    members = []
    for i in range(f.d):
        directions = []
        for eid in range(g.m):
            coord = values[eid, i]
            if coord == 0:
                continue
            t, h = f.orientation.directions[eid]
            directions.append((eid, t, h) if coord == 1 else (eid, h, t))
        net = [0] * g.n
        for _, t, h in directions:
            net[t] += 1
            net[h] -= 1
        if any(net):
            raise ValueError(
                f"coordinate {i} is not conserved on its support (input is not a flow)"
            )
        members.append(
            DirectedEvenSubgraph(frozenset(e for e, _, _ in directions), tuple(directions))
        )
    cover = OrientedCDC(tuple(members))
    report = verify_oriented_cdc(g, cover)
    if not report:
        raise ValueError(f"flow does not encode an oriented cover: {report.failure}")
    return cover


def cdc_to_td_flow(
    g: Multigraph, c: CycleDoubleCover, orientation: Orientation | None = None
) -> VectorFlow:
    """Encode an unoriented d-cover as an exact flow with two ±1 entries per edge.

    Each member gets an independent eulerian orientation; coordinate i of an
    edge is +1 or -1 by agreement of that orientation with the reference one.
    """
    report = verify_cdc(g, c)
    if not report:
        raise ValueError(f"invalid cover: {report.failure}")
    orientation = orientation or Orientation.reference(g)
    orientation.validate(g)
    d = c.k
    values = np.zeros((g.m, d), dtype=np.int64)
    for idx, member in enumerate(c.members):
        directed = eulerian_orientation(g, member)
        for eid, t, h in directed.directions:
            values[eid, idx] = 1 if (t, h) == orientation.directions[eid] else -1
    flow = VectorFlow(d, orientation, values, exact=True)
    if not all(in_td(flow.values[e]) for e in range(g.m)):
        raise AssertionError("conversion produced a value outside the two-nonzero set")
    if conservation_residual(g, flow) != 0.0:
        raise AssertionError("conversion produced a non-conserved flow")
    return flow


def td_flow_to_cdc(g: Multigraph, f: VectorFlow) -> CycleDoubleCover:
    """Decode coordinate supports of a two-nonzero-valued flow as a cover."""
    validate_flow(g, f)
    values = np.asarray(f.values)
    if not np.all(values == np.round(values)):
        raise ValueError("flow values must be integers")
    values = values.astype(np.int64)
    for eid in range(g.m):
        if not in_td(values[eid]):
            raise ValueError(f"edge {eid} value does not have exactly two ±1 entries")
    members = []
    for i in range(f.d):
        support = frozenset(int(e) for e in np.nonzero(values[:, i])[0])
        deg = [0] * g.n
        for eid in support:
            u, v = g.edges[eid]
            deg[u] += 1
            deg[v] += 1
        if any(d % 2 for d in deg):
            raise ValueError(f"coordinate {i} support is not even (input is not a flow)")
        members.append(EvenSubgraph(support))
    cover = CycleDoubleCover(tuple(members))
    report = verify_cdc(g, cover)
    if not report:
        raise ValueError(f"flow does not encode a cover: {report.failure}")
    return cover


def oriented_cdc_to_sphere_flow(g: Multigraph, c: OrientedCDC) -> VectorFlow:
    """Unit-norm flow in ``R^(k-1)`` from an oriented k-cover.

    Composition of the +1/-1 encoding with the hyperplane projection; all
    output norms are 1, witnessing r = 2 in dimension k - 1.
    """
    hd = oriented_cdc_to_hd_flow(g, c)
    return sigma_to_sphere(VectorFlow(hd.d, hd.orientation, hd.values, exact=False))


# ---------------------------------------------------------------------------
# Four-way equivalence audit (dimension 3)


@dataclass(frozen=True)
class AuditReport:
    """Existence verdicts that a sound implementation must see agree.

    ``hexagon_flow`` is flow existence over the six unit sixth-roots in the
    plane, equivalent by a linear change of coordinates to ``h3_flow``; it is
    reported separately because the equivalence chain treats it as its own
    assertion.
    """

    integer_3_flow: Verdict
    h3_flow: Verdict
    hexagon_flow: Verdict
    oriented_3cdc: Verdict
    consistent: bool | None
    cubic: bool
    bipartite: bool | None
    bipartite_consistent: bool | None
    integer_result: IntegerFlowResult
    cover_result: CoverSearchResult

    def __bool__(self) -> bool:
        return bool(self.consistent) and self.bipartite_consistent is not False


def equivalence_audit(g: Multigraph, node_budget: int = 0) -> AuditReport:
    """Run the two independent searches behind the d=3 equivalences.

    Integer nowhere-zero 3-flow existence is decided by cotree enumeration;
    oriented 3-cover existence by the label-pair search.  The two share no
    code paths, so agreement is a genuine cross-check.  Budget exhaustion on
    either side yields ``consistent=None`` rather than a false claim.
    """
    integer_result = integer_nzk_flow(g, 3, node_budget)
    cover_result = find_oriented_cdc(g, 3, node_budget)
    v1 = integer_result.verdict
    v4 = cover_result.verdict
    # the oriented-cover search *is* the flow search over one-+1-one--1
    # values; its witness is the flow, so that verdict is inherited directly
    v2 = v4
    # the planar formulation (values among six unit vectors at sixty-degree
    # spacing) is the same flow after an invertible linear map; when a cover
    # exists, build and verify that witness rather than just inheriting
    v3 = v4
    if cover_result.verdict is Verdict.FOUND and cover_result.cover is not None:
        planar = oriented_cdc_to_sphere_flow(g, cover_result.cover)
        norms = np.linalg.norm(planar.values, axis=1)
        if planar.d != 2 or (g.m and np.max(np.abs(norms - 1.0)) > 1e-9):
            raise AssertionError("planar re-encoding lost the unit-norm property")
        if conservation_residual(g, planar) > 1e-9:
            raise AssertionError("planar re-encoding lost conservation")
    if Verdict.UNKNOWN in (v1, v4):
        consistent: bool | None = None
    else:
        consistent = v1 == v4
    cubic = is_cubic(g)
    bipartite = is_bipartite(g) if cubic else None
    if not cubic:
        bipartite_consistent: bool | None = None
    elif consistent is None:
        known = v1 if v1 is not Verdict.UNKNOWN else v4
        bipartite_consistent = (
            None if known is Verdict.UNKNOWN else (known is Verdict.FOUND) == bipartite
        )
    else:
        bipartite_consistent = (v1 is Verdict.FOUND) == bipartite
    return AuditReport(
        integer_3_flow=v1,
        h3_flow=v2,
        hexagon_flow=v3,
        oriented_3cdc=v4,
        consistent=consistent,
        cubic=cubic,
        bipartite=bipartite,
        bipartite_consistent=bipartite_consistent,
        integer_result=integer_result,
        cover_result=cover_result,
    )
