"""Vector-valued nowhere-zero flows, cycle double covers, and flow-number bounds.

The package revolves around one correspondence: a graph has a flow whose edge
values each have one +1 and one -1 coordinate (in d dimensions) exactly when
it has an oriented d-member cycle double cover.  Everything else builds on
that pivot — searches with machine-checkable certificates, geometric
constructions with certified max/min norm ratios, and a heuristic upper-bound
solver for the d-dimensional flow number.
"""

from vecflow._kernels import BACKEND as KERNEL_BACKEND
from vecflow.cdc import (
    CoverSearchResult,
    CycleDoubleCover,
    OrientedCDC,
    VerificationReport,
    edge_processing_order,
    find_cdc,
    find_oriented_cdc,
    verify_cdc,
    verify_oriented_cdc,
)
from vecflow.certificates import (
    SCHEMAS,
    cover_from_json,
    cover_to_json,
    flow_from_json,
    flow_to_json,
    graph_hash,
    graph_to_json,
    points_from_json,
    points_to_json,
    validate_payload,
)
from vecflow.constructions import (
    ConstructedFlow,
    petersen_s2_flow,
    simplex_flow,
    simplex_ratio_bound,
    two_simplex_flow,
    two_simplex_ratio_bound,
)
from vecflow.correspondence import (
    AuditReport,
    cdc_to_td_flow,
    equivalence_audit,
    hd_flow_to_oriented_cdc,
    oriented_cdc_to_hd_flow,
    oriented_cdc_to_sphere_flow,
    td_flow_to_cdc,
)
from vecflow.flows import (
    DEFAULT_TOL,
    IntegerFlowResult,
    VectorFlow,
    Verdict,
    conservation_residual,
    embed_flow,
    fundamental_cycle_matrix,
    in_hd,
    in_sigma,
    in_td,
    integer_nzk_flow,
    norm_range,
    normalize,
    sigma_basis,
    sigma_to_sphere,
    sphere_to_sigma,
    validate_flow,
)
from vecflow.geometry import (
    DistanceProfile,
    PointConfiguration,
    distance_profile,
    hd_points,
    regular_simplex,
    simplex_points,
    two_simplex_points,
)
from vecflow.graphs import (
    DirectedEvenSubgraph,
    EvenSubgraph,
    GraphFormatError,
    Multigraph,
    Orientation,
    bridges,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    eulerian_orientation,
    is_bipartite,
    is_bridgeless,
    is_connected,
    is_cubic,
    is_even_graph,
    is_even_subgraph,
    parse_edge_list,
    parse_graph6,
    path_graph,
    petersen_graph,
    spanning_forest,
    wheel_graph,
    write_edge_list,
    write_graph6,
)
from vecflow.phi import CycleBasisParam, PhiEstimate, estimate_phi, seed_from_witness
from vecflow.polytope import (
    IsoReport,
    LabeledGraph,
    check_crown_iso,
    crown_graph,
    hd_graph,
    line_graph,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "ConstructedFlow",
    "CoverSearchResult",
    "CycleBasisParam",
    "CycleDoubleCover",
    "DEFAULT_TOL",
    "DirectedEvenSubgraph",
    "DistanceProfile",
    "EvenSubgraph",
    "GraphFormatError",
    "IntegerFlowResult",
    "IsoReport",
    "KERNEL_BACKEND",
    "LabeledGraph",
    "Multigraph",
    "Orientation",
    "OrientedCDC",
    "PhiEstimate",
    "PointConfiguration",
    "SCHEMAS",
    "VectorFlow",
    "Verdict",
    "VerificationReport",
    "bridges",
    "cdc_to_td_flow",
    "check_crown_iso",
    "complete_bipartite",
    "complete_graph",
    "conservation_residual",
    "cover_from_json",
    "cover_to_json",
    "crown_graph",
    "cube_graph",
    "cycle_graph",
    "distance_profile",
    "edge_processing_order",
    "embed_flow",
    "equivalence_audit",
    "estimate_phi",
    "eulerian_orientation",
    "find_cdc",
    "find_oriented_cdc",
    "flow_from_json",
    "flow_to_json",
    "fundamental_cycle_matrix",
    "graph_hash",
    "graph_to_json",
    "hd_flow_to_oriented_cdc",
    "hd_graph",
    "hd_points",
    "in_hd",
    "in_sigma",
    "in_td",
    "integer_nzk_flow",
    "is_bipartite",
    "is_bridgeless",
    "is_connected",
    "is_cubic",
    "is_even_graph",
    "is_even_subgraph",
    "line_graph",
    "norm_range",
    "normalize",
    "oriented_cdc_to_hd_flow",
    "oriented_cdc_to_sphere_flow",
    "parse_edge_list",
    "parse_graph6",
    "path_graph",
    "petersen_graph",
    "petersen_s2_flow",
    "points_from_json",
    "points_to_json",
    "regular_simplex",
    "seed_from_witness",
    "sigma_basis",
    "sigma_to_sphere",
    "simplex_flow",
    "simplex_points",
    "simplex_ratio_bound",
    "spanning_forest",
    "sphere_to_sigma",
    "td_flow_to_cdc",
    "two_simplex_flow",
    "two_simplex_points",
    "two_simplex_ratio_bound",
    "validate_flow",
    "validate_payload",
    "verify_cdc",
    "verify_oriented_cdc",
    "wheel_graph",
    "write_edge_list",
    "write_graph6",
]
