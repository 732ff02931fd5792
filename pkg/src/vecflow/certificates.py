"""JSON wire formats, schemas, and machine-checkable certificates."""

from __future__ import annotations

import hashlib
import json
from typing import Any

import jsonschema
import numpy as np

from vecflow.cdc import CoverSearchResult, CycleDoubleCover, OrientedCDC
from vecflow.correspondence import AuditReport
from vecflow.flows import VectorFlow, Verdict
from vecflow.geometry import PointConfiguration
from vecflow.graphs import DirectedEvenSubgraph, EvenSubgraph, Multigraph, Orientation


def graph_hash(g: Multigraph) -> str:
    """SHA-256 of the canonical edge list (sorted endpoint pairs)."""
    canon = sorted((min(u, v), max(u, v)) for u, v in g.edges)
    text = f"{g.n};" + ",".join(f"{u}-{v}" for u, v in canon)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def graph_to_json(g: Multigraph) -> dict[str, Any]:
    return {
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges],
        "hash": graph_hash(g),
    }


def flow_to_json(f: VectorFlow) -> dict[str, Any]:
    values = f.values.tolist()
    if f.exact:
        values = [[int(x) for x in row] for row in values]
    return {
        "d": f.d,
        "orientation": [[t, h] for t, h in f.orientation.directions],
        "values": values,
        "exact": bool(f.exact),
    }


def flow_from_json(obj: dict[str, Any]) -> VectorFlow:
    validate_payload("flow", obj)
    orientation = Orientation(tuple((int(t), int(h)) for t, h in obj["orientation"]))
    dtype = np.int64 if obj["exact"] else float
    values = np.array(obj["values"], dtype=dtype).reshape(len(obj["orientation"]), obj["d"])
    return VectorFlow(int(obj["d"]), orientation, values, exact=bool(obj["exact"]))


def cover_to_json(c: CycleDoubleCover | OrientedCDC) -> dict[str, Any]:
    members = []
    for member in c.members:
        edges = sorted(member.edges)
        if isinstance(member, DirectedEvenSubgraph):
            dmap = member.direction_map()
            directions = [[dmap[e][0], dmap[e][1]] for e in edges]
        else:
            directions = None
        members.append({"edges": edges, "directions": directions})
    return {"k": c.k, "members": members}


def cover_from_json(obj: dict[str, Any]) -> CycleDoubleCover | OrientedCDC:
    validate_payload("cover", obj)
    if len(obj["members"]) != obj["k"]:
        raise ValueError("member count does not match k")
    directed_flags = [m["directions"] is not None for m in obj["members"]]
    if all(directed_flags):
        members = []
        for m in obj["members"]:
            if len(m["directions"]) != len(m["edges"]):
                raise ValueError("directions must align with the edge list")
            triples = tuple(
                (int(e), int(t), int(h))
                for e, (t, h) in zip(m["edges"], m["directions"])
            )
            members.append(DirectedEvenSubgraph(frozenset(m["edges"]), triples))
        return OrientedCDC(tuple(members))
    if any(directed_flags):
        raise ValueError("either all members carry directions or none do")
    return CycleDoubleCover(
        tuple(EvenSubgraph(frozenset(m["edges"])) for m in obj["members"])
    )


def points_to_json(p: PointConfiguration) -> dict[str, Any]:
    points = p.points.tolist()
    if p.exact:
        points = [[int(x) for x in row] for row in points]
    return {"m": p.ambient_dim, "points": points, "exact": bool(p.exact)}


def points_from_json(obj: dict[str, Any]) -> PointConfiguration:
    validate_payload("points", obj)
    dtype = np.int64 if obj["exact"] else float
    pts = np.array(obj["points"], dtype=dtype).reshape(-1, obj["m"])
    return PointConfiguration(int(obj["m"]), pts, exact=bool(obj["exact"]))


def cover_certificate(
    g: Multigraph, result: CoverSearchResult, k: int, oriented: bool
) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "kind": "cover-search",
        "graph": graph_to_json(g),
        "k": k,
        "oriented": oriented,
        "verdict": result.verdict.value,
        "nodes": result.nodes,
        "reason": result.reason,
        "witness": None,
        "flow": None,
        "empty_members": [],
    }
    if result.cover is not None:
        payload["witness"] = cover_to_json(result.cover)
        payload["empty_members"] = [
            i for i, member in enumerate(result.cover.members) if member.is_empty
        ]
    if result.flow is not None:
        payload["flow"] = flow_to_json(result.flow)
    validate_payload("cover_certificate", payload)
    return payload


def audit_to_json(g: Multigraph, report: AuditReport) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "kind": "equivalence-audit",
        "graph": graph_to_json(g),
        "integer_3_flow": report.integer_3_flow.value,
        "h3_flow": report.h3_flow.value,
        "hexagon_flow": report.hexagon_flow.value,
        "oriented_3cdc": report.oriented_3cdc.value,
        "consistent": report.consistent,
        "cubic": report.cubic,
        "bipartite": report.bipartite,
        "bipartite_consistent": report.bipartite_consistent,
        "integer_nodes": report.integer_result.nodes,
        "search_nodes": report.cover_result.nodes,
        "integer_witness": (
            flow_to_json(report.integer_result.flow) if report.integer_result.flow else None
        ),
        "cover_witness": (
            cover_to_json(report.cover_result.cover) if report.cover_result.cover else None
        ),
    }
    validate_payload("audit", payload)
    return payload


# ---------------------------------------------------------------------------
# Schemas

_GRAPH_SCHEMA = {
    "type": "object",
    "required": ["n", "edges", "hash"],
    "properties": {
        "n": {"type": "integer", "minimum": 0},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "hash": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
    },
}

_FLOW_SCHEMA = {
    "type": "object",
    "required": ["d", "orientation", "values", "exact"],
    "properties": {
        "d": {"type": "integer", "minimum": 1},
        "orientation": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 0},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "values": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
        "exact": {"type": "boolean"},
    },
}

_COVER_SCHEMA = {
    "type": "object",
    "required": ["k", "members"],
    "properties": {
        "k": {"type": "integer", "minimum": 0},
        "members": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["edges", "directions"],
                "properties": {
                    "edges": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "directions": {
                        "type": ["array", "null"],
                        "items": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 0},
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
            },
        },
    },
}

_POINTS_SCHEMA = {
    "type": "object",
    "required": ["m", "points", "exact"],
    "properties": {
        "m": {"type": "integer", "minimum": 0},
        "points": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "exact": {"type": "boolean"},
    },
}

_VERDICT = {"type": "string", "enum": [v.value for v in Verdict]}
_NULLABLE_BOOL = {"type": ["boolean", "null"]}

SCHEMAS: dict[str, dict] = {
    "graph": _GRAPH_SCHEMA,
    "flow": _FLOW_SCHEMA,
    "cover": _COVER_SCHEMA,
    "points": _POINTS_SCHEMA,
    "analysis": {
        "type": "object",
        "required": [
            "kind", "graph", "degree_profile", "bridges", "bridgeless",
            "bipartite", "cubic", "even", "connected",
        ],
        "properties": {
            "kind": {"const": "analysis"},
            "graph": _GRAPH_SCHEMA,
            "degree_profile": {"type": "array", "items": {"type": "integer"}},
            "bridges": {"type": "array", "items": {"type": "integer"}},
            "bridgeless": {"type": "boolean"},
            "bipartite": {"type": "boolean"},
            "cubic": {"type": "boolean"},
            "even": {"type": "boolean"},
            "connected": {"type": "boolean"},
        },
    },
    "cover_certificate": {
        "type": "object",
        "required": ["kind", "graph", "k", "oriented", "verdict", "nodes", "witness"],
        "properties": {
            "kind": {"const": "cover-search"},
            "graph": _GRAPH_SCHEMA,
            "k": {"type": "integer", "minimum": 2},
            "oriented": {"type": "boolean"},
            "verdict": _VERDICT,
            "nodes": {"type": "integer", "minimum": 0},
            "reason": {"type": "string"},
            "witness": {"anyOf": [_COVER_SCHEMA, {"type": "null"}]},
            "flow": {"anyOf": [_FLOW_SCHEMA, {"type": "null"}]},
            "empty_members": {"type": "array", "items": {"type": "integer"}},
        },
    },
    "flow_verification": {
        "type": "object",
        "required": ["kind", "graph", "valid", "residual", "min_norm", "max_norm", "r", "checks"],
        "properties": {
            "kind": {"const": "flow-verification"},
            "graph": _GRAPH_SCHEMA,
            "valid": {"type": "boolean"},
            "residual": {"type": "number"},
            "min_norm": {"type": ["number", "null"]},
            "max_norm": {"type": ["number", "null"]},
            "r": {"type": ["number", "null"]},
            "checks": {"type": "object"},
        },
    },
    "conversion": {
        "type": "object",
        "required": ["kind", "graph", "direction", "result"],
        "properties": {
            "kind": {"const": "conversion"},
            "graph": {"anyOf": [_GRAPH_SCHEMA, {"type": "null"}]},
            "direction": {"type": "string"},
            "result": {"anyOf": [_FLOW_SCHEMA, _COVER_SCHEMA]},
        },
    },
    "constructed_flow": {
        "type": "object",
        "required": ["kind", "graph", "d", "r", "bound", "within_bound", "residual", "flow"],
        "properties": {
            "kind": {"const": "constructed-flow"},
            "construction": {"type": "string"},
            "graph": _GRAPH_SCHEMA,
            "d": {"type": "integer"},
            "r": {"type": "number"},
            "bound": {"type": "number"},
            "within_bound": {"type": "boolean"},
            "residual": {"type": "number"},
            "flow": _FLOW_SCHEMA,
            "points": _POINTS_SCHEMA,
            "trace": {"type": "array"},
        },
    },
    "phi_estimate": {
        "type": "object",
        "required": ["kind", "graph", "d", "r_hat", "residual", "min_norm", "max_norm", "flow"],
        "properties": {
            "kind": {"const": "phi-estimate"},
            "graph": _GRAPH_SCHEMA,
            "d": {"type": "integer", "minimum": 1},
            "r_hat": {"type": "number"},
            "residual": {"type": "number"},
            "min_norm": {"type": "number"},
            "max_norm": {"type": "number"},
            "restarts": {"type": "integer"},
            "seed": {"type": "integer"},
            "flow": _FLOW_SCHEMA,
        },
    },
    "audit": {
        "type": "object",
        "required": [
            "kind", "graph", "integer_3_flow", "h3_flow", "hexagon_flow",
            "oriented_3cdc", "consistent", "cubic", "bipartite", "bipartite_consistent",
        ],
        "properties": {
            "kind": {"const": "equivalence-audit"},
            "graph": _GRAPH_SCHEMA,
            "integer_3_flow": _VERDICT,
            "h3_flow": _VERDICT,
            "hexagon_flow": _VERDICT,
            "oriented_3cdc": _VERDICT,
            "consistent": _NULLABLE_BOOL,
            "cubic": {"type": "boolean"},
            "bipartite": _NULLABLE_BOOL,
            "bipartite_consistent": _NULLABLE_BOOL,
            "integer_nodes": {"type": "integer"},
            "search_nodes": {"type": "integer"},
            "integer_witness": {"anyOf": [_FLOW_SCHEMA, {"type": "null"}]},
            "cover_witness": {"anyOf": [_COVER_SCHEMA, {"type": "null"}]},
        },
    },
    "iso_verdict": {
        "type": "object",
        "required": ["kind", "d", "isomorphic", "vertices", "mapping"],
        "properties": {
            "kind": {"const": "iso-verdict"},
            "d": {"type": "integer", "minimum": 3},
            "isomorphic": {"type": "boolean"},
            "vertices": {"type": "integer"},
            "failure": {"type": "string"},
            "mapping": {"type": "array"},
        },
    },
    "labeled_graph": {
        "type": "object",
        "required": ["kind", "graph", "labels"],
        "properties": {
            "kind": {"const": "labeled-graph"},
            "graph": _GRAPH_SCHEMA,
            "labels": {"type": "array"},
        },
    },
    "batch_line": {
        "type": "object",
        "required": ["graph", "command", "exit", "result"],
        "properties": {
            "graph": _GRAPH_SCHEMA,
            "command": {"type": "array", "items": {"type": "string"}},
            "exit": {"type": "integer"},
            "result": {"type": ["object", "null"]},
            "error": {"type": "string"},
        },
    },
}


def validate_payload(kind: str, payload: dict[str, Any]) -> None:
    """Validate a JSON payload against a published schema; raises on mismatch."""
    jsonschema.validate(payload, SCHEMAS[kind])


def dumps(payload: Any, compact: bool = False) -> str:
    """Deterministic serialization (sorted keys, fixed separators)."""
    if compact:
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return json.dumps(payload, sort_keys=True, indent=2)
