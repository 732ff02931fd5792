"""Command-line front end: JSON certificates for every operation.

Exit codes: 0 success / verified-positive, 1 verified-negative, 2 budget
exhausted or otherwise unknown, 3 input error.
"""

from __future__ import annotations

import contextlib
import functools
import io
import json
import pathlib
import tempfile
from typing import Any

import click
import jsonschema
import numpy as np

from vecflow import certificates as cert
from vecflow import constructions, correspondence, flows, phi, polytope
from vecflow.cdc import find_cdc, find_oriented_cdc
from vecflow.flows import DEFAULT_TOL, VectorFlow, Verdict
from vecflow.graphs import (
    GraphFormatError,
    Multigraph,
    bridges,
    is_bipartite,
    is_connected,
    is_cubic,
    is_even_graph,
    parse_edge_list,
    parse_graph6,
    petersen_graph,
    write_edge_list,
)

_TOL_ENV = "VECFLOW_TOL"


class InputError(click.ClickException):
    """Malformed file, flag, or precondition violation (exit code 3)."""

    exit_code = 3


def _wrap_errors(fn):
    """Convert parsing/validation exceptions into exit-code-3 errors."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except InputError:
            raise
        except (
            GraphFormatError,
            json.JSONDecodeError,
            jsonschema.ValidationError,
            ValueError,
            KeyError,
            OSError,
        ) as exc:
            raise InputError(str(exc) or exc.__class__.__name__) from exc

    return wrapper


def _detect_and_parse(text: str, origin: str) -> Multigraph:
    stripped = text.strip()
    if not stripped:
        raise InputError(f"{origin}: empty graph input")
    if ord(stripped[0]) >= 62:  # '>' header or graph6 payload bytes
        lines = [ln for ln in stripped.splitlines() if ln.strip()]
        if len(lines) > 1:
            raise InputError(
                f"{origin}: multiple graph6 lines; use the batch command"
            )
        return parse_graph6(lines[0])
    return parse_edge_list(text)


def _load_graph(path: str) -> Multigraph:
    return _detect_and_parse(pathlib.Path(path).read_text(), path)


def _load_json(path: str) -> Any:
    return json.loads(pathlib.Path(path).read_text())


def _load_flow(path: str, g: Multigraph) -> VectorFlow:
    f = cert.flow_from_json(_load_json(path))
    f.orientation.validate(g)
    return f


def _load_cover(path: str):
    return cert.cover_from_json(_load_json(path))


def _emit(kind: str, payload: dict) -> None:
    cert.validate_payload(kind, payload)
    click.echo(cert.dumps(payload))


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(i) for i in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


_VERDICT_EXIT = {Verdict.FOUND: 0, Verdict.NONE: 1, Verdict.UNKNOWN: 2}

_tol_option = click.option(
    "--tol",
    type=float,
    default=DEFAULT_TOL,
    envvar=_TOL_ENV,
    show_default=True,
    help=f"Numerical tolerance (env: {_TOL_ENV}).",
)


@click.group()
@click.version_option(package_name="vecflow", prog_name="vecflow")
def cli() -> None:
    """Vector-valued nowhere-zero flows and cycle double covers."""


# ---------------------------------------------------------------------------
# analyze


@cli.command("analyze")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@_wrap_errors
def analyze_cmd(graph: str) -> int:
    """Report structural facts about GRAPH (edge list or graph6)."""
    g = _load_graph(graph)
    bridge_ids = sorted(bridges(g))
    payload = {
        "kind": "analysis",
        "graph": cert.graph_to_json(g),
        "degree_profile": sorted(g.degrees()),
        "bridges": bridge_ids,
        "bridgeless": not bridge_ids,
        "bipartite": is_bipartite(g),
        "cubic": is_cubic(g),
        "even": is_even_graph(g),
        "connected": is_connected(g),
    }
    _emit("analysis", payload)
    return 0


# ---------------------------------------------------------------------------
# cdc find


@cli.group("cdc")
def cdc_group() -> None:
    """Cycle-double-cover search."""


@cdc_group.command("find")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("-k", "k", type=int, required=True, help="Number of cover members.")
@click.option("--oriented", is_flag=True, help="Require oppositely directed members.")
@click.option("--budget", type=int, default=0, help="Node budget (0 = unlimited).")
@_wrap_errors
def cdc_find_cmd(graph: str, k: int, oriented: bool, budget: int) -> int:
    """Search GRAPH for a k-member cycle double cover."""
    g = _load_graph(graph)
    search = find_oriented_cdc if oriented else find_cdc
    result = search(g, k, node_budget=budget)
    _emit("cover_certificate", cert.cover_certificate(g, result, k, oriented))
    return _VERDICT_EXIT[result.verdict]


# ---------------------------------------------------------------------------
# flow verify


@cli.group("flow")
def flow_group() -> None:
    """Flow verification."""


@flow_group.command("verify")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("flow_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--set",
    "value_set",
    type=click.Choice(["hd", "td", "sigma", "unit"]),
    default=None,
    help="Additionally require every value to lie in this set.",
)
@_tol_option
@_wrap_errors
def flow_verify_cmd(graph: str, flow_file: str, value_set: str | None, tol: float) -> int:
    """Check conservation and nowhere-zero-ness of FLOW_FILE on GRAPH."""
    g = _load_graph(graph)
    f = _load_flow(flow_file, g)
    residual = flows.conservation_residual(g, f)
    if f.m:
        lo, hi = flows.norm_range(f)
    else:
        lo = hi = None
    checks: dict[str, bool] = {
        "conservation": residual <= tol,
        "nowhere_zero": lo is None or lo > tol,
    }
    if value_set is not None:
        membership = {
            "hd": lambda row: f.exact and flows.in_hd(row),
            "td": lambda row: f.exact and flows.in_td(row),
            "sigma": lambda row: flows.in_sigma(row, tol),
            "unit": lambda row: abs(float(np.linalg.norm(row)) - 1.0) <= tol,
        }[value_set]
        checks[f"membership_{value_set}"] = all(
            membership(f.values[eid]) for eid in range(f.m)
        )
    valid = all(checks.values())
    payload = {
        "kind": "flow-verification",
        "graph": cert.graph_to_json(g),
        "valid": valid,
        "residual": residual,
        "min_norm": lo,
        "max_norm": hi,
        "r": (1.0 + hi / lo) if lo else None,
        "set": value_set,
        "checks": checks,
    }
    _emit("flow_verification", payload)
    return 0 if valid else 1


# ---------------------------------------------------------------------------
# convert


@cli.group("convert")
def convert_group() -> None:
    """Conversions between covers and flows."""


def _conversion_payload(g: Multigraph | None, direction: str, result: dict) -> dict:
    return {
        "kind": "conversion",
        "graph": cert.graph_to_json(g) if g is not None else None,
        "direction": direction,
        "result": result,
    }


@convert_group.command("cdc-to-flow")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("cover_file", type=click.Path(exists=True, dir_okay=False))
@_wrap_errors
def convert_cdc_to_flow(graph: str, cover_file: str) -> int:
    """Turn an oriented k-cover into a flow with one +1 and one -1 per edge."""
    g = _load_graph(graph)
    cover = _load_cover(cover_file)
    if not hasattr(cover.members[0] if cover.members else None, "direction_map"):
        raise InputError("this conversion needs member directions; see cdc-to-td")
    f = correspondence.oriented_cdc_to_hd_flow(g, cover)
    _emit(
        "conversion",
        _conversion_payload(g, "cdc-to-flow", cert.flow_to_json(f)),
    )
    return 0


@convert_group.command("flow-to-cdc")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("flow_file", type=click.Path(exists=True, dir_okay=False))
@_wrap_errors
def convert_flow_to_cdc(graph: str, flow_file: str) -> int:
    """Recover the oriented cover from a one-+1-one--1-per-edge flow."""
    g = _load_graph(graph)
    f = _load_flow(flow_file, g)
    cover = correspondence.hd_flow_to_oriented_cdc(g, f)
    _emit(
        "conversion",
        _conversion_payload(g, "flow-to-cdc", cert.cover_to_json(cover)),
    )
    return 0


@convert_group.command("cdc-to-td")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("cover_file", type=click.Path(exists=True, dir_okay=False))
@_wrap_errors
def convert_cdc_to_td(graph: str, cover_file: str) -> int:
    """Turn an (unoriented) k-cover into a two-nonzero-coordinates flow."""
    g = _load_graph(graph)
    cover = _load_cover(cover_file)
    if hasattr(cover.members[0] if cover.members else None, "direction_map"):
        cover = cover.undirected()
    f = correspondence.cdc_to_td_flow(g, cover)
    _emit(
        "conversion",
        _conversion_payload(g, "cdc-to-td", cert.flow_to_json(f)),
    )
    return 0


@convert_group.command("sigma-to-sphere")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.argument("flow_file", type=click.Path(exists=True, dir_okay=False))
@_tol_option
@_wrap_errors
def convert_sigma_to_sphere(graph: str, flow_file: str, tol: float) -> int:
    """Project a sum-zero-norm-sqrt-2 flow down to unit vectors one dimension lower."""
    g = _load_graph(graph)
    f = _load_flow(flow_file, g)
    projected = flows.sigma_to_sphere(f, tol)
    _emit(
        "conversion",
        _conversion_payload(g, "sigma-to-sphere", cert.flow_to_json(projected)),
    )
    return 0


# ---------------------------------------------------------------------------
# construct


@cli.group("construct")
def construct_group() -> None:
    """Geometric flow constructions with certified ratio bounds."""


def _constructed_payload(
    g: Multigraph, name: str, built: constructions.ConstructedFlow
) -> dict:
    return {
        "kind": "constructed-flow",
        "construction": name,
        "graph": cert.graph_to_json(g),
        "d": built.flow.d,
        "r": built.r,
        "bound": built.bound,
        "within_bound": built.within_bound,
        "residual": flows.conservation_residual(g, built.flow),
        "flow": cert.flow_to_json(built.flow),
        "points": cert.points_to_json(built.points),
        "trace": _jsonable(built.trace),
    }


@construct_group.command("simplex")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--cdc",
    "cover_file",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Cover JSON whose member count sets the dimension.",
)
@_wrap_errors
def construct_simplex(graph: str, cover_file: str) -> int:
    """Flow from simplex corners: one point per cover member."""
    g = _load_graph(graph)
    cover = _load_cover(cover_file)
    if hasattr(cover.members[0] if cover.members else None, "direction_map"):
        cover = cover.undirected()
    built = constructions.simplex_flow(g, cover)
    _emit("constructed_flow", _constructed_payload(g, "simplex", built))
    return 0


@construct_group.command("two-simplex")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--cdc",
    "cover_file",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="Oriented cover JSON whose member count sets the dimension.",
)
@_wrap_errors
def construct_two_simplex(graph: str, cover_file: str) -> int:
    """Flow from two balanced simplices: values are point differences."""
    g = _load_graph(graph)
    cover = _load_cover(cover_file)
    if not hasattr(cover.members[0] if cover.members else None, "direction_map"):
        raise InputError("this construction needs an oriented cover")
    built = constructions.two_simplex_flow(g, cover)
    _emit("constructed_flow", _constructed_payload(g, "two-simplex", built))
    return 0


@construct_group.command("petersen-s2")
@click.option("--seed", type=int, default=0, show_default=True)
@_tol_option
@_wrap_errors
def construct_petersen_s2(seed: int, tol: float) -> int:
    """Unit-sphere flow on the Petersen graph (all norms exactly 1)."""
    g = petersen_graph()
    try:
        f = constructions.petersen_s2_flow(tol=tol, seed=seed)
    except RuntimeError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    lo, hi = flows.norm_range(f)
    payload = {
        "kind": "constructed-flow",
        "construction": "petersen-s2",
        "graph": cert.graph_to_json(g),
        "d": f.d,
        "r": 1.0 + hi / lo,
        "bound": 2.0,
        "within_bound": hi / lo <= 1.0 + tol,
        "residual": flows.conservation_residual(g, f),
        "flow": cert.flow_to_json(f),
    }
    _emit("constructed_flow", payload)
    return 0


# ---------------------------------------------------------------------------
# polytope


@cli.group("polytope")
def polytope_group() -> None:
    """Graphs on the one-plus-one-minus integer points and their structure."""


def _labeled_payload(lg: polytope.LabeledGraph) -> dict:
    return {
        "kind": "labeled-graph",
        "graph": cert.graph_to_json(lg.graph),
        "labels": [_jsonable(lab) for lab in lg.labels],
    }


@polytope_group.command("hd-graph")
@click.option("-d", "d", type=int, required=True)
@_wrap_errors
def polytope_hd_graph(d: int) -> int:
    """Adjacency graph of the one-+1-one--1 points in dimension d."""
    _emit("labeled_graph", _labeled_payload(polytope.hd_graph(d)))
    return 0


@polytope_group.command("crown")
@click.option("-d", "d", type=int, required=True)
@_wrap_errors
def polytope_crown(d: int) -> int:
    """Complete bipartite graph on d+d vertices minus a perfect matching."""
    _emit("labeled_graph", _labeled_payload(polytope.crown_graph(d)))
    return 0


@polytope_group.command("check-iso")
@click.option("-d", "d", type=int, required=True)
@_wrap_errors
def polytope_check_iso(d: int) -> int:
    """Verify the explicit isomorphism from the crown line graph."""
    report = polytope.check_crown_iso(d)
    payload = {
        "kind": "iso-verdict",
        "d": report.d,
        "isomorphic": report.isomorphic,
        "vertices": report.vertices,
        "failure": report.failure,
        "mapping": [[_jsonable(a), _jsonable(b)] for a, b in report.mapping],
    }
    _emit("iso_verdict", payload)
    return 0 if report.isomorphic else 1


# ---------------------------------------------------------------------------
# phi estimate


@cli.group("phi")
def phi_group() -> None:
    """Upper bounds on the d-dimensional flow number."""


@phi_group.command("estimate")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("-d", "d", type=int, required=True, help="Value dimension.")
@click.option("--restarts", type=int, default=32, show_default=True)
@click.option("--iters", type=int, default=400, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--warm-start",
    "warm_files",
    type=click.Path(exists=True, dir_okay=False),
    multiple=True,
    help="Flow JSON used as an extra optimizer start (repeatable).",
)
@_tol_option
@_wrap_errors
def phi_estimate_cmd(
    graph: str,
    d: int,
    restarts: int,
    iters: int,
    seed: int,
    warm_files: tuple[str, ...],
    tol: float,
) -> int:
    """Minimize the max/min norm ratio over the cycle space of GRAPH."""
    g = _load_graph(graph)
    warm = []
    for path in warm_files:
        f = _load_flow(path, g)
        if f.d < d:
            f = flows.embed_flow(f, d)
        warm.append(phi.seed_from_witness(g, f, tol))
    estimate = phi.estimate_phi(
        g,
        d,
        restarts=restarts,
        max_iters=iters,
        seed=seed,
        warm_starts=tuple(warm),
        tol=tol,
    )
    lo, hi = flows.norm_range(estimate.flow)
    payload = {
        "kind": "phi-estimate",
        "graph": cert.graph_to_json(g),
        "d": d,
        "r_hat": estimate.r_hat,
        "residual": flows.conservation_residual(g, estimate.flow),
        "min_norm": lo,
        "max_norm": hi,
        "restarts": estimate.restarts,
        "seed": estimate.seed,
        "flow": cert.flow_to_json(estimate.flow),
    }
    _emit("phi_estimate", payload)
    return 0


# ---------------------------------------------------------------------------
# audit


@cli.group("audit")
def audit_group() -> None:
    """Cross-checks between independent formulations."""


@audit_group.command("equivalence")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False))
@click.option("--budget", type=int, default=0, help="Node budget (0 = unlimited).")
@_wrap_errors
def audit_equivalence_cmd(graph: str, budget: int) -> int:
    """Audit the four equivalent faces of 3-dimensional flow existence."""
    g = _load_graph(graph)
    report = correspondence.equivalence_audit(g, node_budget=budget)
    _emit("audit", cert.audit_to_json(g, report))
    if report.consistent is None:
        return 2
    if not report.consistent or report.bipartite_consistent is False:
        return 1
    return 0


# ---------------------------------------------------------------------------
# batch


def _resolve_insertion(tokens: list[str]) -> int:
    """Index right after the subcommand path, where the graph argument goes."""
    node: click.Command = cli
    idx = 0
    while idx < len(tokens) and isinstance(node, click.Group):
        nxt = node.get_command(None, tokens[idx])
        if nxt is None:
            raise InputError(f"unknown command in batch template: {tokens[idx]!r}")
        node = nxt
        idx += 1
    if isinstance(node, click.Group) or idx == 0:
        raise InputError("batch template does not name a terminal command")
    return idx


def _invoke_capture(args: list[str]) -> tuple[int, str, str]:
    """Run one CLI invocation in-process; returns (exit, stdout, error)."""
    buf = io.StringIO()
    try:
        with contextlib.redirect_stdout(buf):
            rv = cli.main(args=args, prog_name="vecflow", standalone_mode=False)
    except click.UsageError as exc:
        return 3, buf.getvalue(), exc.format_message()
    except click.ClickException as exc:
        return exc.exit_code, buf.getvalue(), exc.format_message()
    return int(rv) if rv else 0, buf.getvalue(), ""


def _batch_graphs(input_path: str) -> list[Multigraph]:
    path = pathlib.Path(input_path)
    graphs: list[Multigraph] = []
    if path.is_dir():
        for child in sorted(path.iterdir()):
            if child.is_file() and not child.name.startswith("."):
                graphs.append(_detect_and_parse(child.read_text(), str(child)))
        if not graphs:
            raise InputError(f"{input_path}: no graph files in directory")
        return graphs
    text = path.read_text()
    stripped = text.strip()
    if not stripped:
        raise InputError(f"{input_path}: empty input")
    if ord(stripped[0]) >= 62:
        for line in stripped.splitlines():
            if line.strip():
                graphs.append(parse_graph6(line.strip()))
        return graphs
    return [parse_edge_list(text)]


@cli.command(
    "batch", context_settings={"ignore_unknown_options": True, "allow_extra_args": True}
)
@click.argument("input_path", type=click.Path(exists=True))
@click.argument("template", nargs=-1, type=click.UNPROCESSED, required=True)
@_wrap_errors
def batch_cmd(input_path: str, template: tuple[str, ...]) -> int:
    """Run a subcommand per graph in INPUT_PATH, one JSON result per line.

    The graph argument is inserted automatically: `batch corpus.g6 cdc find
    -k 3 --oriented` runs the cover search on every graph in the file.
    """
    tokens = list(template)
    insert_at = _resolve_insertion(tokens)
    for g in _batch_graphs(input_path):
        with tempfile.NamedTemporaryFile(
            mode="w", suffix=".edges", prefix="vecflow-", delete=False
        ) as handle:
            handle.write(write_edge_list(g))
            tmp_name = handle.name
        try:
            args = tokens[:insert_at] + [tmp_name] + tokens[insert_at:]
            code, out, err = _invoke_capture(args)
        finally:
            pathlib.Path(tmp_name).unlink(missing_ok=True)
        line: dict[str, Any] = {
            "graph": cert.graph_to_json(g),
            "command": tokens,
            "exit": code,
            "result": json.loads(out) if out.strip() else None,
        }
        if err:
            line["error"] = err
        cert.validate_payload("batch_line", line)
        click.echo(cert.dumps(line, compact=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    """Console entry point; maps usage errors onto the documented exit codes."""
    try:
        rv = cli.main(args=argv, prog_name="vecflow", standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 3
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        return 130
    return int(rv) if rv else 0
