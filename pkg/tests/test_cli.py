from __future__ import annotations

import json
import os
import shutil
import subprocess
import sys

import networkx as nx
import numpy as np
import pytest

from vecflow.certificates import (
    cover_from_json,
    cover_to_json,
    flow_from_json,
    graph_hash,
    validate_payload,
)
from vecflow.cdc import find_cdc, find_oriented_cdc, verify_oriented_cdc
from vecflow.cli import main
from vecflow.flows import in_hd
from vecflow.graphs import parse_graph6, write_edge_list


@pytest.fixture()
def run(capsys):
    def _run(*args: str) -> tuple[int, str, str]:
        code = main(list(args))
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def _g6(graph: nx.Graph) -> str:
    return nx.to_graph6_bytes(graph, header=False).decode().strip()


@pytest.fixture()
def k4_file(tmp_path, k4):
    p = tmp_path / "k4.edges"
    p.write_text(write_edge_list(k4))
    return str(p)


@pytest.fixture()
def k33_file(tmp_path, k33):
    p = tmp_path / "k33.edges"
    p.write_text(write_edge_list(k33))
    return str(p)


@pytest.fixture()
def petersen_g6(tmp_path):
    p = tmp_path / "petersen.g6"
    p.write_text(_g6(nx.petersen_graph()) + "\n")
    return str(p)


# ---------------------------------------------------------------------------
# analyze + input handling


def test_analyze_edge_list(run, tmp_path, c4):
    p = tmp_path / "c4.edges"
    p.write_text(write_edge_list(c4))
    code, out, _ = run("analyze", str(p))
    assert code == 0
    payload = json.loads(out)
    validate_payload("analysis", payload)
    assert payload["bridgeless"] and payload["bipartite"] and payload["even"]
    assert payload["connected"] and not payload["cubic"]
    assert payload["degree_profile"] == [2, 2, 2, 2]
    assert payload["graph"]["hash"] == graph_hash(c4)


def test_analyze_graph6_autodetect(run, petersen_g6):
    code, out, _ = run("analyze", petersen_g6)
    assert code == 0
    payload = json.loads(out)
    assert payload["graph"]["n"] == 10 and payload["cubic"] and payload["bridgeless"]


def test_analyze_sparse_labels(run, tmp_path):
    p = tmp_path / "labels.edges"
    p.write_text("10 20\n20 30\n10 30\n")
    code, out, _ = run("analyze", str(p))
    assert code == 0
    assert json.loads(out)["graph"]["n"] == 3


def test_analyze_input_errors(run, tmp_path):
    code, _, err = run("analyze", str(tmp_path / "missing.edges"))
    assert code == 3 and "error" in err.lower()
    bad = tmp_path / "bad.edges"
    bad.write_text("0 1\n2\n")
    code, _, err = run("analyze", str(bad))
    assert code == 3
    multi = tmp_path / "multi.g6"
    multi.write_text(_g6(nx.complete_graph(4)) + "\n" + _g6(nx.cycle_graph(5)) + "\n")
    code, _, err = run("analyze", str(multi))
    assert code == 3 and "batch" in err


def test_unknown_command_is_a_usage_error(run):
    code, _, err = run("frobnicate")
    assert code == 3


def test_version(run):
    code, out, _ = run("--version")
    assert code == 0 and "vecflow" in out


# ---------------------------------------------------------------------------
# cdc find


def test_cdc_find_exit_codes(run, k33_file, k4_file, petersen_g6):
    code, out, _ = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    assert code == 0
    payload = json.loads(out)
    validate_payload("cover_certificate", payload)
    assert payload["verdict"] == "found" and payload["witness"] is not None

    code, out, _ = run("cdc", "find", k4_file, "-k", "3", "--oriented")
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "none" and payload["reason"] == "exhausted"
    assert payload["witness"] is None

    code, out, _ = run(
        "cdc", "find", petersen_g6, "-k", "4", "--oriented", "--budget", "5"
    )
    assert code == 2
    payload = json.loads(out)
    assert payload["verdict"] == "unknown" and payload["reason"] == "budget"


def test_cdc_find_witness_replays(run, k33_file, k33):
    code, out, _ = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    assert code == 0
    payload = json.loads(out)
    cover = cover_from_json(payload["witness"])
    assert verify_oriented_cdc(k33, cover)
    flow = flow_from_json(payload["flow"])
    assert all(in_hd(flow.values[e]) for e in range(k33.m))


def test_cdc_find_deterministic_output(run, k33_file):
    a = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    b = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    assert a == b


# ---------------------------------------------------------------------------
# flow verify


def _written_flow(run, tmp_path, graph_file, name="flow.json"):
    _, out, _ = run("cdc", "find", graph_file, "-k", "3", "--oriented")
    payload = json.loads(out)
    flow_path = tmp_path / name
    flow_path.write_text(json.dumps(payload["flow"]))
    return flow_path


def test_flow_verify_accepts_and_classifies(run, tmp_path, k33_file):
    flow_path = _written_flow(run, tmp_path, k33_file)
    code, out, _ = run("flow", "verify", k33_file, str(flow_path), "--set", "hd")
    assert code == 0
    payload = json.loads(out)
    validate_payload("flow_verification", payload)
    assert payload["valid"] and payload["checks"]["membership_hd"]
    assert payload["residual"] == 0.0

    # one +1 one -1 rows also satisfy the sum-zero-norm-sqrt-2 membership
    code, _, _ = run("flow", "verify", k33_file, str(flow_path), "--set", "sigma")
    assert code == 0
    # but they are not unit vectors
    code, out, _ = run("flow", "verify", k33_file, str(flow_path), "--set", "unit")
    assert code == 1
    assert json.loads(out)["checks"]["membership_unit"] is False


def test_flow_verify_detects_broken_conservation(run, tmp_path, k33_file):
    flow_path = _written_flow(run, tmp_path, k33_file)
    obj = json.loads(flow_path.read_text())
    obj["values"][0] = [-x for x in obj["values"][0]]
    flow_path.write_text(json.dumps(obj))
    code, out, _ = run("flow", "verify", k33_file, str(flow_path))
    assert code == 1
    payload = json.loads(out)
    assert not payload["valid"] and payload["checks"]["conservation"] is False


def test_flow_verify_tolerance_env(run, tmp_path, c4, monkeypatch):
    graph_file = tmp_path / "c4.edges"
    graph_file.write_text(write_edge_list(c4))
    flow_obj = {
        "d": 1,
        "orientation": [[min(u, v), max(u, v)] for u, v in c4.edges],
        "values": [[1.0], [1.00001], [1.0], [-1.0]],
        "exact": False,
    }
    flow_path = tmp_path / "drift.json"
    flow_path.write_text(json.dumps(flow_obj))

    code, _, _ = run("flow", "verify", str(graph_file), str(flow_path))
    assert code == 1  # residual 1e-5 over the default 1e-9
    monkeypatch.setenv("VECFLOW_TOL", "1e-3")
    code, _, _ = run("flow", "verify", str(graph_file), str(flow_path))
    assert code == 0
    # an explicit flag still beats the environment
    code, _, _ = run("flow", "verify", str(graph_file), str(flow_path), "--tol", "1e-9")
    assert code == 1


def test_flow_verify_rejects_mismatched_orientation(run, tmp_path, k33_file, k4):
    flow_path = tmp_path / "foreign.json"
    flow_path.write_text(
        json.dumps(
            {
                "d": 1,
                "orientation": [[u, v] for u, v in k4.edges],
                "values": [[1]] * k4.m,
                "exact": True,
            }
        )
    )
    code, _, err = run("flow", "verify", k33_file, str(flow_path))
    assert code == 3


# ---------------------------------------------------------------------------
# convert


def test_convert_round_trip(run, tmp_path, k33_file, k33):
    _, out, _ = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    search_payload = json.loads(out)
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(json.dumps(search_payload["witness"]))

    code, out, _ = run("convert", "cdc-to-flow", k33_file, str(cover_path))
    assert code == 0
    conv = json.loads(out)
    validate_payload("conversion", conv)
    assert conv["direction"] == "cdc-to-flow"
    assert conv["result"] == search_payload["flow"]

    flow_path = tmp_path / "flow.json"
    flow_path.write_text(json.dumps(conv["result"]))
    code, out, _ = run("convert", "flow-to-cdc", k33_file, str(flow_path))
    assert code == 0
    back = json.loads(out)
    assert back["result"] == search_payload["witness"]


def test_convert_td_and_sphere(run, tmp_path, k33_file, k33):
    _, out, _ = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    payload = json.loads(out)
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(json.dumps(payload["witness"]))

    # oriented covers are accepted and undirected on the fly
    code, out, _ = run("convert", "cdc-to-td", k33_file, str(cover_path))
    assert code == 0
    td = flow_from_json(json.loads(out)["result"])
    assert td.exact and td.d == 3

    flow_path = tmp_path / "hd.json"
    flow_path.write_text(json.dumps(payload["flow"]))
    code, out, _ = run("convert", "sigma-to-sphere", k33_file, str(flow_path))
    assert code == 0
    sphere = flow_from_json(json.loads(out)["result"])
    assert sphere.d == 2
    assert np.allclose(np.linalg.norm(sphere.values, axis=1), 1.0, atol=1e-12)


def test_convert_requires_matching_kind(run, tmp_path, k4_file, k4):
    plain_cover = find_cdc(k4, 3).cover
    cover_path = tmp_path / "plain.json"
    cover_path.write_text(json.dumps(cover_to_json(plain_cover)))
    code, _, err = run("convert", "cdc-to-flow", k4_file, str(cover_path))
    assert code == 3 and "directions" in err


# ---------------------------------------------------------------------------
# construct


def test_construct_simplex_cli(run, tmp_path, k4_file, k4):
    cover = find_cdc(k4, 3).cover
    cover_path = tmp_path / "cover.json"
    cover_path.write_text(json.dumps(cover_to_json(cover)))
    code, out, _ = run("construct", "simplex", k4_file, "--cdc", str(cover_path))
    assert code == 0
    payload = json.loads(out)
    validate_payload("constructed_flow", payload)
    assert payload["within_bound"] and payload["r"] <= payload["bound"] + 1e-9
    assert payload["residual"] <= 1e-9
    assert payload["construction"] == "simplex" and payload["d"] == 2


def test_construct_two_simplex_cli(run, tmp_path, k4_file, k4):
    res = find_oriented_cdc(k4, 4)
    cover_path = tmp_path / "oriented.json"
    cover_path.write_text(json.dumps(cover_to_json(res.cover)))
    code, out, _ = run("construct", "two-simplex", k4_file, "--cdc", str(cover_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["within_bound"] and payload["d"] == 2

    plain_path = tmp_path / "plain.json"
    plain_path.write_text(json.dumps(cover_to_json(res.cover.undirected())))
    code, _, err = run("construct", "two-simplex", k4_file, "--cdc", str(plain_path))
    assert code == 3 and "oriented" in err


def test_construct_petersen_s2_cli(run):
    code, out, _ = run("construct", "petersen-s2", "--seed", "0")
    assert code == 0
    payload = json.loads(out)
    validate_payload("constructed_flow", payload)
    assert payload["within_bound"] and abs(payload["r"] - 2.0) <= 1e-8
    assert payload["residual"] <= 1e-9
    flow = flow_from_json(payload["flow"])
    assert flow.d == 3 and flow.m == 15


# ---------------------------------------------------------------------------
# polytope


def test_polytope_cli(run):
    code, out, _ = run("polytope", "hd-graph", "-d", "4")
    assert code == 0
    payload = json.loads(out)
    validate_payload("labeled_graph", payload)
    assert payload["graph"]["n"] == 12 and len(payload["graph"]["edges"]) == 24
    assert len(payload["labels"]) == 12

    code, out, _ = run("polytope", "crown", "-d", "3")
    assert code == 0
    payload = json.loads(out)
    assert payload["graph"]["n"] == 6 and len(payload["graph"]["edges"]) == 6

    code, out, _ = run("polytope", "check-iso", "-d", "5")
    assert code == 0
    payload = json.loads(out)
    validate_payload("iso_verdict", payload)
    assert payload["isomorphic"] and payload["vertices"] == 20

    code, _, _ = run("polytope", "hd-graph", "-d", "2")
    assert code == 3


# ---------------------------------------------------------------------------
# phi estimate


def test_phi_estimate_cli(run, tmp_path, c4):
    graph_file = tmp_path / "c4.edges"
    graph_file.write_text(write_edge_list(c4))
    code, out, _ = run(
        "phi", "estimate", str(graph_file), "-d", "1", "--restarts", "2", "--iters", "40"
    )
    assert code == 0
    payload = json.loads(out)
    validate_payload("phi_estimate", payload)
    assert abs(payload["r_hat"] - 2.0) <= 1e-6
    assert payload["residual"] <= 1e-9 and payload["min_norm"] >= 1 - 1e-9


def test_phi_estimate_warm_start_cli(run, tmp_path, k33_file):
    _, out, _ = run("cdc", "find", k33_file, "-k", "3", "--oriented")
    flow_payload = json.loads(out)["flow"]
    flow_path = tmp_path / "hd.json"
    flow_path.write_text(json.dumps(flow_payload))
    _, out, _ = run("convert", "sigma-to-sphere", k33_file, str(flow_path))
    sphere_path = tmp_path / "sphere.json"
    sphere_path.write_text(json.dumps(json.loads(out)["result"]))

    code, out, _ = run(
        "phi", "estimate", k33_file, "-d", "2",
        "--restarts", "2", "--iters", "40",
        "--warm-start", str(sphere_path),
    )
    assert code == 0
    assert json.loads(out)["r_hat"] <= 2.001


def test_phi_estimate_rejects_bridges(run, tmp_path):
    p = tmp_path / "path.edges"
    p.write_text("0 1\n1 2\n")
    code, _, err = run("phi", "estimate", str(p), "-d", "2")
    assert code == 3 and "bridge" in err


# ---------------------------------------------------------------------------
# audit


def test_audit_cli(run, k33_file, k4_file, petersen_g6):
    code, out, _ = run("audit", "equivalence", k33_file)
    assert code == 0
    payload = json.loads(out)
    validate_payload("audit", payload)
    assert payload["consistent"] is True and payload["bipartite"] is True

    code, out, _ = run("audit", "equivalence", k4_file)
    assert code == 0
    assert json.loads(out)["bipartite"] is False

    code, out, _ = run("audit", "equivalence", petersen_g6, "--budget", "2")
    assert code == 2
    assert json.loads(out)["consistent"] is None


# ---------------------------------------------------------------------------
# batch


def test_batch_over_graph6_lines(run, tmp_path):
    corpus = tmp_path / "corpus.g6"
    lines = [_g6(nx.complete_graph(4)), _g6(nx.complete_bipartite_graph(3, 3))]
    corpus.write_text("\n".join(lines) + "\n")
    code, out, _ = run("batch", str(corpus), "cdc", "find", "-k", "3", "--oriented")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 2
    for row in rows:
        validate_payload("batch_line", row)
    assert [row["exit"] for row in rows] == [1, 0]
    expected_hashes = [graph_hash(parse_graph6(line)) for line in lines]
    assert [row["graph"]["hash"] for row in rows] == expected_hashes
    assert rows[1]["result"]["verdict"] == "found"


def test_batch_over_directory(run, tmp_path, c4, k33):
    d = tmp_path / "graphs"
    d.mkdir()
    (d / "a.edges").write_text(write_edge_list(c4))
    (d / "b.edges").write_text(write_edge_list(k33))
    code, out, _ = run("batch", str(d), "analyze")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert len(rows) == 2 and all(row["exit"] == 0 for row in rows)
    assert rows[0]["result"]["even"] is True


def test_batch_template_errors(run, tmp_path, c4):
    corpus = tmp_path / "one.edges"
    corpus.write_text(write_edge_list(c4))
    code, _, err = run("batch", str(corpus), "frobnicate")
    assert code == 3 and "unknown command" in err
    code, _, err = run("batch", str(corpus), "cdc")
    assert code == 3 and "terminal" in err


def test_batch_records_per_graph_failures(run, tmp_path):
    corpus = tmp_path / "mixed.g6"
    corpus.write_text(_g6(nx.complete_graph(4)) + "\n")
    # flow-number estimation in d=0 fails per graph but the batch still runs
    code, out, _ = run("batch", str(corpus), "phi", "estimate", "-d", "0")
    assert code == 0
    row = json.loads(out.strip())
    assert row["exit"] == 3 and "error" in row


# ---------------------------------------------------------------------------
# installed entry points


def _entry_point() -> list[str]:
    exe = shutil.which("vecflow")
    if exe:
        return [exe]
    return [sys.executable, "-m", "vecflow"]


def test_subprocess_exit_codes(tmp_path, k4, k33):
    k4_path = tmp_path / "k4.edges"
    k4_path.write_text(write_edge_list(k4))
    proc = subprocess.run(
        [*_entry_point(), "cdc", "find", str(k4_path), "-k", "3", "--oriented"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert json.loads(proc.stdout)["verdict"] == "none"

    proc = subprocess.run(
        [*_entry_point(), "analyze", str(tmp_path / "missing.file")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 3

    proc = subprocess.run([*_entry_point(), "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "vecflow" in proc.stdout


def test_module_invocation(tmp_path, c4):
    p = tmp_path / "c4.edges"
    p.write_text(write_edge_list(c4))
    proc = subprocess.run(
        [sys.executable, "-m", "vecflow", "analyze", str(p)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["even"] is True


def test_pure_python_backend_matches(tmp_path):
    g6 = tmp_path / "petersen.g6"
    g6.write_text(_g6(nx.petersen_graph()) + "\n")
    cmd = [*_entry_point(), "cdc", "find", str(g6), "-k", "4", "--oriented"]
    compiled = subprocess.run(cmd, capture_output=True, text=True)
    env = dict(os.environ, VECFLOW_PURE_PYTHON="1")
    fallback = subprocess.run(cmd, capture_output=True, text=True, env=env)
    assert compiled.returncode == fallback.returncode == 1
    assert compiled.stdout == fallback.stdout
