"""Benchmark the cover-search kernel: compiled extension vs pure Python.

Both backends implement the identical search (same candidate order, same
node counts), so besides timing, this script asserts result parity on every
workload.  Run from the repository root:

    python3 benchmarks/bench_search.py [--repeat N] [--json]
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from vecflow.cdc import edge_processing_order
from vecflow.graphs import (
    Multigraph,
    Orientation,
    complete_bipartite,
    complete_graph,
    cube_graph,
    cycle_graph,
    petersen_graph,
    wheel_graph,
)

from vecflow._kernels import _search_py

try:
    from vecflow._kernels import _search_c
except ImportError:  # pragma: no cover - depends on the build environment
    _search_c = None


def _prism(n: int) -> Multigraph:
    ring = cycle_graph(n)
    edges = list(ring.edges)
    edges += [(u + n, v + n) for u, v in ring.edges]
    edges += [(i, i + n) for i in range(n)]
    return Multigraph(2 * n, edges)


WORKLOADS = [
    # name, graph, k, oriented
    ("k33 oriented k=3 (found)", complete_bipartite(3, 3), 3, True),
    ("k4 oriented k=3 (exhausted)", complete_graph(4), 3, True),
    ("cube oriented k=4 (found)", cube_graph(), 4, True),
    ("k5 unoriented k=5 (found)", complete_graph(5), 5, False),
    ("wheel6 oriented k=4 (found)", wheel_graph(6), 4, True),
    ("prism8 oriented k=3 (found)", _prism(8), 3, True),
    ("petersen oriented k=4 (exhausted)", petersen_graph(), 4, True),
    ("petersen oriented k=5 (found)", petersen_graph(), 5, True),
    ("petersen unoriented k=5 (found)", petersen_graph(), 5, False),
]


def _args_for(g: Multigraph, k: int, oriented: bool):
    orientation = Orientation.reference(g)
    tails = [t for t, _ in orientation.directions]
    heads = [h for _, h in orientation.directions]
    return (g.n, tails, heads, k, oriented, edge_processing_order(g), 0)


def _time(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def run(repeat: int) -> list[dict]:
    rows = []
    for name, g, k, oriented in WORKLOADS:
        args = _args_for(g, k, oriented)
        py_result = _search_py.search_cover(*args)
        row = {
            "workload": name,
            "edges": g.m,
            "nodes": py_result[2],
            "python_ms": _time(_search_py.search_cover, args, repeat) * 1e3,
        }
        if _search_c is not None:
            c_result = _search_c.search_cover(*args)
            if (c_result[0], list(c_result[1] or []), c_result[2]) != (
                py_result[0],
                list(py_result[1] or []),
                py_result[2],
            ):
                raise SystemExit(f"backend mismatch on {name!r}: {c_result} vs {py_result}")
            row["compiled_ms"] = _time(_search_c.search_cover, args, repeat) * 1e3
            row["speedup"] = row["python_ms"] / row["compiled_ms"]
        rows.append(row)
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions (best-of)")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    opts = parser.parse_args()

    rows = run(opts.repeat)
    if opts.json:
        print(json.dumps(rows, indent=2))
        return 0

    if _search_c is None:
        print("compiled kernel unavailable; timing the pure-Python backend only\n")
    header = f"{'workload':38} {'edges':>5} {'nodes':>9} {'python':>10}"
    if _search_c is not None:
        header += f" {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for row in rows:
        line = (
            f"{row['workload']:38} {row['edges']:>5} {row['nodes']:>9} "
            f"{row['python_ms']:>8.2f}ms"
        )
        if "compiled_ms" in row:
            line += f" {row['compiled_ms']:>8.2f}ms {row['speedup']:>7.1f}x"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
