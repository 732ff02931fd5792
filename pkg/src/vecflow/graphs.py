"""Undirected multigraphs on dense integer vertices, parsing, and structural utilities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised when a graph input cannot be decoded.

    ``offset`` is the byte offset of the offending input when known.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class Multigraph:
    """Immutable undirected multigraph on vertices ``0..n-1``.

    Edges are identified by their position in ``edges`` (ids ``0..m-1``).
    Parallel edges are allowed; loops are rejected because a loop imposes no
    conservation constraint and makes double-cover semantics ambiguous.
    ``vertex_labels`` optionally remembers the original labels of remapped
    input vertices.
    """

    __slots__ = ("n", "edges", "vertex_labels", "_incident")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        vertex_labels: Sequence | None = None,
    ):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in edges)
        incident: list[list[int]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid} endpoint out of range: ({u}, {v})")
            if u == v:
                raise ValueError(f"edge {eid} is a loop at vertex {u}; loops are not supported")
            incident[u].append(eid)
            incident[v].append(eid)
        if vertex_labels is not None:
            vertex_labels = tuple(vertex_labels)
            if len(vertex_labels) != n:
                raise ValueError("vertex_labels length must equal n")
            if len(set(vertex_labels)) != n:
                raise ValueError("vertex_labels must be distinct")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertex_labels", vertex_labels)
        object.__setattr__(self, "_incident", tuple(tuple(ids) for ids in incident))

    def __setattr__(self, name, value):
        raise AttributeError("Multigraph is immutable")

    @property
    def m(self) -> int:
        return len(self.edges)

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.edges[eid]

    def other_endpoint(self, eid: int, v: int) -> int:
        u, w = self.edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} is not an endpoint of edge {eid}")

    def incident(self, v: int) -> tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(ids) for ids in self._incident)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.vertex_labels == other.vertex_labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.vertex_labels))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Orientation:
    """A direction ``(tail, head)`` per edge, indexed by edge id."""

    directions: tuple[tuple[int, int], ...]

    @classmethod
    def reference(cls, g: Multigraph) -> "Orientation":
        """The canonical orientation: tail is the smaller endpoint."""
        return cls(tuple((min(u, v), max(u, v)) for u, v in g.edges))

    def validate(self, g: Multigraph) -> None:
        if len(self.directions) != g.m:
            raise ValueError("orientation must cover every edge exactly once")
        for eid, (t, h) in enumerate(self.directions):
            if {t, h} != set(g.edges[eid]):
                raise ValueError(f"orientation of edge {eid} does not match its endpoints")

    def reversed(self) -> "Orientation":
        return Orientation(tuple((h, t) for t, h in self.directions))


@dataclass(frozen=True)
class EvenSubgraph:
    """A subset of edge ids in which every vertex has even degree.

    The empty set is a valid even subgraph (covers may contain empty members).
    """

    edges: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(int(e) for e in self.edges))

    @property
    def is_empty(self) -> bool:
        return not self.edges


@dataclass(frozen=True)
class DirectedEvenSubgraph:
    """An even edge subset with directions making indegree = outdegree everywhere.

    ``directions`` holds ``(edge_id, tail, head)`` triples sorted by edge id.
    """

    edges: frozenset[int]
    directions: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        edges = frozenset(int(e) for e in self.edges)
        directions = tuple(sorted((int(e), int(t), int(h)) for e, t, h in self.directions))
        if frozenset(e for e, _, _ in directions) != edges or len(directions) != len(edges):
            raise ValueError("directions must cover the edge set exactly once")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "directions", directions)

    def direction_map(self) -> dict[int, tuple[int, int]]:
        return {e: (t, h) for e, t, h in self.directions}

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def undirected(self) -> EvenSubgraph:
        return EvenSubgraph(self.edges)

    def reversed(self) -> "DirectedEvenSubgraph":
        return DirectedEvenSubgraph(self.edges, tuple((e, h, t) for e, t, h in self.directions))


# ---------------------------------------------------------------------------
# Parsing and writing


def parse_edge_list(text: str) -> Multigraph:
    """Parse an edge-list: one ``u v`` pair per line, 0-based vertex labels.

    Repeated lines create parallel edges.  Vertex labels are remapped to dense
    ids ``0..n-1`` in sorted order; the original labels are kept on the graph.
    """
    raw_edges: list[tuple[int, int]] = []
    labels: set[int] = set()
    offset = 0
    for line in text.splitlines(keepends=True):
        stripped = line.strip()
        if stripped:
            tokens = stripped.split()
            if len(tokens) != 2:
                raise GraphFormatError(f"expected two tokens, got {len(tokens)}", offset)
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphFormatError(f"non-integer vertex token in {stripped!r}", offset) from None
            if u < 0 or v < 0:
                raise GraphFormatError("vertex labels must be nonnegative", offset)
            if u == v:
                raise GraphFormatError(f"loop at vertex {u} is not permitted", offset)
            raw_edges.append((u, v))
            labels.update((u, v))
        offset += len(line)
    ordered = sorted(labels)
    remap = {lab: i for i, lab in enumerate(ordered)}
    dense = [(remap[u], remap[v]) for u, v in raw_edges]
    vertex_labels = None if ordered == list(range(len(ordered))) else ordered
    return Multigraph(len(ordered), dense, vertex_labels)


def write_edge_list(g: Multigraph) -> str:
    """Inverse of :func:`parse_edge_list` up to edge multiset (dense labels)."""
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def parse_graph6(data: bytes | str) -> Multigraph:
    """Decode a graph6 byte string (simple graphs; multigraphs use edge lists).

    The optional ``>>graph6<<`` header is accepted.  Malformed input raises
    :class:`GraphFormatError` with the byte offset of the problem.
    """
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    header = b">>graph6<<"
    base = 0
    if data.startswith(header):
        data = data[len(header):]
        base = len(header)
    if not data:
        raise GraphFormatError("empty graph6 input", base)

    def byte_at(i: int) -> int:
        if i >= len(data):
            raise GraphFormatError("truncated graph6 payload", base + len(data))
        b = data[i]
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b} outside graph6 range 63..126", base + i)
        return b - 63

    pos = 0
    if data[0] == 126:
        if len(data) > 1 and data[1] == 126:
            digits = [byte_at(i) for i in range(2, 8)]
            n = 0
            for d in digits:
                n = (n << 6) | d
            pos = 8
        else:
            digits = [byte_at(i) for i in range(1, 4)]
            n = 0
            for d in digits:
                n = (n << 6) | d
            pos = 4
    else:
        n = byte_at(0)
        pos = 1

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise GraphFormatError("truncated graph6 payload", base + len(data))
    if len(data) - pos > nbytes:
        raise GraphFormatError("trailing data after graph6 payload", base + pos + nbytes)
    bits: list[int] = []
    for i in range(pos, pos + nbytes):
        value = byte_at(i)
        for shift in range(5, -1, -1):
            bits.append((value >> shift) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Multigraph(n, edges)


def write_graph6(g: Multigraph) -> str:
    """Encode a simple graph as graph6; parallel edges are rejected."""
    seen = set()
    adj = [[False] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError("graph6 encodes simple graphs only; graph has parallel edges")
        seen.add(key)
        adj[u][v] = adj[v][u] = True
    n = g.n
    out: list[int] = []
    if n <= 62:
        out.append(n + 63)
    elif n <= 258047:
        out.append(126)
        out.extend(((n >> shift) & 63) + 63 for shift in (12, 6, 0))
    else:
        out.append(126)
        out.append(126)
        out.extend(((n >> shift) & 63) + 63 for shift in (30, 24, 18, 12, 6, 0))
    bits: list[int] = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if adj[i][j] else 0)
    while len(bits) % 6:
        bits.append(0)
    for i in range(0, len(bits), 6):
        value = 0
        for b in bits[i : i + 6]:
            value = (value << 1) | b
        out.append(value + 63)
    return bytes(out).decode("ascii")


# ---------------------------------------------------------------------------
# Structural predicates


def bridges(g: Multigraph) -> frozenset[int]:
    """Edge ids of all cut edges; empty iff the graph is bridgeless.

    Iterative lowpoint computation; a parallel edge is never a bridge because
    its twin provides a second path.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    out: set[int] = set()
    timer = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        # stack entries: (vertex, entering edge id, iterator over incident edges)
        stack = [(root, -1, iter(g.incident(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, eid_in, it = stack[-1]
            advanced = False
            for eid in it:
                if eid == eid_in:
                    continue
                w = g.other_endpoint(eid, v)
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(g.incident(w))))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.add(eid_in)
        # NOTE: eid_in is skipped only once per vertex entry, so the second
        # copy of a parallel edge correctly acts as a back edge.
    return frozenset(out)


def is_bridgeless(g: Multigraph) -> bool:
    return not bridges(g)


def is_even_subgraph(g: Multigraph, edge_ids: Iterable[int]) -> bool:
    """True iff every vertex has even degree in the edge subset."""
    deg = [0] * g.n
    for eid in edge_ids:
        eid = int(eid)
        if not 0 <= eid < g.m:
            raise ValueError(f"unknown edge id {eid}")
        u, v = g.edges[eid]
        deg[u] += 1
        deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def eulerian_orientation(g: Multigraph, s: EvenSubgraph | Iterable[int]) -> DirectedEvenSubgraph:
    """Direct an even subgraph so indegree equals outdegree at every vertex.

    Decomposes the subgraph into closed walks and orients each walk
    consistently.
    """
    edge_ids = s.edges if isinstance(s, EvenSubgraph) else frozenset(int(e) for e in s)
    if not is_even_subgraph(g, edge_ids):
        raise ValueError("edge set is not an even subgraph")
    unused: dict[int, list[int]] = {}
    for eid in sorted(edge_ids):
        u, v = g.edges[eid]
        unused.setdefault(u, []).append(eid)
        unused.setdefault(v, []).append(eid)
    done: set[int] = set()
    directions: list[tuple[int, int, int]] = []
    for start in sorted(unused):
        while True:
            avail = [e for e in unused[start] if e not in done]
            if not avail:
                break
            v = start
            eid = avail[0]
            # follow unused edges until the walk closes; evenness guarantees
            # we can always leave any vertex we enter (except by closing)
            while True:
                done.add(eid)
                w = g.other_endpoint(eid, v)
                directions.append((eid, v, w))
                v = w
                nxt = next((e for e in unused.get(v, ()) if e not in done), None)
                if nxt is None:
                    break
                eid = nxt
    return DirectedEvenSubgraph(frozenset(edge_ids), tuple(directions))


def is_bipartite(g: Multigraph) -> bool:
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for eid in g.incident(v):
                w = g.other_endpoint(eid, v)
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def is_cubic(g: Multigraph) -> bool:
    return g.n > 0 and all(d == 3 for d in g.degrees())


def is_even_graph(g: Multigraph) -> bool:
    return all(d % 2 == 0 for d in g.degrees())


def is_connected(g: Multigraph) -> bool:
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    queue = [0]
    while queue:
        v = queue.pop()
        for eid in g.incident(v):
            w = g.other_endpoint(eid, v)
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return all(seen)


def spanning_forest(g: Multigraph) -> tuple[frozenset[int], tuple[int, ...]]:
    """(tree edge ids, cotree edge ids in ascending order) of a BFS forest."""
    parent_edge = [-1] * g.n
    seen = [False] * g.n
    tree: set[int] = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            v = queue.pop(0)
            for eid in g.incident(v):
                w = g.other_endpoint(eid, v)
                if not seen[w]:
                    seen[w] = True
                    parent_edge[w] = eid
                    tree.add(eid)
                    queue.append(w)
    cotree = tuple(e for e in range(g.m) if e not in tree)
    return frozenset(tree), cotree


# ---------------------------------------------------------------------------
# Named graphs used throughout the test-suite and examples


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Multigraph:
    return Multigraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def wheel_graph(rim: int) -> Multigraph:
    """Cycle on ``rim`` vertices plus a hub joined to all of them."""
    if rim < 3:
        raise ValueError("wheel rim needs at least 3 vertices")
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, rim) for i in range(rim)]
    return Multigraph(rim + 1, edges)


def cube_graph() -> Multigraph:
    """The 3-cube: vertices are 0..7 read as bit strings."""
    edges = []
    for v in range(8):
        for bit in (1, 2, 4):
            w = v ^ bit
            if v < w:
                edges.append((v, w))
    return Multigraph(8, edges)


def petersen_graph() -> Multigraph:
    """Petersen graph: outer cycle 0-4, spokes, inner pentagram 5-9.

    Edge order: outer edges ``i -- i+1 mod 5`` (ids 0..4), spokes ``i -- 5+i``
    (ids 5..9), inner edges ``5+i -- 5+((i+2) mod 5)`` (ids 10..14).
    """
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    inner = [(5 + i, 5 + ((i + 2) % 5)) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)
