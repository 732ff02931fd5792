"""Pure-Python backtracking kernel for double-cover label-pair search.

The compiled kernel in ``_search_c`` mirrors this module line for line; both
must explore candidates in identical order so witnesses and node counts agree
across backends.
"""

from __future__ import annotations

STATUS_FOUND = 0
STATUS_NONE = 1
STATUS_BUDGET = 2


def search_cover(n, tails, heads, k, oriented, order, node_budget=0):
    """Assign a label pair from ``0..k-1`` to every edge.

    Ordered pairs ``(i, j)`` (oriented mode) mean +1 in coordinate ``i`` and
    -1 in coordinate ``j`` along the edge's (tail, head) direction, and the
    per-vertex constraint is that every coordinate's signed sum closes to
    zero.  Unordered pairs ``i < j`` (unoriented mode) mean membership in
    members ``i`` and ``j``, and the constraint is per-member even degree.

    Candidates are enumerated in ascending code order with first-use canonical
    label numbering: relabeling any solution by order of first appearance
    yields a solution the filter accepts, so a NONE verdict is exhaustive.

    ``node_budget <= 0`` means unbounded.  Returns ``(status, pairs, nodes)``
    with ``pairs`` indexed by edge id (empty unless FOUND).
    """
    m = len(tails)
    if m == 0:
        return STATUS_FOUND, [], 0
    if k < 2:
        return STATUS_NONE, [], 0

    total = k * k
    remaining = [0] * n
    for e in range(m):
        remaining[tails[e]] += 1
        remaining[heads[e]] += 1

    # oriented state: signed per-coordinate sums; unoriented: parity bitmask
    sums = [0] * (n * k)
    sum_abs = [0] * n
    odd_mask = [0] * n
    odd_count = [0] * n

    assign = [-1] * m          # applied candidate code per depth
    used_stack = [0] * (m + 1)  # labels in use before each depth
    pair_i = [0] * m           # by edge id
    pair_j = [0] * m
    nodes = 0
    depth = 0

    def vertex_ok(v):
        r = remaining[v]
        if oriented:
            sa = sum_abs[v]
            if sa > 2 * r:
                return False
            if r == 1 and sa != 2:
                return False
            if sa:
                base = v * k
                for c in range(k):
                    a = sums[base + c]
                    if a > r or -a > r:
                        return False
            return True
        oc = odd_count[v]
        if oc > 2 * r:
            return False
        if r == 1 and oc != 2:
            return False
        return True

    def apply_edge(e, i, j):
        t, h = tails[e], heads[e]
        remaining[t] -= 1
        remaining[h] -= 1
        if oriented:
            for v, di, dj in ((t, -1, 1), (h, 1, -1)):
                base = v * k
                for c, d in ((i, di), (j, dj)):
                    old = sums[base + c]
                    new = old + d
                    sums[base + c] = new
                    sum_abs[v] += abs(new) - abs(old)
        else:
            for v in (t, h):
                for c in (i, j):
                    bit = 1 << c
                    if odd_mask[v] & bit:
                        odd_count[v] -= 1
                    else:
                        odd_count[v] += 1
                    odd_mask[v] ^= bit
        return vertex_ok(t) and vertex_ok(h)

    def undo_edge(e, i, j):
        t, h = tails[e], heads[e]
        remaining[t] += 1
        remaining[h] += 1
        if oriented:
            for v, di, dj in ((t, 1, -1), (h, -1, 1)):
                base = v * k
                for c, d in ((i, di), (j, dj)):
                    old = sums[base + c]
                    new = old + d
                    sums[base + c] = new
                    sum_abs[v] += abs(new) - abs(old)
        else:
            for v in (t, h):
                for c in (i, j):
                    bit = 1 << c
                    if odd_mask[v] & bit:
                        odd_count[v] -= 1
                    else:
                        odd_count[v] += 1
                    odd_mask[v] ^= bit

    while True:
        e = order[depth]
        used = used_stack[depth]
        code = assign[depth] + 1
        placed = False
        while code < total:
            i = code // k
            j = code - i * k
            # canonical first-use filter
            if oriented:
                if i == j:
                    code += 1
                    continue
                if i < used:
                    if j > used:
                        code += 1
                        continue
                elif i == used:
                    if j >= used and j != used + 1:
                        code += 1
                        continue
                else:
                    code += 1
                    continue
            else:
                if i >= j:
                    code += 1
                    continue
                if j >= used and not (
                    (i < used and j == used) or (i == used and j == used + 1)
                ):
                    code += 1
                    continue
            nodes += 1
            if node_budget > 0 and nodes > node_budget:
                return STATUS_BUDGET, [], nodes
            if apply_edge(e, i, j):
                assign[depth] = code
                pair_i[e] = i
                pair_j[e] = j
                nu = i + 1 if i >= j else j + 1
                used_stack[depth + 1] = nu if nu > used else used
                placed = True
                break
            undo_edge(e, i, j)
            code += 1
        if placed:
            depth += 1
            if depth == m:
                return STATUS_FOUND, [(pair_i[e], pair_j[e]) for e in range(m)], nodes
            assign[depth] = -1
        else:
            assign[depth] = -1
            depth -= 1
            if depth < 0:
                return STATUS_NONE, [], nodes
            e = order[depth]
            prev = assign[depth]
            undo_edge(e, prev // k, prev - (prev // k) * k)
