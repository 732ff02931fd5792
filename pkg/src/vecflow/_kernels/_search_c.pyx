# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled backtracking kernel for double-cover label-pair search.

Line-for-line mirror of ``_search_py``: identical candidate order, pruning,
and node accounting, so the two backends are interchangeable.
"""

from libc.stdlib cimport free, malloc

STATUS_FOUND = 0
STATUS_NONE = 1
STATUS_BUDGET = 2


cdef inline bint _vertex_ok(
    int v, int k, bint oriented,
    int* remaining, int* sums, int* sum_abs, int* odd_count,
) noexcept:
    cdef int r = remaining[v]
    cdef int sa, c, a, base
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
    sa = odd_count[v]
    if sa > 2 * r:
        return False
    if r == 1 and sa != 2:
        return False
    return True


cdef inline void _toggle(int v, int i, int j, int* odd_mask, int* odd_count) noexcept:
    cdef int bit = 1 << i
    if odd_mask[v] & bit:
        odd_count[v] -= 1
    else:
        odd_count[v] += 1
    odd_mask[v] ^= bit
    bit = 1 << j
    if odd_mask[v] & bit:
        odd_count[v] -= 1
    else:
        odd_count[v] += 1
    odd_mask[v] ^= bit


cdef inline void _bump(int v, int c, int d, int k, int* sums, int* sum_abs) noexcept:
    cdef int old = sums[v * k + c]
    cdef int new = old + d
    sums[v * k + c] = new
    sum_abs[v] += (new if new >= 0 else -new) - (old if old >= 0 else -old)


def search_cover(int n, tails, heads, int k, bint oriented, order, long long node_budget=0):
    """See ``vecflow._kernels._search_py.search_cover``."""
    cdef int m = len(tails)
    if m == 0:
        return STATUS_FOUND, [], 0
    if k < 2:
        return STATUS_NONE, [], 0

    cdef int total = k * k
    cdef int* buf = <int*> malloc(sizeof(int) * (7 * m + 1 + 4 * n + n * k))
    if buf == NULL:
        raise MemoryError()
    cdef int* ctails = buf
    cdef int* cheads = ctails + m
    cdef int* corder = cheads + m
    cdef int* remaining = corder + m
    cdef int* sums = remaining + n
    cdef int* sum_abs = sums + n * k
    cdef int* odd_mask = sum_abs + n
    cdef int* odd_count = odd_mask + n
    cdef int* assign = odd_count + n
    cdef int* pair_i = assign + m
    cdef int* pair_j = pair_i + m
    cdef int* used_stack = pair_j + m  # length m + 1

    cdef long long nodes = 0
    cdef int depth = 0
    cdef int e, t, h, used, code, i, j, nu, prev, v
    cdef bint placed, feasible
    try:
        for e in range(m):
            ctails[e] = tails[e]
            cheads[e] = heads[e]
            corder[e] = order[e]
            assign[e] = -1
            pair_i[e] = 0
            pair_j[e] = 0
        for v in range(n):
            remaining[v] = 0
            sum_abs[v] = 0
            odd_mask[v] = 0
            odd_count[v] = 0
        for v in range(n * k):
            sums[v] = 0
        for e in range(m):
            remaining[ctails[e]] += 1
            remaining[cheads[e]] += 1
        for e in range(m + 1):
            used_stack[e] = 0

        while True:
            e = corder[depth]
            t = ctails[e]
            h = cheads[e]
            used = used_stack[depth]
            code = assign[depth] + 1
            placed = False
            while code < total:
                i = code // k
                j = code - i * k
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
                remaining[t] -= 1
                remaining[h] -= 1
                if oriented:
                    _bump(t, i, -1, k, sums, sum_abs)
                    _bump(t, j, 1, k, sums, sum_abs)
                    _bump(h, i, 1, k, sums, sum_abs)
                    _bump(h, j, -1, k, sums, sum_abs)
                else:
                    _toggle(t, i, j, odd_mask, odd_count)
                    _toggle(h, i, j, odd_mask, odd_count)
                feasible = _vertex_ok(t, k, oriented, remaining, sums, sum_abs, odd_count) and \
                    _vertex_ok(h, k, oriented, remaining, sums, sum_abs, odd_count)
                if feasible:
                    assign[depth] = code
                    pair_i[e] = i
                    pair_j[e] = j
                    nu = i + 1 if i >= j else j + 1
                    used_stack[depth + 1] = nu if nu > used else used
                    placed = True
                    break
                remaining[t] += 1
                remaining[h] += 1
                if oriented:
                    _bump(t, i, 1, k, sums, sum_abs)
                    _bump(t, j, -1, k, sums, sum_abs)
                    _bump(h, i, -1, k, sums, sum_abs)
                    _bump(h, j, 1, k, sums, sum_abs)
                else:
                    _toggle(t, i, j, odd_mask, odd_count)
                    _toggle(h, i, j, odd_mask, odd_count)
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
                e = corder[depth]
                t = ctails[e]
                h = cheads[e]
                prev = assign[depth]
                i = prev // k
                j = prev - i * k
                remaining[t] += 1
                remaining[h] += 1
                if oriented:
                    _bump(t, i, 1, k, sums, sum_abs)
                    _bump(t, j, -1, k, sums, sum_abs)
                    _bump(h, i, -1, k, sums, sum_abs)
                    _bump(h, j, 1, k, sums, sum_abs)
                else:
                    _toggle(t, i, j, odd_mask, odd_count)
                    _toggle(h, i, j, odd_mask, odd_count)
    finally:
        free(buf)
