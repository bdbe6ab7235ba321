# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel for the difference-set search.

Behavioral twin of ``_search_py``: same traversal order, same node
accounting, same results.  The first-solution search runs without the GIL so
subtree workers can execute in parallel threads.
"""

from libc.stdlib cimport calloc, free, malloc

FOUND = 0
EXHAUSTED = 1
BUDGET = 2


cdef inline int _place(int m, unsigned char *covered, int *chosen,
                       int t, int v) noexcept nogil:
    # Mark the differences v-chosen[j]; undo and report 0 on a clash.
    # Marking must be incremental: two differences of the same candidate can
    # collide with each other (d and m-d), not only with earlier marks.
    cdef int j, d, placed = 0
    for j in range(t):
        d = v - chosen[j]
        if covered[d] or covered[m - d]:
            break
        covered[d] = 1
        covered[m - d] = 1
        placed += 1
    if placed == t:
        return 1
    for j in range(placed):
        d = v - chosen[j]
        covered[d] = 0
        covered[m - d] = 0
    return 0


cdef inline void _unplace(int m, unsigned char *covered, int *chosen,
                          int t, int v) noexcept nogil:
    cdef int j, d
    for j in range(t):
        d = v - chosen[j]
        covered[d] = 0
        covered[m - d] = 0


cdef int _rec_first(int m, int k, unsigned char *covered, int *chosen,
                    int t, long long budget, long long *nodes) noexcept nogil:
    cdef int v, r, lo, vmax
    if t == k:
        return 0
    lo = chosen[t - 1] + 1 if t else 0
    vmax = m - k + t
    for v in range(lo, vmax + 1):
        if nodes[0] >= budget:
            return 2
        nodes[0] += 1
        if _place(m, covered, chosen, t, v):
            chosen[t] = v
            r = _rec_first(m, k, covered, chosen, t + 1, budget, nodes)
            if r != 1:
                return r
            _unplace(m, covered, chosen, t, v)
    return 1


cdef int _rec_all(int m, int k, unsigned char *covered, int *chosen,
                  int t, long long budget, long long *nodes, list out):
    cdef int v, j, r, lo, vmax
    if t == k:
        out.append(tuple([chosen[j] for j in range(k)]))
        return 1
    lo = chosen[t - 1] + 1 if t else 0
    vmax = m - k + t
    for v in range(lo, vmax + 1):
        if nodes[0] >= budget:
            return 2
        nodes[0] += 1
        if _place(m, covered, chosen, t, v):
            chosen[t] = v
            r = _rec_all(m, k, covered, chosen, t + 1, budget, nodes, out)
            if r != 1:
                return r
            _unplace(m, covered, chosen, t, v)
    return 1


cdef int _seed_prefix(int m, object prefix, unsigned char *covered):
    cdef int i, j, d, v
    for i in range(1, len(prefix)):
        v = prefix[i]
        for j in range(i):
            d = v - prefix[j]
            if d < 0:
                d += m
            if covered[d] or covered[m - d]:
                return 0
            covered[d] = 1
            covered[m - d] = 1
    return 1


def subtree_first(int m, int k, prefix, long long budget):
    """See ``_search_py.subtree_first``."""
    cdef unsigned char *covered = <unsigned char *> calloc(m, 1)
    cdef int *chosen = <int *> malloc(k * sizeof(int))
    cdef long long nodes = 0
    cdef int t0 = len(prefix)
    cdef int status, j
    if covered == NULL or chosen == NULL:
        free(covered)
        free(chosen)
        raise MemoryError()
    try:
        if not _seed_prefix(m, prefix, covered):
            return EXHAUSTED, 0, None
        for j in range(t0):
            chosen[j] = prefix[j]
        with nogil:
            status = _rec_first(m, k, covered, chosen, t0, budget, &nodes)
        sol = tuple([chosen[j] for j in range(k)]) if status == 0 else None
        return status, nodes, sol
    finally:
        free(covered)
        free(chosen)


def subtree_all(int m, int k, prefix, long long budget):
    """See ``_search_py.subtree_all``."""
    cdef unsigned char *covered = <unsigned char *> calloc(m, 1)
    cdef int *chosen = <int *> malloc(k * sizeof(int))
    cdef long long nodes = 0
    cdef int t0 = len(prefix)
    cdef int status, j
    out = []
    if covered == NULL or chosen == NULL:
        free(covered)
        free(chosen)
        raise MemoryError()
    try:
        if not _seed_prefix(m, prefix, covered):
            return EXHAUSTED, 0, []
        for j in range(t0):
            chosen[j] = prefix[j]
        status = _rec_all(m, k, covered, chosen, t0, budget, &nodes, out)
        return status, nodes, out
    finally:
        free(covered)
        free(chosen)
