"""Pure-Python backtracking kernel for the difference-set search.

This is the fallback twin of the compiled kernel in ``_search_cy.pyx``.  The
two must stay behaviorally identical: same traversal order, same node
accounting, same results.  A node is one candidate value subjected to the
difference-coverage check; the budget is a cap on visited nodes.

Status codes: 0 = found, 1 = subtree exhausted, 2 = budget exceeded.
"""

FOUND = 0
EXHAUSTED = 1
BUDGET = 2


def _seed_prefix(m, prefix, covered):
    """Mark the prefix's pairwise differences; False on a collision."""
    for i in range(1, len(prefix)):
        v = prefix[i]
        for j in range(i):
            d = v - prefix[j]
            if d < 0:
                d += m
            if covered[d] or covered[m - d]:
                return False
            covered[d] = 1
            covered[m - d] = 1
    return True


def subtree_first(m, k, prefix, budget):
    """Search below `prefix` for one completion to a k-subset of Z_m whose
    pairwise differences are all distinct.

    Returns (status, nodes, solution-or-None).
    """
    covered = bytearray(m)
    if not _seed_prefix(m, prefix, covered):
        return EXHAUSTED, 0, None
    chosen = list(prefix) + [0] * (k - len(prefix))
    nodes = [0]
    status = _rec_first(m, k, covered, chosen, len(prefix), budget, nodes)
    sol = tuple(chosen) if status == FOUND else None
    return status, nodes[0], sol


def _place(m, covered, chosen, t, v):
    """Mark the differences v-chosen[j]; undo and report False on a clash.

    Marking must be incremental: two differences of the same candidate can
    collide with each other (d and m-d), not only with earlier marks.
    """
    placed = 0
    for j in range(t):
        d = v - chosen[j]
        if covered[d] or covered[m - d]:
            break
        covered[d] = 1
        covered[m - d] = 1
        placed += 1
    if placed == t:
        return True
    for j in range(placed):
        d = v - chosen[j]
        covered[d] = 0
        covered[m - d] = 0
    return False


def _unplace(m, covered, chosen, t, v):
    for j in range(t):
        d = v - chosen[j]
        covered[d] = 0
        covered[m - d] = 0


def _rec_first(m, k, covered, chosen, t, budget, nodes):
    if t == k:
        return FOUND
    lo = chosen[t - 1] + 1 if t else 0
    vmax = m - k + t
    for v in range(lo, vmax + 1):
        if nodes[0] >= budget:
            return BUDGET
        nodes[0] += 1
        if _place(m, covered, chosen, t, v):
            chosen[t] = v
            r = _rec_first(m, k, covered, chosen, t + 1, budget, nodes)
            if r != EXHAUSTED:
                return r
            _unplace(m, covered, chosen, t, v)
    return EXHAUSTED


def subtree_all(m, k, prefix, budget):
    """Collect every completion below `prefix` (same accounting as above).

    Returns (status, nodes, list-of-solutions); status EXHAUSTED means the
    subtree was fully enumerated, BUDGET means the list may be incomplete.
    """
    covered = bytearray(m)
    if not _seed_prefix(m, prefix, covered):
        return EXHAUSTED, 0, []
    chosen = list(prefix) + [0] * (k - len(prefix))
    nodes = [0]
    out = []
    status = _rec_all(m, k, covered, chosen, len(prefix), budget, nodes, out)
    return status, nodes[0], out


def _rec_all(m, k, covered, chosen, t, budget, nodes, out):
    if t == k:
        out.append(tuple(chosen))
        return EXHAUSTED
    lo = chosen[t - 1] + 1 if t else 0
    vmax = m - k + t
    for v in range(lo, vmax + 1):
        if nodes[0] >= budget:
            return BUDGET
        nodes[0] += 1
        if _place(m, covered, chosen, t, v):
            chosen[t] = v
            r = _rec_all(m, k, covered, chosen, t + 1, budget, nodes, out)
            if r != EXHAUSTED:
                return r
            _unplace(m, covered, chosen, t, v)
    return EXHAUSTED
