"""Pure-Python kernel implementations.

These are the fallback lane behind :mod:`clusterkit.kernels`. The compiled
lane in ``_ckernels`` implements the same three functions with identical
semantics; ``tests/test_kernels.py`` holds them to agreement.
"""

from __future__ import annotations

import numpy as np

IMPLEMENTATION = "python"


def ffgj_inverse(rows):
    """Exact inverse of a square integer matrix by fraction-free elimination.

    One-step fraction-free Gauss-Jordan: every intermediate value is an
    integer and every division is exact, so the only requirement on the
    entries is integer arithmetic (built-in int or gmpy2.mpz both work).

    Returns ``(numerators, d)`` with ``inverse = numerators / d`` entrywise,
    or ``None`` if the matrix is singular. ``d`` is the determinant up to
    the sign convention used for row swaps.
    """
    k = len(rows)
    one = rows[0][0] - rows[0][0] + 1 if k else 1  # unit in the entry type
    zero = one - one
    m = [list(r) + [one if i == j else zero for j in range(k)] for i, r in enumerate(rows)]
    d = one
    for t in range(k):
        piv = -1
        for r in range(t, k):
            if m[r][t]:
                piv = r
                break
        if piv < 0:
            return None
        if piv != t:
            m[t], m[piv] = m[piv], m[t]
            # negating the moved row keeps every later division exact
            m[t] = [-x for x in m[t]]
        p = m[t][t]
        prow = m[t]
        for i in range(k):
            if i == t:
                continue
            row = m[i]
            mit = row[t]
            for j in range(2 * k):
                if j != t:
                    row[j] = (p * row[j] - mit * prow[j]) // d
            row[t] = zero
        d = p
    return [row[k:] for row in m], d


def lu_inverse(a, rel_tol=1e-12):
    """Float inverse via LU with partial pivoting.

    ``a`` is any square array-like of float64. A pivot smaller in magnitude
    than ``rel_tol`` times the largest input entry is treated as zero and
    the function returns ``None``.
    """
    lu = np.array(a, dtype=np.float64, copy=True)
    k = lu.shape[0]
    amax = float(np.max(np.abs(lu))) if k else 0.0
    if amax == 0.0:
        return None
    perm = np.arange(k)
    for t in range(k):
        r = t + int(np.argmax(np.abs(lu[t:, t])))
        if abs(lu[r, t]) < rel_tol * amax:
            return None
        if r != t:
            lu[[t, r]] = lu[[r, t]]
            perm[[t, r]] = perm[[r, t]]
        lu[t + 1 :, t] /= lu[t, t]
        lu[t + 1 :, t + 1 :] -= np.outer(lu[t + 1 :, t], lu[t, t + 1 :])
    inv = np.eye(k)[perm]
    for t in range(k):  # forward solve, unit lower triangle
        inv[t + 1 :] -= np.outer(lu[t + 1 :, t], inv[t])
    for t in range(k - 1, -1, -1):  # back substitution
        inv[t] -= lu[t, t + 1 :] @ inv[t + 1 :]
        inv[t] /= lu[t, t]
    return inv


def union_find_sizes(k, edges):
    """Component size per node for an undirected edge list.

    Union by size with path halving. ``edges`` is an iterable of (u, v)
    pairs with endpoints already validated against ``k``.
    """
    parent = list(range(k))
    size = [1] * k
    for u, v in edges:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        if u == v:
            continue
        if size[u] < size[v]:
            u, v = v, u
        parent[v] = u
        size[u] += size[v]
    out = [0] * k
    for i in range(k):
        r = i
        while parent[r] != r:
            r = parent[r]
        out[i] = size[r]
    return out
