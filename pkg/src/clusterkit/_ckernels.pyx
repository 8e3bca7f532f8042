# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel lane. Mirrors clusterkit._pykernels function for function."""

import numpy as np

IMPLEMENTATION = "compiled"


def ffgj_inverse(list rows):
    """Exact integer-matrix inverse, fraction-free Gauss-Jordan.

    Entry arithmetic stays in Python objects (int or gmpy2.mpz); the win
    over the pure lane is the loop and indexing overhead.
    """
    cdef Py_ssize_t k = len(rows)
    cdef Py_ssize_t t, i, j, r, piv
    cdef list m = [], row, prow
    cdef object d, p, mit, x, one, zero

    one = rows[0][0] - rows[0][0] + 1 if k else 1
    zero = one - one
    for i in range(k):
        row = list(rows[i])
        for j in range(k):
            row.append(one if i == j else zero)
        m.append(row)
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
            row = m[piv]
            m[piv] = m[t]
            m[t] = [-x for x in row]
        prow = m[t]
        p = prow[t]
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
    return [(<list>m[i])[k:] for i in range(k)], d


def lu_inverse(a, double rel_tol=1e-12):
    """Float inverse via LU with partial pivoting; None below pivot threshold."""
    cdef object lu_arr = np.array(a, dtype=np.float64, copy=True, order="C")
    cdef double[:, ::1] lu = lu_arr
    cdef Py_ssize_t k = lu.shape[0]
    cdef Py_ssize_t t, i, j, r
    cdef double amax = 0.0, best, v, l, pivval

    for i in range(k):
        for j in range(k):
            v = lu[i, j] if lu[i, j] >= 0.0 else -lu[i, j]
            if v > amax:
                amax = v
    if amax == 0.0:
        return None

    perm_arr = np.arange(k, dtype=np.intp)
    cdef Py_ssize_t[::1] perm = perm_arr
    for t in range(k):
        r = t
        best = lu[t, t] if lu[t, t] >= 0.0 else -lu[t, t]
        for i in range(t + 1, k):
            v = lu[i, t] if lu[i, t] >= 0.0 else -lu[i, t]
            if v > best:
                best = v
                r = i
        if best < rel_tol * amax:
            return None
        if r != t:
            for j in range(k):
                v = lu[t, j]
                lu[t, j] = lu[r, j]
                lu[r, j] = v
            perm[t], perm[r] = perm[r], perm[t]
        pivval = lu[t, t]
        for i in range(t + 1, k):
            lu[i, t] /= pivval
        for i in range(t + 1, k):
            l = lu[i, t]
            if l != 0.0:
                for j in range(t + 1, k):
                    lu[i, j] -= l * lu[t, j]

    inv_arr = np.zeros((k, k), dtype=np.float64)
    cdef double[:, ::1] inv = inv_arr
    for t in range(k):
        inv[t, perm[t]] = 1.0
    for t in range(k):
        for i in range(t + 1, k):
            l = lu[i, t]
            if l != 0.0:
                for j in range(k):
                    inv[i, j] -= l * inv[t, j]
    for t in range(k - 1, -1, -1):
        for i in range(t + 1, k):
            l = lu[t, i]
            if l != 0.0:
                for j in range(k):
                    inv[t, j] -= l * inv[i, j]
        pivval = lu[t, t]
        for j in range(k):
            inv[t, j] /= pivval
    return inv_arr


def union_find_sizes(Py_ssize_t k, edges):
    """Component size per node; union by size with path halving."""
    parent_arr = np.arange(k, dtype=np.intp)
    size_arr = np.ones(k, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    cdef Py_ssize_t[::1] size = size_arr
    cdef Py_ssize_t u, v, i, r
    for e in edges:
        u = e[0]
        v = e[1]
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
