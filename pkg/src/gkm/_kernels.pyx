# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernels; same contract as ``gkm._kernels_py``."""
from math import gcd


cdef tuple _add_exp(tuple ea, tuple eb, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = ea[i] + eb[i]
    return tuple(out)


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef tuple ea, eb, e
    cdef object ca, cb, c
    cdef Py_ssize_t n
    if not a or not b:
        return out
    n = len(next(iter(a)))
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = _add_exp(ea, eb, n)
            c = out.get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def add_terms(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    cdef object e, c, v
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


cdef list _normalize(list row):
    cdef object g = 0
    cdef object x
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


cdef list _combine(object p, list r, object f, list prow):
    cdef Py_ssize_t i, n = len(r)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = p * r[i] - f * prow[i]
    return _normalize(out)


def row_reduce(rows, Py_ssize_t ncols):
    cdef list work = [_normalize(list(r)) for r in rows if any(r)]
    cdef list pivots = []
    cdef list done = []
    cdef list prow, r, nxt
    cdef Py_ssize_t col, k, idx
    cdef object p, f
    for col in range(ncols):
        idx = -1
        for k in range(len(work)):
            if (<list>work[k])[col]:
                idx = k
                break
        if idx < 0:
            continue
        prow = work.pop(idx)
        if prow[col] < 0:
            prow = [-x for x in prow]
        p = prow[col]
        nxt = []
        for r in work:
            f = r[col]
            if f:
                r = _combine(p, r, f, prow)
            if any(r):
                nxt.append(r)
        work = nxt
        for k in range(len(done)):
            r = done[k]
            f = r[col]
            if f:
                r = _combine(p, r, f, prow)
                if r[pivots[k]] < 0:
                    r = [-x for x in r]
                done[k] = r
        done.append(prow)
        pivots.append(col)
    return done, pivots
