"""Pure-Python arithmetic kernels.

Reference implementation of the hot loops; ``gkm._kernels`` (Cython)
exports the same functions and is preferred when it was built.
Terms are dicts mapping exponent tuples to nonzero coefficients.
"""
from math import gcd


def mul_terms(a, b):
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            c = get(e, 0) + ca * cb
            if c:
                out[e] = c
            else:
                out.pop(e, None)
    return out


def add_terms(a, b, scale=1):
    """Return ``a + scale * b`` as a new dict."""
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + scale * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _normalize(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def row_reduce(rows, ncols):
    """Fraction-free reduced row echelon form over Z.

    ``rows`` are integer lists. Pivot rule: columns left to right, first
    remaining row with a nonzero entry. Returns ``(rows, pivots)`` where
    every returned row is primitive, and row ``k`` has its only nonzero
    entry among pivot columns at ``pivots[k]``. Zero rows are dropped.
    """
    work = [_normalize(list(r)) for r in rows if any(r)]
    pivots = []
    done = []
    for col in range(ncols):
        idx = -1
        for k, r in enumerate(work):
            if r[col]:
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
                r = _normalize([p * x - f * y for x, y in zip(r, prow)])
            if any(r):
                nxt.append(r)
        work = nxt
        for k, r in enumerate(done):
            f = r[col]
            if f:
                r = _normalize([p * x - f * y for x, y in zip(r, prow)])
                if r[pivots[k]] < 0:
                    r = [-x for x in r]
                done[k] = r
        done.append(prow)
        pivots.append(col)
    return done, pivots
