"""Pure-Python fraction-free Gauss-Jordan kernel.

Operates on rows of Python ints. Each elimination step replaces a row by an
integer combination and divides out the row content, so entries stay small
without ever forming fractions. The compiled kernel in ``_kernel.pyx``
implements the same algorithm on int64 with overflow detection.
"""

from math import gcd


def _primitive(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref_int(rows, ncols):
    """Reduce integer ``rows`` in place order; return ``(pivot_rows, pivots)``.

    ``pivot_rows[r]`` is an integer row whose only nonzero entry among the
    pivot columns sits at ``pivots[r]``.
    """
    m = [_primitive(list(r)) for r in rows if any(r)]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        prow = m[r]
        a0 = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            b0 = row[c]
            if b0 == 0:
                continue
            g = gcd(a0, b0)
            a = a0 // g
            b = b0 // g
            m[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    return m[:r], pivots
