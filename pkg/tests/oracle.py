"""Independent brute-force route to invariant dimensions.

Shares no code with the package: the product is evaluated from the raw
structure-constant array, each defining identity is evaluated on every
elementary matrix to get the columns of the linear system, and the rank comes
from a textbook Gauss-Jordan on Fractions.
"""

from fractions import Fraction


def naive_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _prod(gamma, x, y):
    n = len(gamma)
    out = [Fraction(0)] * n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                out[k] += x[i] * y[j] * gamma[i][j][k]
    return out


def _apply(m, v):
    n = len(v)
    return [sum(m[r][c] * v[c] for c in range(n)) for r in range(n)]


def _unit(n, p, k):
    return [[Fraction(int(r == p and c == k)) for c in range(n)] for r in range(n)]


def _e(n, i):
    return [Fraction(int(j == i)) for j in range(n)]


def _residuals(gamma, kind, phi, psi=None):
    """Stacked residuals of the identity for ``kind`` at all basis pairs."""
    n = len(gamma)
    out = []
    for i in range(n):
        for j in range(n):
            x, y = _e(n, i), _e(n, j)
            xy = _prod(gamma, x, y)
            a = _prod(gamma, _apply(phi, x), y)
            b = _prod(gamma, x, _apply(phi, y))
            if kind == "der":
                out += [u + v - w for u, v, w in zip(a, b, _apply(phi, xy))]
            elif kind == "centroid":
                f = _apply(phi, xy)
                out += [w - u for u, w in zip(a, f)] + [w - v for v, w in zip(b, f)]
            elif kind == "qc":
                out += [u - v for u, v in zip(a, b)]
            elif kind == "zder":
                out += a + b
            elif kind == "qder":
                out += [u + v - w for u, v, w in zip(a, b, _apply(psi, xy))]
    return out


def dimension(gamma, kind):
    """Solution-space dimension; ``qder`` is the pair space of ``(D, D')``."""
    n = len(gamma)
    zero = [[Fraction(0)] * n for _ in range(n)]
    cols = []
    for p in range(n):
        for k in range(n):
            u = _unit(n, p, k)
            cols.append(_residuals(gamma, kind, u, zero))
    if kind == "qder":
        for p in range(n):
            for k in range(n):
                cols.append(_residuals(gamma, kind, zero, _unit(n, p, k)))
    rows = [list(r) for r in zip(*cols)]
    return len(cols) - naive_rank(rows)


def qder_projection_dims(gamma):
    """Dimensions of the D- and D'-projections of the pair space, by brute force.

    D-projection dim = pair dim - dim{D' : (0, D') is a pair}; symmetrically.
    """
    n = len(gamma)
    pair = dimension(gamma, "qder")
    # (0, D') pairs: D'(xy) = 0 for all x, y, i.e. D' kills span of products
    zero = [[Fraction(0)] * n for _ in range(n)]
    cols_dp = [_residuals(gamma, "qder", zero, _unit(n, p, k)) for p in range(n) for k in range(n)]
    ker_dp = n * n - naive_rank([list(r) for r in zip(*cols_dp)])
    cols_d = [_residuals(gamma, "qder", _unit(n, p, k), zero) for p in range(n) for k in range(n)]
    ker_d = n * n - naive_rank([list(r) for r in zip(*cols_d)])
    return pair - ker_dp, pair - ker_d
