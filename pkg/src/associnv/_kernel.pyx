# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free Gauss-Jordan kernel on int64.

Raises OverflowError whenever an intermediate leaves the int64 range; the
caller then reruns the pure-Python big-integer kernel.
"""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

cdef extern from *:
    """
    static inline int _axpy_checked(long long a, long long x, long long b,
                                    long long y, long long *out) {
        long long t1, t2;
        if (__builtin_mul_overflow(a, x, &t1)) return 1;
        if (__builtin_mul_overflow(b, y, &t2)) return 1;
        if (__builtin_sub_overflow(t1, t2, out)) return 1;
        if (*out == LLONG_MIN) return 1;
        return 0;
    }
    """
    int _axpy_checked(long long a, long long x, long long b, long long y,
                      long long *out) nogil


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline void _make_primitive(long long *row, Py_ssize_t ncols) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] //= g


def rref_int(rows, Py_ssize_t ncols):
    """Same contract as ``_rref_py.rref_int``; int64 only."""
    cdef list kept = [row_ for row_ in rows if any(row_)]
    cdef Py_ssize_t nrows = len(kept)
    cdef Py_ssize_t i, j, c, p, r
    cdef long long a, b, g, a0, b0, v
    cdef long long *m
    cdef long long *tmp
    cdef long long *prow
    cdef long long *row
    cdef int bad = 0
    cdef list pivots = []

    if nrows == 0 or ncols == 0:
        return [], []
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    tmp = <long long *> malloc(ncols * sizeof(long long))
    if m == NULL or tmp == NULL:
        free(m)
        free(tmp)
        raise MemoryError()
    try:
        for i in range(nrows):
            src = kept[i]
            for j in range(ncols):
                v = src[j]
                if v == -9223372036854775807 - 1:
                    raise OverflowError("int64 minimum")
                m[i * ncols + j] = v
            _make_primitive(&m[i * ncols], ncols)

        with nogil:
            r = 0
            for c in range(ncols):
                if r == nrows:
                    break
                p = r
                while p < nrows and m[p * ncols + c] == 0:
                    p += 1
                if p == nrows:
                    continue
                if p != r:
                    memcpy(tmp, &m[p * ncols], ncols * sizeof(long long))
                    memcpy(&m[p * ncols], &m[r * ncols], ncols * sizeof(long long))
                    memcpy(&m[r * ncols], tmp, ncols * sizeof(long long))
                prow = &m[r * ncols]
                a0 = prow[c]
                for i in range(nrows):
                    if i == r:
                        continue
                    row = &m[i * ncols]
                    b0 = row[c]
                    if b0 == 0:
                        continue
                    g = _gcd(a0, b0)
                    a = a0 // g
                    b = b0 // g
                    for j in range(ncols):
                        if _axpy_checked(a, row[j], b, prow[j], &row[j]):
                            bad = 1
                            break
                    if bad:
                        break
                    _make_primitive(row, ncols)
                if bad:
                    break
                with gil:
                    pivots.append(c)
                r += 1
        if bad:
            raise OverflowError("int64 overflow during elimination")
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(r)]
        return out, pivots
    finally:
        free(m)
        free(tmp)
