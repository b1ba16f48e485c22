# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p."""

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(rows, Py_ssize_t ncols, int64_t p):
    """Reduced row echelon form of an integer matrix modulo ``p``.

    Returns ``(nonzero_rows, pivot_columns)``.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, c, r = 0, piv
    cdef int64_t f, inv, v
    cdef int64_t *a
    cdef int64_t *row
    cdef int64_t *other
    if nrows == 0 or ncols == 0:
        return [], []
    if p >= (1 << 31):
        raise OverflowError("prime too large for the compiled kernel")
    a = <int64_t *> malloc(nrows * ncols * sizeof(int64_t))
    if a == NULL:
        raise MemoryError()
    pivots = []
    try:
        for i in range(nrows):
            rr = rows[i]
            for j in range(ncols):
                v = rr[j] % p
                a[i * ncols + j] = v
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    v = a[piv * ncols + j]
                    a[piv * ncols + j] = a[r * ncols + j]
                    a[r * ncols + j] = v
            row = a + r * ncols
            inv = _inv(row[c], p)
            if inv != 1:
                for j in range(c, ncols):
                    row[j] = row[j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                other = a + i * ncols
                f = other[c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    if row[j] != 0:
                        v = (other[j] - f * row[j]) % p
                        if v < 0:
                            v += p
                        other[j] = v
            pivots.append(c)
            r += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(a)
    return out, pivots
