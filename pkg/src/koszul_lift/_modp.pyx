# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Dense row reduction mod p, the hot kernel behind every rank and solve.

Entries must be reduced representatives in [0, p) with p < 2**31 so all
intermediate products fit in int64.  The elimination is full Gauss-Jordan
with first-nonzero pivoting and pivots normalized to 1, which the pure
Python fallback mirrors operation for operation.
"""

BACKEND = "compiled"


cdef long long _powmod(long long base, long long exp, long long p) nogil:
    cdef long long acc = 1 % p
    cdef long long b = base % p
    cdef long long e = exp
    while e > 0:
        if e & 1:
            acc = (acc * b) % p
        b = (b * b) % p
        e >>= 1
    return acc


def rref_mod(long long[:, ::1] a, long long p, long long[::1] pivots):
    """Reduce ``a`` in place to reduced row echelon form mod p.

    Writes pivot column indices into ``pivots`` (which must have room for
    min(nrows, ncols) entries) and returns the rank.
    """
    cdef Py_ssize_t nrows = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t col, r, piv, j
    cdef long long inv, f, t

    with nogil:
        for col in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for r in range(rank, nrows):
                if a[r, col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, ncols):
                    t = a[rank, j]
                    a[rank, j] = a[piv, j]
                    a[piv, j] = t
            if a[rank, col] != 1:
                inv = _powmod(a[rank, col], p - 2, p)
                for j in range(col, ncols):
                    a[rank, j] = (a[rank, j] * inv) % p
            for r in range(nrows):
                if r == rank:
                    continue
                f = a[r, col]
                if f == 0:
                    continue
                for j in range(col, ncols):
                    t = (a[r, j] - f * a[rank, j]) % p
                    if t < 0:
                        t += p
                    a[r, j] = t
            pivots[rank] = col
            rank += 1
    return rank
