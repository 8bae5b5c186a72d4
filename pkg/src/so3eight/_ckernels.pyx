# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel.

Runs Gauss-Jordan on a machine-word copy of the matrix with overflow
checks on every multiply/subtract; on overflow the whole call is replayed
by the pure-Python kernel on arbitrary-precision ints.  The normalized
integer RREF is unique for a given row space, so both paths return
identical results.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

from so3eight import _kernels_py

cdef extern from *:
    """
    static inline int mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    /* keep entries below this so a single product cannot wrap unchecked */
    #define SO3_LIMIT (1LL << 62)
    """
    const long long LIMIT "SO3_LIMIT"
    int mul_ovf(long long a, long long b, long long *r) nogil
    int sub_ovf(long long a, long long b, long long *r) nogil



cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _normalize(long long *row, Py_ssize_t n, Py_ssize_t lead) nogil:
    cdef long long g = 0
    cdef Py_ssize_t c
    for c in range(n):
        if row[c]:
            g = _gcd(g, row[c])
            if g == 1:
                break
    if g > 1:
        for c in range(n):
            row[c] = row[c] // g
    if lead >= 0 and row[lead] < 0:
        for c in range(n):
            row[c] = -row[c]
    return 0


cdef int _eliminate(long long *r, long long *prow, Py_ssize_t col,
                    Py_ssize_t n) nogil:
    # r <- (p/g) r - (a/g) prow ; returns 1 on overflow
    cdef long long p = prow[col]
    cdef long long a = r[col]
    cdef long long g = _gcd(p, a)
    cdef long long mp = p // g
    cdef long long ma = a // g
    cdef long long t1, t2
    cdef Py_ssize_t c
    for c in range(n):
        if mul_ovf(mp, r[c], &t1):
            return 1
        if prow[c]:
            if mul_ovf(ma, prow[c], &t2):
                return 1
            if sub_ovf(t1, t2, &t1):
                return 1
        if t1 >= LIMIT or t1 <= -LIMIT:
            return 1
        r[c] = t1
    return 0


cdef int _rref_c(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                 Py_ssize_t *active, Py_ssize_t *red, Py_ssize_t *pivcols,
                 Py_ssize_t *out_rank) nogil:
    cdef Py_ssize_t nact = 0, nred = 0
    cdef Py_ssize_t i, j, col, piv, idx
    cdef long long best, v
    cdef long long *r
    cdef long long *prow
    cdef int nonzero
    for i in range(nrows):
        nonzero = 0
        for j in range(ncols):
            if m[i * ncols + j]:
                nonzero = 1
                break
        if nonzero:
            active[nact] = i
            nact += 1
    for col in range(ncols):
        if nact == 0:
            break
        piv = -1
        best = 0
        for idx in range(nact):
            v = m[active[idx] * ncols + col]
            if v < 0:
                v = -v
            if v and (piv < 0 or v < best):
                piv = idx
                best = v
                if best == 1:
                    break
        if piv < 0:
            continue
        prow = m + active[piv] * ncols
        _normalize(prow, ncols, col)
        i = active[piv]
        for idx in range(piv, nact - 1):
            active[idx] = active[idx + 1]
        nact -= 1
        idx = 0
        while idx < nact:
            r = m + active[idx] * ncols
            if r[col]:
                if _eliminate(r, prow, col, ncols):
                    return 1
                nonzero = 0
                for j in range(ncols):
                    if r[j]:
                        nonzero = 1
                        break
                if not nonzero:
                    for j in range(idx, nact - 1):
                        active[j] = active[j + 1]
                    nact -= 1
                    continue
                _normalize(r, ncols, -1)
            idx += 1
        for idx in range(nred):
            r = m + red[idx] * ncols
            if r[col]:
                if _eliminate(r, prow, col, ncols):
                    return 1
                _normalize(r, ncols, pivcols[idx])
        red[nred] = i
        pivcols[nred] = col
        nred += 1
    out_rank[0] = nred
    return 0


def rref_int(rows, Py_ssize_t ncols):
    """Integer RREF; same contract as ``_kernels_py.rref_int``."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *active
    cdef Py_ssize_t *red
    cdef Py_ssize_t *pivcols
    cdef int failed
    if nrows == 0 or ncols == 0:
        return [], []
    for row in rows:
        for x in row:
            if x >= LIMIT or x <= -LIMIT:
                return _kernels_py.rref_int(rows, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    active = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    red = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    pivcols = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    if not m or not active or not red or not pivcols:
        free(m); free(active); free(red); free(pivcols)
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        with nogil:
            failed = _rref_c(m, nrows, ncols, active, red, pivcols, &rank)
        if failed:
            return _kernels_py.rref_int(rows, ncols)
        reduced = []
        pivots = []
        for i in range(rank):
            reduced.append([m[red[i] * ncols + j] for j in range(ncols)])
            pivots.append(pivcols[i])
        # pivots come out in column order already
        return reduced, pivots
    finally:
        free(m); free(active); free(red); free(pivcols)


def rank_int(rows, Py_ssize_t ncols):
    return len(rref_int(rows, ncols)[1])
