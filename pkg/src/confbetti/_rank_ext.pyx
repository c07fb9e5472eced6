# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact rank kernel.

Same reduction as ``_rank_py.rank_int_rows`` but on int64 with checked
arithmetic.  Any overflow raises ``OverflowError``; the caller then redoes
the whole matrix with Python integers, so the result is always exact.
"""
from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    """
    static int cb_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static int cb_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int cb_mul_ovf(long long a, long long b, long long *r) nogil
    int cb_sub_ovf(long long a, long long b, long long *r) nogil

cdef extern from "limits.h":
    long long LLONG_MIN

ctypedef struct Row:
    int n
    int *cols
    long long *vals


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _make_primitive(Row *r) nogil:
    cdef long long g = 0
    cdef int i
    for i in range(r.n):
        g = _gcd(g, r.vals[i])
        if g == 1:
            return
    if g > 1:
        for i in range(r.n):
            r.vals[i] = r.vals[i] // g


cdef void _free_row(Row *r) nogil:
    if r != NULL:
        free(r.cols)
        free(r.vals)
        free(r)


cdef Row *_new_row(int cap) nogil:
    cdef Row *r = <Row *> malloc(sizeof(Row))
    if r == NULL:
        return NULL
    r.n = 0
    r.cols = <int *> malloc((cap if cap > 0 else 1) * sizeof(int))
    r.vals = <long long *> malloc((cap if cap > 0 else 1) * sizeof(long long))
    if r.cols == NULL or r.vals == NULL:
        _free_row(r)
        return NULL
    return r


cdef int _combine(Row *cur, Row *piv, long long fa, long long fb, Row *out) nogil:
    """out = fa*cur - fb*piv; returns 1 on overflow."""
    cdef int i = 0, j = 0, n = 0
    cdef long long x, y, z
    while i < cur.n or j < piv.n:
        if j >= piv.n or (i < cur.n and cur.cols[i] < piv.cols[j]):
            if cb_mul_ovf(fa, cur.vals[i], &z):
                return 1
            out.cols[n] = cur.cols[i]
            i += 1
        elif i >= cur.n or piv.cols[j] < cur.cols[i]:
            if cb_mul_ovf(fb, piv.vals[j], &y):
                return 1
            if y == LLONG_MIN:
                return 1
            z = -y
            out.cols[n] = piv.cols[j]
            j += 1
        else:
            if cb_mul_ovf(fa, cur.vals[i], &x):
                return 1
            if cb_mul_ovf(fb, piv.vals[j], &y):
                return 1
            if cb_sub_ovf(x, y, &z):
                return 1
            out.cols[n] = cur.cols[i]
            i += 1
            j += 1
        if z == LLONG_MIN:
            return 1
        if z != 0:
            out.vals[n] = z
            n += 1
    out.n = n
    return 0


def rank_int_rows(rows, int ncols):
    """Rank over Q of an integer matrix given as a list of ``{col: value}`` rows.

    Raises OverflowError if an entry or intermediate leaves int64.
    """
    cdef Row **pivots = <Row **> calloc(ncols if ncols > 0 else 1, sizeof(Row *))
    cdef Row *cur = NULL
    cdef Row *piv
    cdef Row *nxt
    cdef int rank = 0, i, lead, overflow = 0
    cdef long long a, b, g
    if pivots == NULL:
        raise MemoryError()
    try:
        clean = [sorted((c, v) for c, v in src.items() if v) for src in rows]
        for items in sorted(clean, key=len):
            cur = _new_row(len(items))
            if cur == NULL:
                raise MemoryError()
            for c, v in items:
                if not (-(1 << 62) < v < (1 << 62)):
                    raise OverflowError("entry does not fit the int64 kernel")
                if c < 0 or c >= ncols:
                    raise IndexError("column index out of range")
                cur.cols[cur.n] = c
                cur.vals[cur.n] = v
                cur.n += 1
            with nogil:
                _make_primitive(cur)
                while cur.n > 0:
                    lead = cur.cols[0]
                    piv = pivots[lead]
                    if piv == NULL:
                        pivots[lead] = cur
                        cur = NULL
                        rank += 1
                        break
                    a = piv.vals[0]
                    b = cur.vals[0]
                    g = _gcd(a, b)
                    nxt = _new_row(cur.n + piv.n)
                    if nxt == NULL:
                        overflow = 2
                        break
                    if _combine(cur, piv, a // g, b // g, nxt):
                        _free_row(nxt)
                        overflow = 1
                        break
                    _free_row(cur)
                    cur = nxt
                    _make_primitive(cur)
            if overflow == 1:
                raise OverflowError("intermediate value left int64")
            if overflow == 2:
                raise MemoryError()
            _free_row(cur)
            cur = NULL
        return rank
    finally:
        _free_row(cur)
        for i in range(ncols):
            _free_row(pivots[i])
        free(pivots)
