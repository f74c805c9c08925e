# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled polynomial kernels.

Semantics are defined by the pure-Python reference in _pykernel.py:
polynomials are lists of field-element codes (ascending degree, trimmed),
arithmetic is table lookups. This module only makes the inner loops C.
"""

from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef class FieldOps:
    """Arithmetic tables for one finite field, shared by all kernel calls."""

    cdef public int q
    cdef const int[::1] add_t
    cdef const int[::1] sub_t
    cdef const int[::1] mul_t
    cdef const int[::1] neg_t
    cdef const int[::1] inv_t

    def __init__(self, q, add_t, sub_t, mul_t, neg_t, inv_t):
        self.q = q
        self.add_t = add_t
        self.sub_t = sub_t
        self.mul_t = mul_t
        self.neg_t = neg_t
        self.inv_t = inv_t


cdef int* _to_c(list a, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef list _to_list(const int* a, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = a[i]
    return out


cdef inline Py_ssize_t _trim(const int* a, Py_ssize_t n):
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


def poly_add(FieldOps ops, list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0:
        return list(b)
    if nb == 0:
        return list(a)
    cdef int q = ops.q
    cdef const int[::1] add_t = ops.add_t
    cdef Py_ssize_t n = na if na > nb else nb
    cdef int* ca = _to_c(a, na)
    cdef int* cb
    cdef Py_ssize_t i
    try:
        cb = _to_c(b, nb)
    except BaseException:
        free(ca)
        raise
    cdef int* out = <int*> malloc(n * sizeof(int))
    if out == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    for i in range(n):
        if i < na and i < nb:
            out[i] = add_t[ca[i] * q + cb[i]]
        elif i < na:
            out[i] = ca[i]
        else:
            out[i] = cb[i]
    n = _trim(out, n)
    result = _to_list(out, n)
    free(ca)
    free(cb)
    free(out)
    return result


def poly_neg(FieldOps ops, list a):
    cdef Py_ssize_t na = len(a)
    cdef const int[::1] neg_t = ops.neg_t
    cdef list out = [0] * na
    cdef Py_ssize_t i
    for i in range(na):
        out[i] = neg_t[<int> a[i]]
    return out


def poly_sub(FieldOps ops, list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if nb == 0:
        return list(a)
    cdef int q = ops.q
    cdef const int[::1] sub_t = ops.sub_t
    cdef const int[::1] neg_t = ops.neg_t
    cdef Py_ssize_t n = na if na > nb else nb
    cdef int* ca = _to_c(a, na)
    cdef int* cb
    cdef Py_ssize_t i
    try:
        cb = _to_c(b, nb)
    except BaseException:
        free(ca)
        raise
    cdef int* out = <int*> malloc(n * sizeof(int))
    if out == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    for i in range(n):
        if i < na and i < nb:
            out[i] = sub_t[ca[i] * q + cb[i]]
        elif i < na:
            out[i] = ca[i]
        else:
            out[i] = neg_t[cb[i]]
    n = _trim(out, n)
    result = _to_list(out, n)
    free(ca)
    free(cb)
    free(out)
    return result


def poly_scale(FieldOps ops, list a, int c):
    cdef Py_ssize_t na = len(a)
    if c == 0 or na == 0:
        return []
    if c == 1:
        return list(a)
    cdef const int[::1] mul_t = ops.mul_t
    cdef int row = c * ops.q
    cdef list out = [0] * na
    cdef Py_ssize_t i
    for i in range(na):
        out[i] = mul_t[row + <int> a[i]]
    return out


def poly_mul(FieldOps ops, list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef int q = ops.q
    cdef const int[::1] add_t = ops.add_t
    cdef const int[::1] mul_t = ops.mul_t
    cdef Py_ssize_t n = na + nb - 1
    cdef int* ca = _to_c(a, na)
    cdef int* cb
    try:
        cb = _to_c(b, nb)
    except BaseException:
        free(ca)
        raise
    cdef int* out = <int*> malloc(n * sizeof(int))
    if out == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    cdef Py_ssize_t i, j, k
    cdef int ai, row
    for i in range(n):
        out[i] = 0
    for i in range(na):
        ai = ca[i]
        if ai == 0:
            continue
        row = ai * q
        for j in range(nb):
            if cb[j] != 0:
                k = i + j
                out[k] = add_t[out[k] * q + mul_t[row + cb[j]]]
    result = _to_list(out, n)
    free(ca)
    free(cb)
    free(out)
    return result


cdef Py_ssize_t _divmod_c(FieldOps ops, int* rem, Py_ssize_t la,
                          const int* b, Py_ssize_t lb, int* quot):
    # rem holds a on entry and a mod b on exit (trimmed length returned);
    # quot (length la - lb + 1, may be NULL) receives the quotient codes.
    cdef int q = ops.q
    cdef const int[::1] sub_t = ops.sub_t
    cdef const int[::1] mul_t = ops.mul_t
    cdef int lead_inv = ops.inv_t[b[lb - 1]]
    cdef Py_ssize_t db = lb - 1
    cdef Py_ssize_t s, j
    cdef int c, qc, row
    for s in range(la - db - 1, -1, -1):
        c = rem[s + db]
        if c == 0:
            if quot != NULL:
                quot[s] = 0
            continue
        qc = mul_t[c * q + lead_inv]
        if quot != NULL:
            quot[s] = qc
        row = qc * q
        for j in range(db):
            if b[j] != 0:
                rem[s + j] = sub_t[rem[s + j] * q + mul_t[row + b[j]]]
        rem[s + db] = 0
    return _trim(rem, db if db < la else la)


def poly_divmod(FieldOps ops, list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    cdef Py_ssize_t db = nb - 1
    if na <= db:
        return [], list(a)
    cdef int* rem = _to_c(a, na)
    cdef int* cb
    try:
        cb = _to_c(b, nb)
    except BaseException:
        free(rem)
        raise
    cdef Py_ssize_t nq = na - db
    cdef int* quot = <int*> malloc(nq * sizeof(int))
    if quot == NULL:
        free(rem)
        free(cb)
        raise MemoryError()
    cdef Py_ssize_t lr = _divmod_c(ops, rem, na, cb, nb, quot)
    q_list = _to_list(quot, nq)
    r_list = _to_list(rem, lr)
    free(rem)
    free(cb)
    free(quot)
    return q_list, r_list


cdef Py_ssize_t _gcd_c(FieldOps ops, int* a, Py_ssize_t la,
                       int* b, Py_ssize_t lb, int** out):
    # monic gcd of (a, la) and (b, lb); *out points at the winning buffer
    cdef int* x = a
    cdef int* y = b
    cdef Py_ssize_t lx = la, ly = lb, t
    cdef int* tmp
    while ly > 0:
        lx = _divmod_c(ops, x, lx, y, ly, NULL)
        tmp = x; x = y; y = tmp
        t = lx; lx = ly; ly = t
    out[0] = x
    if lx > 0 and x[lx - 1] != 1:
        _scale_inplace(ops, x, lx, ops.inv_t[x[lx - 1]])
    return lx


cdef void _scale_inplace(FieldOps ops, int* a, Py_ssize_t n, int c):
    cdef const int[::1] mul_t = ops.mul_t
    cdef int row = c * ops.q
    cdef Py_ssize_t i
    for i in range(n):
        a[i] = mul_t[row + a[i]]


def poly_gcd(FieldOps ops, list a, list b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 and nb == 0:
        return []
    cdef int* ca = _to_c(a, na)
    cdef int* cb
    try:
        cb = _to_c(b, nb)
    except BaseException:
        free(ca)
        raise
    cdef int* win
    cdef Py_ssize_t lg = _gcd_c(ops, ca, na, cb, nb, &win)
    result = _to_list(win, lg)
    free(ca)
    free(cb)
    return result


def frac_normalize(FieldOps ops, list num, list den):
    """Reduce num/den to canonical form: coprime, monic nonzero denominator."""
    cdef Py_ssize_t nn = len(num), nd = len(den)
    if nn == 0:
        return [], [1]
    if nd == 1 and <int> den[0] == 1:
        return list(num), [1]
    cdef int* cn = _to_c(num, nn)
    cdef int* cd
    try:
        cd = _to_c(den, nd)
    except BaseException:
        free(cn)
        raise
    # gcd consumes copies of its inputs
    cdef int* ga = <int*> malloc(nn * sizeof(int))
    cdef int* gb = <int*> malloc(nd * sizeof(int))
    if ga == NULL or gb == NULL:
        free(cn); free(cd)
        if ga != NULL: free(ga)
        if gb != NULL: free(gb)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(nn):
        ga[i] = cn[i]
    for i in range(nd):
        gb[i] = cd[i]
    cdef int* win
    cdef Py_ssize_t lg = _gcd_c(ops, ga, nn, gb, nd, &win)
    cdef int* qn
    cdef int* qd
    cdef Py_ssize_t lqn, lqd
    if lg > 1:
        lqn = nn - lg + 1
        lqd = nd - lg + 1
        qn = <int*> malloc(lqn * sizeof(int))
        qd = <int*> malloc(lqd * sizeof(int))
        if qn == NULL or qd == NULL:
            free(cn); free(cd); free(ga); free(gb)
            if qn != NULL: free(qn)
            if qd != NULL: free(qd)
            raise MemoryError()
        _divmod_c(ops, cn, nn, win, lg, qn)
        _divmod_c(ops, cd, nd, win, lg, qd)
        free(cn)
        free(cd)
        cn = qn; nn = lqn
        cd = qd; nd = lqd
    free(ga)
    free(gb)
    cdef int lead = cd[nd - 1]
    if lead != 1:
        _scale_inplace(ops, cn, nn, ops.inv_t[lead])
        _scale_inplace(ops, cd, nd, ops.inv_t[lead])
    n_list = _to_list(cn, nn)
    d_list = _to_list(cd, nd)
    free(cn)
    free(cd)
    return n_list, d_list
