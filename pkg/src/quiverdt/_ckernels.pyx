# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""int64 versions of the dense polynomial kernels.

Every routine returns ``None`` when an input or an intermediate leaves the
int64 range; the caller then reruns the pure-Python kernel on Python ints.
"""

from libc.stdlib cimport malloc, free

cdef long long LIMIT = 1LL << 62

cdef extern from *:
    """
    static inline int qdt_fma(long long a, long long b, long long *acc) {
        long long p;
        if (__builtin_mul_overflow(a, b, &p)) return 1;
        if (__builtin_add_overflow(*acc, p, acc)) return 1;
        return 0;
    }
    static inline int qdt_add(long long a, long long b, long long *out) {
        return __builtin_add_overflow(a, b, out);
    }
    """
    int qdt_fma(long long a, long long b, long long *acc) nogil
    int qdt_add(long long a, long long b, long long *out) nogil


cdef long long *_load(object seq, Py_ssize_t n) except? NULL:
    cdef long long *buf = <long long *> malloc(max(n, 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    cdef long long x
    try:
        for i in range(n):
            x = seq[i]
            # headroom so that negation and a single add never wrap
            if x > LIMIT or x < -LIMIT:
                free(buf)
                return NULL
            buf[i] = x
    except OverflowError:
        free(buf)
        return NULL
    return buf


def mul(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef long long *pa = _load(a, na)
    if pa == NULL:
        return None
    cdef long long *pb = _load(b, nb)
    if pb == NULL:
        free(pa)
        return None
    cdef Py_ssize_t nout = na + nb - 1, i, j
    cdef long long *out = <long long *> malloc(nout * sizeof(long long))
    cdef int bad = 0
    cdef long long bj
    for i in range(nout):
        out[i] = 0
    with nogil:
        for j in range(nb):
            bj = pb[j]
            if bj == 0:
                continue
            for i in range(na):
                if qdt_fma(pa[i], bj, &out[i + j]):
                    bad = 1
                    break
            if bad:
                break
    free(pa)
    free(pb)
    if bad:
        free(out)
        return None
    result = [out[i] for i in range(nout)]
    free(out)
    return result


def div_binomial(p, Py_ssize_t n):
    cdef Py_ssize_t size = len(p)
    if size <= n:
        return None
    cdef long long *pp = _load(p, size)
    if pp == NULL:
        return None
    cdef Py_ssize_t qlen = size - n, j, k
    cdef long long *q = <long long *> malloc(qlen * sizeof(long long))
    cdef int bad = 0, inexact = 0
    cdef long long c, tail
    with nogil:
        for j in range(qlen - 1, -1, -1):
            c = pp[j + n]
            if j + n < qlen:
                if qdt_add(c, q[j + n], &c):
                    bad = 1
                    break
            q[j] = c
        if not bad:
            for k in range(n):
                tail = q[k] if k < qlen else 0
                if qdt_add(pp[k], tail, &c):
                    bad = 1
                    break
                if c != 0:
                    inexact = 1
                    break
    free(pp)
    if bad:
        free(q)
        # overflow: let the Python kernel decide divisibility
        return None
    if inexact:
        free(q)
        return False
    result = [q[j] for j in range(qlen)]
    free(q)
    return result


def mul_binomial(p, Py_ssize_t n):
    cdef Py_ssize_t size = len(p), i
    if size == 0:
        return []
    cdef long long *pp = _load(p, size)
    if pp == NULL:
        return None
    cdef long long *out = <long long *> malloc((size + n) * sizeof(long long))
    cdef int bad = 0
    with nogil:
        for i in range(size):
            out[i] = -pp[i]
        for i in range(size, size + n):
            out[i] = 0
        for i in range(size):
            if qdt_add(out[i + n], pp[i], &out[i + n]):
                bad = 1
                break
    free(pp)
    if bad:
        free(out)
        return None
    result = [out[i] for i in range(size + n)]
    free(out)
    return result
