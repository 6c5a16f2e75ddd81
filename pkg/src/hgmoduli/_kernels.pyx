# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels on int64 with overflow detection.

Each entry point raises OverflowError when an input or an intermediate
value leaves the int64 range; ``hgmoduli.kernels`` then retries with the
pure-Python version.
"""

from libc.stdlib cimport malloc, calloc, free

ctypedef long long i64

cdef extern from *:
    """
    static inline int hg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int hg_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int hg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint hg_mul_ovf(i64 a, i64 b, i64 *r) nogil
    bint hg_add_ovf(i64 a, i64 b, i64 *r) nogil
    bint hg_sub_ovf(i64 a, i64 b, i64 *r) nogil


cdef i64* _to_c(seq, Py_ssize_t n) except NULL:
    cdef i64* buf = <i64*>malloc((n if n > 0 else 1) * sizeof(i64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    try:
        for i in range(n):
            buf[i] = seq[i]
    except OverflowError:
        free(buf)
        raise
    return buf


def convolve(a, b):
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    if n == 0 or m == 0:
        return []
    cdef i64* x = _to_c(a, n)
    cdef i64* y
    try:
        y = _to_c(b, m)
    except OverflowError:
        free(x)
        raise
    cdef i64* out = <i64*>calloc(n + m - 1, sizeof(i64))
    cdef i64 t
    cdef bint bad = 0
    with nogil:
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(m):
                if hg_mul_ovf(x[i], y[j], &t) or hg_add_ovf(out[i + j], t, &out[i + j]):
                    bad = 1
                    break
            if bad:
                break
    try:
        if bad:
            raise OverflowError("int64 overflow in convolve")
        return [out[i] for i in range(n + m - 1)]
    finally:
        free(x)
        free(y)
        free(out)


def exact_div(a, b):
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    if n == 0:
        return []
    if n < m:
        return None
    cdef i64* rem = _to_c(a, n)
    cdef i64* d
    try:
        d = _to_c(b, m)
    except OverflowError:
        free(rem)
        raise
    cdef i64* q = <i64*>calloc(n - m + 1, sizeof(i64))
    cdef i64 lead = d[m - 1], c, t, u
    cdef int status = 0   # 0 ok, 1 inexact, 2 overflow
    with nogil:
        for i in range(n - m, -1, -1):
            c = rem[i + m - 1]
            if c == 0:
                continue
            if c % lead != 0:
                status = 1
                break
            t = c / lead
            q[i] = t
            for j in range(m):
                if hg_mul_ovf(t, d[j], &u) or hg_sub_ovf(rem[i + j], u, &rem[i + j]):
                    status = 2
                    break
            if status:
                break
        if status == 0:
            for i in range(m - 1):
                if rem[i] != 0:
                    status = 1
                    break
    try:
        if status == 2:
            raise OverflowError("int64 overflow in exact_div")
        if status == 1:
            return None
        return [q[i] for i in range(n - m + 1)]
    finally:
        free(rem)
        free(d)
        free(q)


def strom_counts(int r, int k, int delta):
    cdef int s = k - r
    cdef Py_ssize_t top = k * delta + r * s
    cdef Py_ssize_t size = top + 1
    cdef Py_ssize_t nstate = (delta + 1) * (r + 1)
    cdef i64* dp = <i64*>calloc(nstate * size, sizeof(i64))
    cdef i64* new = <i64*>calloc(nstate * size, sizeof(i64))
    cdef i64* prefix = <i64*>calloc(nstate * size, sizeof(i64))
    cdef i64* tmp
    cdef int j, b, c, bp, a, b_lo
    cdef Py_ssize_t i, sh, shift0, src, dst
    cdef bint bad = 0
    if dp == NULL or new == NULL or prefix == NULL:
        free(dp); free(new); free(prefix)
        raise MemoryError()
    dp[0] = 1
    with nogil:
        for j in range(1, s + 1):
            for bp in range(delta + 1):
                for c in range(r + 1):
                    dst = (bp * (r + 1) + c) * size
                    for i in range(size):
                        if c == 0:
                            prefix[dst + i] = dp[dst + i]
                        elif hg_add_ovf(prefix[dst - size + i], dp[dst + i], &prefix[dst + i]):
                            bad = 1
            if bad:
                break
            for i in range(nstate * size):
                new[i] = 0
            b_lo = delta if j == s else 0
            for b in range(b_lo, delta + 1):
                for c in range(r + 1):
                    dst = (b * (r + 1) + c) * size
                    for bp in range(b + 1):
                        src = (bp * (r + 1) + c) * size
                        shift0 = c * (1 + b - bp)
                        for a in range(bp, b + 1):
                            sh = shift0 + a
                            for i in range(size - sh):
                                if prefix[src + i] != 0:
                                    if hg_add_ovf(new[dst + i + sh], prefix[src + i], &new[dst + i + sh]):
                                        bad = 1
            if bad:
                break
            tmp = dp
            dp = new
            new = tmp
    try:
        if bad:
            raise OverflowError("int64 overflow in strom_counts")
        total = [0] * size
        for c in range(r + 1):
            src = (delta * (r + 1) + c) * size
            for i in range(size):
                total[i] += dp[src + i]
        return total
    finally:
        free(dp)
        free(new)
        free(prefix)
