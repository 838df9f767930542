"""Compiled decoding kernels; see _core_py for the reference semantics."""

import numpy as np

cimport numpy as cnp

BACKEND = "cy"

cdef double FLOOR = 1e-30


cdef inline void _wht(double* v, Py_ssize_t q) noexcept nogil:
    cdef Py_ssize_t h = 1, base, j
    cdef double a, b
    while h < q:
        base = 0
        while base < q:
            for j in range(base, base + h):
                a = v[j]
                b = v[j + h]
                v[j] = a + b
                v[j + h] = a - b
            base += 2 * h
        h <<= 1


def wht_rows(double[:, ::1] a):
    cdef Py_ssize_t i
    for i in range(a.shape[0]):
        _wht(&a[i, 0], a.shape[1])


def check_pass(long long[::1] begin, long long[::1] end, int[::1] labels,
               int[:, ::1] mul, double[:, ::1] v2c, double[:, ::1] c2v):
    cdef Py_ssize_t n = begin.shape[0], q = v2c.shape[1]
    cdef Py_ssize_t r, s, e, d, i, b, maxd = 0
    cdef int h
    cdef double acc, x
    for r in range(n):
        if end[r] - begin[r] > maxd:
            maxd = end[r] - begin[r]
    if maxd == 0:
        return
    t_arr = np.empty((maxd, q))
    excl_arr = np.empty((maxd, q))
    suf_arr = np.empty(q)
    cdef double[:, ::1] t = t_arr
    cdef double[:, ::1] excl = excl_arr
    cdef double[::1] suf = suf_arr
    with nogil:
        for r in range(n):
            s = begin[r]
            e = end[r]
            d = e - s
            if d == 0:
                continue
            if d == 1:
                for b in range(q):
                    c2v[s, b] = 1.0 / q
                continue
            for i in range(d):
                h = labels[s + i]
                for b in range(q):
                    t[i, mul[h, b]] = v2c[s + i, b]
            for i in range(d):
                _wht(&t[i, 0], q)
            for b in range(q):
                excl[0, b] = 1.0
            for i in range(1, d):
                for b in range(q):
                    excl[i, b] = excl[i - 1, b] * t[i - 1, b]
            for b in range(q):
                suf[b] = 1.0
            for i in range(d - 2, -1, -1):
                for b in range(q):
                    suf[b] = suf[b] * t[i + 1, b]
                    excl[i, b] = excl[i, b] * suf[b]
            for i in range(d):
                _wht(&excl[i, 0], q)
            for i in range(d):
                h = labels[s + i]
                acc = 0.0
                for b in range(q):
                    x = excl[i, mul[h, b]]
                    if x < FLOOR:
                        x = FLOOR
                    c2v[s + i, b] = x
                    acc += x
                for b in range(q):
                    c2v[s + i, b] /= acc


def var_pass(long long[::1] cols, long long[::1] cbegin, long long[::1] cend,
             long long[::1] col_edge, double[:, ::1] priors,
             double[:, ::1] c2v, double[:, ::1] v2c, double[:, ::1] posteriors):
    cdef Py_ssize_t n = cols.shape[0], q = priors.shape[1]
    cdef Py_ssize_t ci, j, cs, ce, d, dd, i, k, b, eid, maxd = 0
    cdef double raw, acc, x
    for ci in range(n):
        if cend[ci] - cbegin[ci] > maxd:
            maxd = cend[ci] - cbegin[ci]
    arr_arr = np.empty((maxd + 1, q))
    excl_arr = np.empty((maxd + 1, q))
    suf_arr = np.empty(q)
    post_arr = np.empty(q)
    cdef double[:, ::1] arr = arr_arr
    cdef double[:, ::1] excl = excl_arr
    cdef double[::1] suf = suf_arr
    cdef double[::1] post = post_arr
    with nogil:
        for ci in range(n):
            j = cols[ci]
            cs = cbegin[ci]
            ce = cend[ci]
            d = ce - cs
            dd = d + 1
            for b in range(q):
                arr[0, b] = priors[j, b]
            for k in range(d):
                eid = col_edge[cs + k]
                for b in range(q):
                    arr[k + 1, b] = c2v[eid, b]
            for b in range(q):
                excl[0, b] = 1.0
            for i in range(1, dd):
                for b in range(q):
                    excl[i, b] = excl[i - 1, b] * arr[i - 1, b]
            for b in range(q):
                suf[b] = 1.0
            for i in range(dd - 2, -1, -1):
                for b in range(q):
                    suf[b] = suf[b] * arr[i + 1, b]
                    excl[i, b] = excl[i, b] * suf[b]
            for b in range(q):
                post[b] = excl[0, b] * arr[0, b]
            for k in range(d):
                eid = col_edge[cs + k]
                raw = 0.0
                for b in range(q):
                    raw += excl[k + 1, b]
                acc = 0.0
                if raw == 0.0:
                    for b in range(q):
                        x = priors[j, b]
                        if x < FLOOR:
                            x = FLOOR
                        v2c[eid, b] = x
                        acc += x
                else:
                    for b in range(q):
                        x = excl[k + 1, b]
                        if x < FLOOR:
                            x = FLOOR
                        v2c[eid, b] = x
                        acc += x
                for b in range(q):
                    v2c[eid, b] /= acc
            raw = 0.0
            for b in range(q):
                raw += post[b]
            acc = 0.0
            if raw == 0.0:
                for b in range(q):
                    x = priors[j, b]
                    if x < FLOOR:
                        x = FLOOR
                    posteriors[j, b] = x
                    acc += x
            else:
                for b in range(q):
                    x = post[b]
                    if x < FLOOR:
                        x = FLOOR
                    posteriors[j, b] = x
                    acc += x
            for b in range(q):
                posteriors[j, b] /= acc


def decide(long long[::1] cols, double[:, ::1] posteriors, int[::1] hard):
    cdef Py_ssize_t n = cols.shape[0], q = posteriors.shape[1]
    cdef Py_ssize_t ci, j, b, bi
    cdef double best, total = 0.0
    with nogil:
        for ci in range(n):
            j = cols[ci]
            best = posteriors[j, 0]
            bi = 0
            for b in range(1, q):
                if posteriors[j, b] > best:
                    best = posteriors[j, b]
                    bi = b
            hard[j] = bi
            total += 1.0 - best
    return total


def syndrome_count(long long[::1] begin, long long[::1] end,
                   long long[::1] col_idx, int[::1] labels,
                   int[:, ::1] mul, int[::1] hard):
    cdef Py_ssize_t n = begin.shape[0], r, k
    cdef long long bad = 0
    cdef int syn
    with nogil:
        for r in range(n):
            syn = 0
            for k in range(begin[r], end[r]):
                syn ^= mul[labels[k], hard[col_idx[k]]]
            if syn != 0:
                bad += 1
    return bad
