# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled table kernels: the hot sweep loops behind the table engines.

Mirrors boomtab.kernels._fallback function by function; both backends
must return bit-identical arrays.
"""

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.string cimport memset

ctypedef cnp.uint32_t u32
ctypedef cnp.int64_t i64
ctypedef cnp.uint16_t u16


cdef inline Py_ssize_t _order(u32[::1] lut):
    return lut.shape[0]


# ----------------------------------------------------------------------
# DDT
# ----------------------------------------------------------------------

def ddt_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x ^ a] ^ lut[x]) == <u32>b:
                cnt += 1
    return cnt


def ddt_row(u32[::1] lut, Py_ssize_t a):
    cdef Py_ssize_t q = _order(lut), x
    out_arr = np.zeros(q, dtype=np.int64)
    cdef i64[::1] out = out_arr
    with nogil:
        for x in range(q):
            out[lut[x ^ a] ^ lut[x]] += 1
    return out_arr


def ddt_full(u32[::1] lut):
    cdef Py_ssize_t q = _order(lut), a, x
    out_arr = np.zeros((q, q), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    with nogil:
        for a in range(q):
            for x in range(q):
                out[a, lut[x ^ a] ^ lut[x]] += 1
    return out_arr


# ----------------------------------------------------------------------
# BCT
# ----------------------------------------------------------------------

def bct_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t q = _order(lut), x, y
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            for y in range(q):
                if (lut[x] ^ lut[y]) == <u32>b and \
                        (lut[x ^ a] ^ lut[y ^ a]) == <u32>b:
                    cnt += 1
    return cnt


cdef void _pair_scatter(u32[::1] g, Py_ssize_t q, i64 *acc, bint key_by_value) nogil:
    # group X by g[X] with a counting sort, then scatter all ordered
    # in-class pairs: acc[(x^y)*q + g[x]] or acc[x^y] per key_by_value.
    cdef Py_ssize_t *cnt = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef Py_ssize_t *off = <Py_ssize_t *> malloc((q + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *bucket = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef Py_ssize_t x, v, i, j, s, e
    memset(cnt, 0, q * sizeof(Py_ssize_t))
    for x in range(q):
        cnt[g[x]] += 1
    off[0] = 0
    for v in range(q):
        off[v + 1] = off[v] + cnt[v]
        cnt[v] = 0
    for x in range(q):
        v = g[x]
        bucket[off[v] + cnt[v]] = x
        cnt[v] += 1
    for v in range(q):
        s = off[v]
        e = off[v + 1]
        if key_by_value:
            for i in range(s, e):
                for j in range(s, e):
                    acc[(bucket[i] ^ bucket[j]) * q + v] += 1
        else:
            for i in range(s, e):
                for j in range(s, e):
                    acc[bucket[i] ^ bucket[j]] += 1
    free(cnt)
    free(off)
    free(bucket)


def bct_full(u32[::1] lut):
    cdef Py_ssize_t q = _order(lut), w, x
    out_arr = np.zeros((q, q), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    g_arr = np.empty(q, dtype=np.uint32)
    cdef u32[::1] g = g_arr
    with nogil:
        for w in range(q):
            for x in range(q):
                g[x] = lut[x ^ w] ^ lut[x]
            _pair_scatter(g, q, &out[0, 0], True)
    return out_arr


# ----------------------------------------------------------------------
# FBCT / DD
# ----------------------------------------------------------------------

def fbct_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x ^ a ^ b] ^ lut[x ^ b] ^ lut[x ^ a] ^ lut[x]) == 0:
                cnt += 1
    return cnt


def fbct_full(u32[::1] lut):
    cdef Py_ssize_t q = _order(lut), a, x
    out_arr = np.zeros((q, q), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    g_arr = np.empty(q, dtype=np.uint32)
    cdef u32[::1] g = g_arr
    with nogil:
        for a in range(q):
            for x in range(q):
                g[x] = lut[x ^ a] ^ lut[x]
            _pair_scatter(g, q, &out[a, 0], False)
    return out_arr


def dd_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x ^ a ^ b] ^ lut[x ^ b] ^ lut[x ^ a] ^ lut[x]) == <u32>c:
                cnt += 1
    return cnt


def dd_full(u32[::1] lut):
    cdef Py_ssize_t q = _order(lut), a, b, x
    out_arr = np.zeros((q, q, q), dtype=np.int64)
    cdef i64[:, :, ::1] out = out_arr
    with nogil:
        for a in range(q):
            for b in range(q):
                for x in range(q):
                    out[a, b, lut[x ^ a ^ b] ^ lut[x ^ b] ^ lut[x ^ a] ^ lut[x]] += 1
    return out_arr


# ----------------------------------------------------------------------
# LBCT
# ----------------------------------------------------------------------

def lbct_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ b]) == <u32>c and \
                    (lut[x ^ a] ^ lut[x ^ a ^ b]) == <u32>c:
                cnt += 1
    return cnt


def lbct_full(u32[::1] lut):
    cdef Py_ssize_t q = _order(lut), a, b, x
    cdef u32 c
    out_arr = np.zeros((q, q, q), dtype=np.int64)
    cdef i64[:, :, ::1] out = out_arr
    with nogil:
        for a in range(q):
            for b in range(q):
                for x in range(q):
                    c = lut[x] ^ lut[x ^ b]
                    if (lut[x ^ a] ^ lut[x ^ a ^ b]) == c:
                        out[a, b, c] += 1
    return out_arr


# ----------------------------------------------------------------------
# UBCT
# ----------------------------------------------------------------------

def ubct_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x, i, j, ns = 0
    cdef i64 cnt = 0
    cdef Py_ssize_t *sols
    cdef unsigned char *img
    if a == 0:
        if b != 0:
            return 0
        img = <unsigned char *> malloc(q)
        memset(img, 0, q)
        with nogil:
            for x in range(q):
                img[lut[x]] = 1
            for x in range(q):
                if img[lut[x] ^ <u32>c]:
                    cnt += 1
        free(img)
        return cnt
    sols = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    img = <unsigned char *> malloc(q)
    memset(img, 0, q)
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ a]) == <u32>b:
                sols[ns] = x
                img[lut[x]] = 1
                ns += 1
        for i in range(ns):
            if img[lut[sols[i]] ^ <u32>c]:
                cnt += 1
    free(sols)
    free(img)
    return cnt


def ubct_entry_pairs(u32[::1] lut, Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x, y
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ a]) != <u32>b:
                continue
            for y in range(q):
                if (lut[x] ^ lut[y]) == <u32>c and \
                        (lut[x ^ a] ^ lut[y ^ a]) == <u32>c:
                    cnt += 1
    return cnt


def ubct_full(u32[::1] lut, Py_ssize_t a_lo, Py_ssize_t a_hi):
    cdef Py_ssize_t q = _order(lut), a, x, y, k, nseen
    out_arr = np.zeros((a_hi - a_lo, q, q), dtype=np.int64)
    cdef i64[:, :, ::1] out = out_arr
    cdef unsigned char *seen = <unsigned char *> malloc(q)
    cdef Py_ssize_t *stack = <Py_ssize_t *> malloc(q * sizeof(Py_ssize_t))
    cdef u32 cval, bval
    memset(seen, 0, q)
    with nogil:
        for a in range(a_lo, a_hi):
            for x in range(q):
                bval = lut[x] ^ lut[x ^ a]
                nseen = 0
                for y in range(q):
                    cval = lut[x] ^ lut[y]
                    if (lut[x ^ a] ^ lut[y ^ a]) == cval and not seen[cval]:
                        seen[cval] = 1
                        stack[nseen] = cval
                        nseen += 1
                for k in range(nseen):
                    out[a - a_lo, bval, stack[k]] += 1
                    seen[stack[k]] = 0
    free(seen)
    free(stack)
    return out_arr


# ----------------------------------------------------------------------
# EBCT
# ----------------------------------------------------------------------

def ebct_entry(u32[::1] lut, Py_ssize_t a, Py_ssize_t b, Py_ssize_t c, Py_ssize_t d):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ a]) == <u32>b and \
                    (lut[x] ^ lut[x ^ c]) == <u32>d and \
                    (lut[x ^ a ^ c] ^ lut[x ^ a]) == <u32>d:
                cnt += 1
    return cnt


def ebct_full(u32[::1] lut, Py_ssize_t a_lo, Py_ssize_t a_hi):
    cdef Py_ssize_t q = _order(lut), a, c, x
    cdef u32 bval, dval
    out_arr = np.zeros((a_hi - a_lo, q, q, q), dtype=np.uint16)
    cdef u16[:, :, :, ::1] out = out_arr
    with nogil:
        for a in range(a_lo, a_hi):
            for c in range(q):
                for x in range(q):
                    dval = lut[x] ^ lut[x ^ c]
                    if (lut[x ^ a ^ c] ^ lut[x ^ a]) == dval:
                        bval = lut[x] ^ lut[x ^ a]
                        out[a - a_lo, bval, c, dval] += 1
    return out_arr


# ----------------------------------------------------------------------
# Inverse-based definitions (cross-check path for permutations)
# ----------------------------------------------------------------------

def ubct_entry_invbased(u32[::1] lut, u32[::1] inv,
                        Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ a]) == <u32>b and \
                    (inv[lut[x] ^ <u32>c] ^ inv[lut[x ^ a] ^ <u32>c]) == <u32>a:
                cnt += 1
    return cnt


def lbct_entry_invbased(u32[::1] lut, u32[::1] inv,
                        Py_ssize_t a, Py_ssize_t b, Py_ssize_t c):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ b]) == <u32>c and \
                    (inv[lut[x] ^ <u32>c] ^ inv[lut[x ^ a] ^ <u32>c]) == <u32>a:
                cnt += 1
    return cnt


def ebct_entry_invbased(u32[::1] lut, u32[::1] inv,
                        Py_ssize_t a, Py_ssize_t b, Py_ssize_t c, Py_ssize_t d):
    cdef Py_ssize_t q = _order(lut), x
    cdef i64 cnt = 0
    with nogil:
        for x in range(q):
            if (lut[x] ^ lut[x ^ a]) == <u32>b and \
                    (lut[x] ^ lut[x ^ c]) == <u32>d and \
                    (inv[lut[x] ^ <u32>d] ^ inv[lut[x ^ a] ^ <u32>d]) == <u32>a:
                cnt += 1
    return cnt
