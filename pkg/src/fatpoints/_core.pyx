# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row-reduction core over F_p.

`echelon` reduces a uint64 matrix (entries already in [0, p)) to row
echelon form in place and returns (rank, pivot column list).  For the
Mersenne prime 2^31 - 1 a blocked panel elimination with fused rank-8
updates is used (see _core_impl.h); any other odd prime < 2^31 takes an
unblocked path with '%' reduction.

The results are bit-identical to the pure-Python fallback: pivot choice
(first nonzero in the current column) and the exact arithmetic do not
depend on the update schedule.
"""

import numpy as np

from libc.stdint cimport int64_t, uint32_t, uint64_t
from libc.string cimport memcpy

cdef extern from "_core_impl.h":
    cdef uint64_t FP_MERSENNE
    uint64_t fp_fold(uint64_t x) nogil
    uint64_t fp_full(uint64_t x) nogil
    void fp_axpy1(uint64_t *c, const uint32_t *u, uint32_t lam, int64_t n) nogil
    void fp_axpy8(uint64_t *c, const uint32_t *u, int64_t stride,
                  const uint32_t *lam, int64_t n) nogil
    void fp_reduce_row(uint64_t *c, int64_t n) nogil
    void fp_axpy_generic(uint64_t *c, const uint64_t *u, uint64_t lam,
                         uint64_t p, int64_t n) nogil

DEF PANEL = 64

backend_name = "compiled"


cdef inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) nogil:
    return (a * b) % p          # safe: a, b < 2^31


cdef uint64_t modinv(uint64_t a, uint64_t p) nogil:
    cdef uint64_t result = 1
    cdef uint64_t base = a % p
    cdef uint64_t e = p - 2
    while e:
        if e & 1:
            result = mulmod(result, base, p)
        base = mulmod(base, base, p)
        e >>= 1
    return result


cdef void _swap_rows(uint64_t[:, ::1] M, uint32_t[:, ::1] L,
                     int64_t i, int64_t j, int64_t n) nogil:
    cdef int64_t t
    cdef uint64_t tmp
    cdef uint32_t tl
    if i == j:
        return
    for t in range(n):
        tmp = M[i, t]; M[i, t] = M[j, t]; M[j, t] = tmp
    for t in range(PANEL):
        tl = L[i, t]; L[i, t] = L[j, t]; L[j, t] = tl


def echelon(mat, p):
    """Row echelon form in place; returns (rank, pivot_cols)."""
    cdef uint64_t pp = p
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0, []
    if pp == FP_MERSENNE:
        return _echelon_mersenne(mat)
    return _echelon_generic(mat, pp)


def _echelon_mersenne(uint64_t[:, ::1] M):
    cdef int64_t m = M.shape[0]
    cdef int64_t n = M.shape[1]
    cdef int64_t r = 0, c0 = 0, c1, cc, i, t, t2, g, npiv, ntrail, width, pad
    cdef int64_t piv_row
    cdef uint64_t v, inv, lam
    cdef uint32_t nlam

    lbuf_arr = np.zeros((m, PANEL), dtype=np.uint32)
    ubuf_arr = np.zeros((PANEL, n), dtype=np.uint32)
    pcol_arr = np.zeros(PANEL, dtype=np.int64)
    seg_arr = np.zeros(PANEL, dtype=np.uint32)
    cdef uint32_t[:, ::1] L = lbuf_arr
    cdef uint32_t[:, ::1] U = ubuf_arr
    cdef int64_t[::1] pcol = pcol_arr
    cdef uint32_t[::1] seg = seg_arr

    pivots = []
    with nogil:
        while c0 < n and r < m:
            c1 = min(c0 + PANEL, n)
            npiv = 0
            for cc in range(c0, c1):
                # full-reduce the column below the cursor, find the pivot
                piv_row = -1
                for i in range(r, m):
                    v = fp_full(M[i, cc])
                    M[i, cc] = v
                    if v != 0 and piv_row < 0:
                        piv_row = i
                if piv_row < 0:
                    continue
                _swap_rows(M, L, r, piv_row, n)
                # finalize the pivot row inside the panel, stash a u32 copy
                width = c1 - cc - 1
                for t in range(width):
                    v = fp_full(M[r, cc + 1 + t])
                    M[r, cc + 1 + t] = v
                    seg[t] = <uint32_t>v
                inv = modinv(fp_full(M[r, cc]), FP_MERSENNE)
                for i in range(r + 1, m):
                    v = fp_full(M[i, cc])
                    M[i, cc] = 0
                    if v == 0:
                        L[i, npiv] = 0
                        continue
                    # store the NEGATED multiplier p - lam: every later
                    # update is then an add, including the rank-8 kernel
                    lam = FP_MERSENNE - mulmod(v, inv, FP_MERSENNE)
                    L[i, npiv] = <uint32_t>lam
                    if width > 0:
                        fp_axpy1(&M[i, cc + 1], &seg[0], <uint32_t>lam, width)
                pcol[npiv] = cc
                npiv += 1
                r += 1
            if npiv == 0:
                c0 = c1
                continue
            ntrail = n - c1
            if ntrail > 0:
                # triangular update among the panel's pivot rows, then copy
                for t in range(npiv):
                    i = r - npiv + t
                    for t2 in range(t):
                        lam = L[i, t2]
                        if lam:
                            fp_axpy1(&M[i, c1], &U[t2, 0],
                                     <uint32_t>lam, ntrail)
                    for t2 in range(ntrail):
                        v = fp_full(M[i, c1 + t2])
                        M[i, c1 + t2] = v
                        U[t, t2] = <uint32_t>v
                # zero-pad multipliers to a multiple of 8 rows
                pad = ((npiv + 7) // 8) * 8
                for i in range(r, m):
                    for t in range(npiv, pad):
                        L[i, t] = 0
                for i in range(r, m):
                    g = 0
                    while g < npiv:
                        fp_axpy8(&M[i, c1], &U[g, 0], n, &L[i, g], ntrail)
                        g += 8
            with gil:
                for t in range(npiv):
                    pivots.append(pcol[t])
            c0 = c1
    return r, pivots


def _echelon_generic(uint64_t[:, ::1] M, uint64_t p):
    cdef int64_t m = M.shape[0]
    cdef int64_t n = M.shape[1]
    cdef int64_t r = 0, c, i, piv_row
    cdef uint64_t v, inv, lam
    pivots = []
    with nogil:
        for c in range(n):
            if r >= m:
                break
            piv_row = -1
            for i in range(r, m):
                if M[i, c] != 0:
                    piv_row = i
                    break
            if piv_row < 0:
                continue
            if piv_row != r:
                for i in range(n):
                    v = M[r, i]; M[r, i] = M[piv_row, i]; M[piv_row, i] = v
            inv = modinv(M[r, c], p)
            for i in range(r + 1, m):
                v = M[i, c]
                if v == 0:
                    continue
                lam = mulmod(v, inv, p)
                M[i, c] = 0
                if c + 1 < n:
                    fp_axpy_generic(&M[i, c + 1], &M[r, c + 1],
                                    p - lam, p, n - c - 1)
            with gil:
                pivots.append(c)
            r += 1
    return r, pivots


def kernel_backsolve(uint64_t[:, ::1] E, p, pivot_cols, free_cols):
    """Kernel basis from an echelon form: one row per free column."""
    cdef uint64_t pp = p
    cdef int64_t r = len(pivot_cols)
    cdef int64_t f = len(free_cols)
    cdef int64_t n = E.shape[1]
    cdef int64_t i, i2, j
    cdef uint64_t e, a, inv
    cdef bint mersenne = (pp == FP_MERSENNE)

    piv_arr = np.asarray(pivot_cols, dtype=np.int64)
    free_arr = np.asarray(free_cols, dtype=np.int64)
    x_arr = np.zeros((r, f), dtype=np.uint64)
    acc_arr = np.zeros(f, dtype=np.uint64)
    cdef int64_t[::1] P = piv_arr
    cdef int64_t[::1] F = free_arr
    cdef uint64_t[:, ::1] X = x_arr
    cdef uint64_t[::1] acc = acc_arr

    with nogil:
        for i in range(r - 1, -1, -1):
            for j in range(f):
                acc[j] = E[i, F[j]]
            for i2 in range(i + 1, r):
                e = E[i, P[i2]]
                if e == 0:
                    continue
                if mersenne:
                    for j in range(f):
                        acc[j] = fp_fold(acc[j] + e * X[i2, j])
                else:
                    for j in range(f):
                        acc[j] = (acc[j] + e * X[i2, j]) % pp
            inv = modinv(E[i, P[i]], pp)
            for j in range(f):
                a = fp_full(acc[j]) if mersenne else acc[j]
                X[i, j] = mulmod((pp - a) % pp, inv, pp)

    out = np.zeros((f, n), dtype=np.uint64)
    for j in range(f):
        out[j, free_arr[j]] = 1
    if r:
        out[:, piv_arr] = x_arr.T
    return out
