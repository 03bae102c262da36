/* Hot inner loops for row reduction over F_p.
 *
 * Mersenne path (p = 2^31 - 1): values are kept "semi-reduced" in
 * [0, 2^33 + 2^31); one fold  x -> (x >> 31) + (x & p)  preserves the
 * residue because 2^31 == 1 (mod p).  Multipliers are passed NEGATED
 * (p - lam, at most p), so an elimination step is an add.  Four products
 * p*(p-1) plus a semi-reduced carry stay below 2^64, so a rank-4 group
 * needs a single fold: 4*p*(p-1) + 2^33 + 2^31 < 2^64.
 *
 * Generic path (any odd prime p < 2^31): plain '%' reduction; only used
 * for small matrices.
 */

#ifndef FATPOINTS_CORE_IMPL_H
#define FATPOINTS_CORE_IMPL_H

#include <stdint.h>

#define FP_MERSENNE 2147483647ULL

static inline uint64_t fp_fold(uint64_t x) {
    return (x >> 31) + (x & FP_MERSENNE);
}

/* Full reduction of a semi-reduced value (< 2^34) into [0, p). */
static inline uint64_t fp_full(uint64_t x) {
    x = fp_fold(x);            /* < 2^31 + 8 */
    if (x >= FP_MERSENNE)
        x -= FP_MERSENNE;
    return x;
}

/* c[j] += lam * u[j]  (semi-reduced in, semi-reduced out). */
static inline void fp_axpy1(uint64_t *restrict c, const uint32_t *restrict u,
                            uint32_t lam, int64_t n) {
    int64_t j;
    for (j = 0; j < n; j++) {
        uint64_t acc = c[j] + (uint64_t)lam * u[j];
        c[j] = fp_fold(acc);
    }
}

/* Rank-8 update against eight pivot rows stored with a common stride.
 * lam entries may be zero (padding rows contribute nothing). */
static inline void fp_axpy8(uint64_t *restrict c, const uint32_t *restrict u,
                            int64_t stride, const uint32_t *restrict lam,
                            int64_t n) {
    const uint32_t l0 = lam[0], l1 = lam[1], l2 = lam[2], l3 = lam[3];
    const uint32_t l4 = lam[4], l5 = lam[5], l6 = lam[6], l7 = lam[7];
    const uint32_t *u0 = u,              *u1 = u + stride;
    const uint32_t *u2 = u + 2 * stride, *u3 = u + 3 * stride;
    const uint32_t *u4 = u + 4 * stride, *u5 = u + 5 * stride;
    const uint32_t *u6 = u + 6 * stride, *u7 = u + 7 * stride;
    int64_t j;
    for (j = 0; j < n; j++) {
        uint64_t acc = c[j] + (uint64_t)l0 * u0[j] + (uint64_t)l1 * u1[j]
                            + (uint64_t)l2 * u2[j] + (uint64_t)l3 * u3[j];
        acc = fp_fold(acc);
        acc += (uint64_t)l4 * u4[j] + (uint64_t)l5 * u5[j]
             + (uint64_t)l6 * u6[j] + (uint64_t)l7 * u7[j];
        c[j] = fp_fold(acc);
    }
}

/* Fully reduce a row in place. */
static inline void fp_reduce_row(uint64_t *restrict c, int64_t n) {
    int64_t j;
    for (j = 0; j < n; j++)
        c[j] = fp_full(c[j]);
}

/* Generic path: c[j] = (c[j] + lam * u[j]) % p, everything in [0, p). */
static inline void fp_axpy_generic(uint64_t *restrict c,
                                   const uint64_t *restrict u,
                                   uint64_t lam, uint64_t p, int64_t n) {
    int64_t j;
    for (j = 0; j < n; j++)
        c[j] = (c[j] + lam * u[j]) % p;
}

#endif
