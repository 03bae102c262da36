"""Pure numpy fallback for the row-reduction core.

Same contract and bit-identical results as the compiled module: the pivot
choice (first nonzero in the current column) and exact arithmetic make the
echelon form independent of the update schedule.  Kept deliberately simple;
the compiled core is the fast path.
"""

from __future__ import annotations

import numpy as np

backend_name = "fallback"


def echelon(mat: np.ndarray, p: int) -> tuple[int, list[int]]:
    """Row echelon form in place; returns (rank, pivot_cols).

    Entries must be uint64 residues in [0, p) with p < 2^31, so every
    intermediate product below stays under 2^63.
    """
    m, n = mat.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(mat[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            mat[[r, i]] = mat[[i, r]]
        inv = pow(int(mat[r, c]), -1, p)
        below = np.nonzero(mat[r + 1:, c])[0] + r + 1
        if below.size:
            lam = (mat[below, c] * np.uint64(inv)) % np.uint64(p)
            neg = (np.uint64(p) - lam) % np.uint64(p)
            block = mat[below, c:]
            block += neg[:, None] * mat[r, c:]
            block %= np.uint64(p)
            mat[below, c:] = block
            mat[below, c] = 0
        pivots.append(c)
        r += 1
    return r, pivots


def kernel_backsolve(ech: np.ndarray, p: int, pivot_cols, free_cols
                     ) -> np.ndarray:
    """Kernel basis from an echelon form: one row per free column."""
    P = np.asarray(pivot_cols, dtype=np.int64)
    F = np.asarray(free_cols, dtype=np.int64)
    r, f = len(P), len(F)
    n = ech.shape[1]
    up = np.uint64(p)
    X = np.zeros((r, f), dtype=np.uint64)
    for i in range(r - 1, -1, -1):
        acc = ech[i, F].copy()
        if i + 1 < r:
            coeffs = ech[i, P[i + 1:]]
            # products < p^2 < 2^62; reduce each term before the sum so the
            # 64-bit accumulator cannot overflow
            terms = (coeffs[:, None] * X[i + 1:, :]) % up
            acc = (acc + terms.sum(axis=0, dtype=np.uint64)) % up
        inv = pow(int(ech[i, P[i]]), -1, p)
        X[i] = ((up - acc % up) % up * np.uint64(inv)) % up
    out = np.zeros((f, n), dtype=np.uint64)
    for j in range(f):
        out[j, F[j]] = 1
    if r:
        out[:, P] = X.T
    return out
