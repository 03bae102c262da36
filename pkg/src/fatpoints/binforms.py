"""Binary forms over F_p: the polynomial layer under rational-curve work.

A form of formal degree d in (s, t) is a tuple of d+1 residues, ascending
powers of t (index i is the coefficient of s^(d-i) t^i).  Leading or
trailing zeros are meaningful: the formal degree is the tuple length minus
one.

The gcd is computed through kernels of Sylvester-style coefficient
matrices (the same elimination core used everywhere else) rather than a
Euclidean remainder chain: the nullity of the Sylvester matrix gives the
gcd degree, one more kernel at the right level gives a cofactor, and an
augmented kernel performs the exact division.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import PrimeFieldMatrix

Form = tuple[int, ...]


def normalize(coeffs: Sequence[int], p: int) -> Form:
    return tuple(int(c) % p for c in coeffs)


def degree(f: Form) -> int:
    return len(f) - 1


def is_zero(f: Form) -> bool:
    return all(c == 0 for c in f)


def bf_mul(f: Form, g: Form, p: int) -> Form:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] = (out[i + j] + a * b) % p
    return tuple(out)


def bf_lincomb(coeffs: Sequence[int], forms: Sequence[Form], p: int) -> Form:
    out = [0] * len(forms[0])
    for c, f in zip(coeffs, forms):
        if len(f) != len(out):
            raise ValueError("linear combination needs equal formal degrees")
        for i, a in enumerate(f):
            out[i] = (out[i] + c * a) % p
    return tuple(out)


def bf_eval(f: Form, s0: int, t0: int, p: int) -> int:
    d = degree(f)
    acc = 0
    sp = [1] * (d + 1)
    for i in range(1, d + 1):
        sp[i] = sp[i - 1] * s0 % p
    tp = 1
    for i, c in enumerate(f):
        acc = (acc + c * sp[d - i] % p * tp) % p
        tp = tp * t0 % p
    return acc


def monic(f: Form, p: int) -> Form:
    """Scale so the first nonzero coefficient is 1 (canonical scalar)."""
    for c in f:
        if c:
            inv = pow(c, -1, p)
            return tuple(x * inv % p for x in f)
    return f


def mult_matrix(f: Form, e: int, p: int) -> PrimeFieldMatrix:
    """Coefficient matrix of multiplication by f, from forms of degree e
    to forms of degree e + deg f; columns index the multiplier."""
    df = degree(f)
    m = np.zeros((df + e + 1, e + 1), dtype=np.int64)
    for col in range(e + 1):
        for i, a in enumerate(f):
            m[col + i, col] = a
    return PrimeFieldMatrix(m, p, reduce=False)


def _syzygy_kernel(f: Form, g: Form, level: int, p: int) -> PrimeFieldMatrix:
    """Kernel of (u, v) -> u f + v g at total degree `level`; the column
    blocks are the coefficients of u then v."""
    df, dg = degree(f), degree(g)
    eu, ev = level - df, level - dg
    cols = (eu + 1) + (ev + 1)
    m = np.zeros((level + 1, cols), dtype=np.int64)
    for col in range(eu + 1):
        for i, a in enumerate(f):
            m[col + i, col] = a
    for col in range(ev + 1):
        for i, a in enumerate(g):
            m[col + i, eu + 1 + col] = a
    return PrimeFieldMatrix(m, p, reduce=False).kernel_basis()


def bf_div_exact(f: Form, g: Form, p: int) -> Form:
    """Quotient q with q*g = f; raises if g does not divide f exactly.

    Solved as the kernel of [mult-by-g | -f]: a kernel vector (q, c) with
    c != 0 gives q = q/c.
    """
    if is_zero(g):
        raise ZeroDivisionError("division by the zero form")
    dq = degree(f) - degree(g)
    if dq < 0:
        raise ValueError("quotient would have negative degree")
    mm = mult_matrix(g, dq, p)
    aug = np.zeros((f and len(f) or 0, dq + 2), dtype=np.int64)
    aug[:, :dq + 1] = mm.a.astype(np.int64)
    aug[:, dq + 1] = [(-c) % p for c in f]
    ker = PrimeFieldMatrix(aug, p, reduce=False).kernel_basis()
    for row in ker.a:
        lam = int(row[dq + 1])
        if lam:
            inv = pow(lam, -1, p)
            return tuple(int(x) * inv % p for x in row[:dq + 1])
    raise ValueError("forms are not exactly divisible")


def bf_gcd(f: Form, g: Form, p: int) -> Form:
    """Monic gcd of two binary forms (degree 0 form (1,) when coprime)."""
    if is_zero(f):
        return monic(g, p)
    if is_zero(g):
        return monic(f, p)
    df, dg = degree(f), degree(g)
    if df == 0 or dg == 0:
        return (1,)
    # nullity of the Sylvester matrix = gcd degree
    syl = _syzygy_kernel(f, g, df + dg - 1, p)
    dh = syl.rows
    if dh == 0:
        return (1,)
    # minimal syzygy (u, v) = c (g/h, -f/h): recover the cofactor of f
    ker = _syzygy_kernel(f, g, df + dg - dh, p)
    row = ker.a[0]
    eu = df + dg - dh - df
    v = tuple((-int(x)) % p for x in row[eu + 1:])
    return monic(bf_div_exact(f, v, p), p)


def bf_gcd3(f0: Form, f1: Form, f2: Form, p: int) -> Form:
    return bf_gcd(bf_gcd(f0, f1, p), f2, p)


def random_form(d: int, p: int, rng: np.random.Generator) -> Form:
    while True:
        f = tuple(int(x) for x in rng.integers(0, p, size=d + 1))
        if any(f):
            return f
