"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy uint64 arrays of residues in [0, p) with p prime and
p <= 2^31 - 1.  The elimination kernel is a compiled extension when
available (``fatpoints._core``); otherwise a pure numpy fallback with the
same contract is selected at import.  Set FATPOINTS_PURE_PYTHON=1 to force
the fallback.  Both give bit-identical echelon forms, so either backend can
be used to cross-check the other (see benchmarks/bench_linalg.py).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import _core_py

MERSENNE31 = 2**31 - 1
MAX_PRIME = MERSENNE31

if os.environ.get("FATPOINTS_PURE_PYTHON"):
    _core = _core_py
else:
    try:
        from . import _core  # type: ignore[attr-defined]
    except ImportError:
        _core = _core_py


def backend_name() -> str:
    return _core.backend_name


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit inputs."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_modulus(p: int) -> int:
    p = int(p)
    if not 2 <= p <= MAX_PRIME:
        raise ValueError(f"modulus must be a prime in [2, {MAX_PRIME}]: {p}")
    if not is_prime(p):
        raise ValueError(f"modulus is not prime: {p}")
    return p


class PrimeFieldMatrix:
    """Dense matrix over F_p with rank and kernel-basis extraction."""

    __slots__ = ("p", "a")

    def __init__(self, entries, p: int, reduce: bool = True):
        self.p = check_modulus(p)
        a = np.array(entries, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError("matrix entries must be 2-dimensional")
        if reduce:
            a %= p
        self.a = a.astype(np.uint64)

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "PrimeFieldMatrix":
        obj = cls.__new__(cls)
        obj.p = p
        obj.a = arr
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "PrimeFieldMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.uint64),
                         check_modulus(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "PrimeFieldMatrix":
        return cls._wrap(np.eye(n, dtype=np.uint64), check_modulus(p))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def copy(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix._wrap(self.a.copy(), self.p)

    def rank(self) -> int:
        work = np.ascontiguousarray(self.a.copy())
        r, _ = _core.echelon(work, self.p)
        return r

    def row_reduce(self) -> tuple["PrimeFieldMatrix", int, list[int]]:
        """Return (echelon form, rank, pivot columns); self is unchanged."""
        work = np.ascontiguousarray(self.a.copy())
        r, pivots = _core.echelon(work, self.p)
        return PrimeFieldMatrix._wrap(work, self.p), r, list(pivots)

    def kernel_basis(self) -> "PrimeFieldMatrix":
        """Rows span {x : M . x^T = 0}; cols - rank independent vectors."""
        ech, r, pivots = self.row_reduce()
        free = sorted(set(range(self.cols)) - set(pivots))
        basis = _core.kernel_backsolve(ech.a, self.p, pivots, free)
        return PrimeFieldMatrix._wrap(basis, self.p)

    def mat_vec(self, v: Sequence[int]) -> np.ndarray:
        """M . v^T over F_p (for verification; not a hot path)."""
        vv = np.asarray(v, dtype=np.uint64) % np.uint64(self.p)
        terms = (self.a * vv[None, :]) % np.uint64(self.p)
        return terms.sum(axis=1, dtype=np.uint64) % np.uint64(self.p)

    def dump(self, fh: TextIO) -> None:
        """Debug format: 'rows cols p' header, then row-major integers."""
        fh.write(f"{self.rows} {self.cols} {self.p}\n")
        for row in self.a:
            fh.write(" ".join(str(int(x)) for x in row) + "\n")

    @classmethod
    def load(cls, fh: TextIO) -> "PrimeFieldMatrix":
        head = fh.readline().split()
        rows, cols, p = int(head[0]), int(head[1]), int(head[2])
        data = np.loadtxt(fh, dtype=np.int64, ndmin=2)
        data = data.reshape(rows, cols)
        return cls(data, p, reduce=False)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PrimeFieldMatrix) and self.p == other.p
                and self.a.shape == other.a.shape
                and bool(np.array_equal(self.a, other.a)))

    def __repr__(self):
        return f"PrimeFieldMatrix({self.rows}x{self.cols} mod {self.p})"


def rank(m: PrimeFieldMatrix) -> int:
    return m.rank()


def kernel_basis(m: PrimeFieldMatrix) -> PrimeFieldMatrix:
    return m.kernel_basis()
