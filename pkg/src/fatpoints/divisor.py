"""Integer arithmetic in the divisor class group of a blown-up plane.

A class ``(d; m1,...,mn)`` stands for ``d*L - m1*E1 - ... - mn*En`` on the
plane blown up at ``n`` general points, where ``L`` is the pullback of a line
and ``Ei`` are the exceptional curves.  The intersection form is diagonal
with ``L^2 = 1`` and ``Ei^2 = -1``.

Multiplicities may be negative (residual arithmetic and intermediate
reduction states need this); validity checks belong to the callers.
Operations never auto-pad: mixing classes with different ``n`` is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def binom2(x: int) -> int:
    """x choose 2, clamped to 0 for x < 2."""
    return x * (x - 1) // 2 if x >= 2 else 0


@dataclass(frozen=True)
class DivisorClass:
    """Class (d; m1,...,mn); the stored multiplicity order is positional."""

    d: int
    mult: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "mult", tuple(int(m) for m in self.mult))
        object.__setattr__(self, "d", int(self.d))

    @property
    def n(self) -> int:
        return len(self.mult)

    def pair(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def self_intersection(self) -> int:
        return intersect(self, self)

    def genus(self) -> int:
        return arithmetic_genus(self)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_n(self, other)
        return DivisorClass(self.d + other.d,
                            tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_n(self, other)
        return DivisorClass(self.d - other.d,
                            tuple(a - b for a, b in zip(self.mult, other.mult)))

    def __rmul__(self, c: int) -> "DivisorClass":
        return DivisorClass(c * self.d, tuple(c * m for m in self.mult))

    def __repr__(self):
        return f"DivisorClass({self.d}; {','.join(map(str, self.mult))})"


def _check_same_n(f: DivisorClass, g: DivisorClass) -> None:
    if f.n != g.n:
        raise ValueError(f"classes live on different blow-ups: n={f.n} vs n={g.n}")


def intersect(f: DivisorClass, g: DivisorClass) -> int:
    """Intersection number d_F*d_G - sum(m_i * n_i)."""
    _check_same_n(f, g)
    return f.d * g.d - sum(a * b for a, b in zip(f.mult, g.mult))


def canonical_class(n: int) -> DivisorClass:
    """K = -3L + E1 + ... + En, i.e. (-3; -1,...,-1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return DivisorClass(-3, (-1,) * n)


def arithmetic_genus(c: DivisorClass) -> int:
    """binom2(d-1) - sum binom2(r_i); for nonnegative classes this is p_a."""
    return binom2(c.d - 1) - sum(binom2(r) for r in c.mult)


def adjunction_genus(c: DivisorClass) -> int:
    """1 + (C^2 + K.C)/2; agrees with arithmetic_genus when all r_i >= 0."""
    k = canonical_class(c.n)
    return 1 + (intersect(c, c) + intersect(k, c)) // 2


def is_exceptional(c: DivisorClass) -> bool:
    """True iff C^2 = -1 and K.C = -1 (a (-1)-class)."""
    return intersect(c, c) == -1 and intersect(canonical_class(c.n), c) == -1


def cremona_transform(f: DivisorClass, base: Sequence[int]) -> DivisorClass:
    """Quadratic transform at three base indices.

    d' = 2d - r_i - r_j - r_k and r_i' = d - r_j - r_k (the other two base
    multiplicities); non-base multiplicities are unchanged.  Applying the
    transform twice with the same base is the identity.
    """
    i, j, k = base
    if len({i, j, k}) != 3:
        raise ValueError("base indices must be three distinct points")
    if not all(0 <= t < f.n for t in (i, j, k)):
        raise IndexError(f"base index out of range for n={f.n}")
    ri, rj, rk = f.mult[i], f.mult[j], f.mult[k]
    mult = list(f.mult)
    mult[i] = f.d - rj - rk
    mult[j] = f.d - ri - rk
    mult[k] = f.d - ri - rj
    return DivisorClass(2 * f.d - ri - rj - rk, tuple(mult))


@dataclass(frozen=True)
class ReductionResult:
    terminal: DivisorClass
    steps: tuple[tuple[int, int, int], ...]

    def replay(self) -> DivisorClass:
        """Reapply the recorded steps in reverse; recovers the input class."""
        c = self.terminal
        for base in reversed(self.steps):
            c = cremona_transform(c, base)
        return c


def _top_three(mult: Sequence[int]) -> tuple[int, int, int]:
    """Lexicographically smallest index triple realizing the three largest
    multiplicities (smallest indices win ties)."""
    order = sorted(range(len(mult)), key=lambda i: (-mult[i], i))
    return tuple(sorted(order[:3]))


def cremona_reduce(f: DivisorClass) -> ReductionResult:
    """Transform at the three largest multiplicities while d < r_i+r_j+r_k.

    Stops when no step applies, when d <= 2, or when fewer than three points
    exist.  The degree strictly decreases, so the loop terminates.
    """
    steps: list[tuple[int, int, int]] = []
    cur = f
    while cur.n >= 3 and cur.d > 2:
        base = _top_three(cur.mult)
        if cur.d >= sum(cur.mult[t] for t in base):
            break
        cur = cremona_transform(cur, base)
        steps.append(base)
    return ReductionResult(cur, tuple(steps))
