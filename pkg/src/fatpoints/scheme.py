"""Closed-form bookkeeping for fat point schemes at general points.

A scheme ``Z(m1,...,mn)`` is just its multiplicity vector; the points stay
abstract until the oracle instantiates them over a prime field.  Everything
here is exact integer arithmetic on lengths; none of it needs point
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Union

from .divisor import DivisorClass, binom2

if TYPE_CHECKING:
    from .curves import Parametrization


@dataclass(frozen=True)
class FatPointScheme:
    """Multiplicity vector (m_i >= 0) at n general points."""

    mult: tuple[int, ...] = ()

    def __post_init__(self):
        m = tuple(int(x) for x in self.mult)
        if any(x < 0 for x in m):
            raise ValueError(f"multiplicities must be nonnegative: {m}")
        object.__setattr__(self, "mult", m)

    @property
    def n(self) -> int:
        return len(self.mult)

    def length(self) -> int:
        return length(self)

    def __repr__(self):
        return f"FatPointScheme({','.join(map(str, self.mult))})"


@dataclass(frozen=True)
class CurveData:
    """A candidate curve: strict-transform class, optional splitting type
    (a, b) with a <= b and a + b = d, optional parametrization."""

    cls: DivisorClass
    split: tuple[int, int] | None = None
    param: "Parametrization | None" = None

    def __post_init__(self):
        if self.split is not None:
            a, b = self.split
            if a > b:
                raise ValueError(f"splitting type needs a <= b, got ({a},{b})")
            if a + b != self.cls.d:
                raise ValueError(
                    f"splitting type ({a},{b}) does not sum to degree {self.cls.d}")
            object.__setattr__(self, "split", (int(a), int(b)))


CurveLike = Union[CurveData, DivisorClass]


def curve_class(c: CurveLike) -> DivisorClass:
    return c.cls if isinstance(c, CurveData) else c


def length(z: FatPointScheme) -> int:
    """l(Z) = sum binom2(m_i + 1)."""
    return sum(binom2(m + 1) for m in z.mult)


def shgh_hilbert(z: FatPointScheme, k: int) -> int:
    """Quasi-uniform expected value max(0, binom2(k+2) - l(Z)).

    This is a prediction; for non-quasi-uniform Z the oracle supplies the
    actual value.
    """
    if k < 0:
        raise ValueError("degree must be >= 0")
    return max(0, binom2(k + 2) - length(z))


def shgh_alpha(z: FatPointScheme) -> int:
    """Predicted initial degree: least k with binom2(k+2) > l(Z)."""
    k = 0
    while binom2(k + 2) <= length(z):
        k += 1
    return k


def shgh_tau(z: FatPointScheme) -> int:
    """Predicted least degree with vanishing h^1: least k with
    binom2(k+2) >= l(Z)."""
    k = 0
    while binom2(k + 2) < length(z):
        k += 1
    return k


@dataclass(frozen=True)
class ExpectedCokernel:
    """Expected cokernel of the multiplication map in degree k (valid when
    h^1 of the ideal sheaf vanishes in degree k)."""

    value: int
    exp_onto: bool
    exp_inj: bool

    @property
    def exp_bijective(self) -> bool:
        return self.exp_onto and self.exp_inj


def exp_cok_mu(z: FatPointScheme, k: int) -> ExpectedCokernel:
    """max(0, 2l(Z) - k(k+2)) plus the expected-rank classification.

    The caller is responsible for h^1(I_Z(k)) = 0 (check via the oracle when
    in doubt); without it the dimension count is meaningless.
    """
    gap = 2 * length(z) - k * (k + 2)
    return ExpectedCokernel(max(0, gap), exp_onto=gap <= 0, exp_inj=gap >= 0)


def intersection_length(z: FatPointScheme, c: CurveLike) -> int:
    """Length of the scheme intersection Z with a curve of multiplicities r_i.

    Per point: binom2(m+1) - binom2(max(m-r,0)+1); the second term drops
    when r >= m (the whole fat point lies on the curve).
    """
    r = curve_class(c).mult
    _check_same_n(z, r)
    return sum(binom2(m + 1) - binom2(max(m - ri, 0) + 1)
               for m, ri in zip(z.mult, r))


def strict_transform_pairing(z: FatPointScheme, c: CurveLike) -> int:
    """Intersection of the pulled-back scheme with the strict transform:
    sum r_i * m_i."""
    r = curve_class(c).mult
    _check_same_n(z, r)
    return sum(ri * m for m, ri in zip(z.mult, r))


def residual(z: FatPointScheme, c: CurveLike, h: int = 1
             ) -> tuple[FatPointScheme, bool]:
    """h-iterated residual scheme: multiplicities max(m_i - h*r_i, 0).

    Returns (scheme, clamped); ``clamped`` reports whether any multiplicity
    was cut off at zero, in which case downstream closed forms that assume
    m_i >= h*r_i no longer apply verbatim.
    """
    if h < 0:
        raise ValueError("iteration count must be >= 0")
    r = curve_class(c).mult
    _check_same_n(z, r)
    raw = [m - h * ri for m, ri in zip(z.mult, r)]
    clamped = any(x < 0 for x in raw)
    return FatPointScheme(tuple(max(x, 0) for x in raw)), clamped


def _check_same_n(z: FatPointScheme, r: tuple[int, ...]) -> None:
    if z.n != len(r):
        raise ValueError(
            f"scheme has {z.n} points but curve class has {len(r)}")
