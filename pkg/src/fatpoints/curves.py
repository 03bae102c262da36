"""Rational plane curves: parametrizations, splitting types, Cremona lifts.

A parametrization is a coprime triple of degree-d binary forms over F_p,
the normalization map P^1 -> P^2 of the image curve.  The splitting type
(a, b), a + b = d, of the pulled-back twisted cotangent bundle on the
normalization is read off the syzygies of the triple: a is the least
degree t at which (g0, g1, g2) with sum g_i f_i = 0 exists, and the kernel
dimension at every level t must match max(0, t-a+1) + max(0, t-b+1).

Curves in a prescribed class are built by reducing the class with quadratic
transforms to a line/conic class, realizing that on random points, and
replaying the transforms in reverse; each replay conjugates the standard
quadratic involution (x1 x2, x0 x2, x0 x1) by a projectivity moving the
coordinate triangle onto the current base points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import binforms as bf
from .divisor import DivisorClass, cremona_reduce, cremona_transform
from .linalg import PrimeFieldMatrix, check_modulus

Point = tuple[int, int, int]


class ConstructionError(RuntimeError):
    pass


class ContractionError(ValueError):
    pass


@dataclass(frozen=True)
class Parametrization:
    """Coprime triple of degree-d binary forms over F_p (d >= 1)."""

    p: int
    forms: tuple[bf.Form, bf.Form, bf.Form]

    def __post_init__(self):
        check_modulus(self.p)
        f0, f1, f2 = self.forms
        if not (len(f0) == len(f1) == len(f2)):
            raise ValueError("the three forms must share a formal degree")
        if len(f0) < 2:
            raise ValueError("parametrization degree must be >= 1")
        if all(bf.is_zero(f) for f in self.forms):
            raise ValueError("parametrization cannot be identically zero")
        object.__setattr__(
            self, "forms",
            tuple(bf.normalize(f, self.p) for f in self.forms))

    @property
    def degree(self) -> int:
        return bf.degree(self.forms[0])

    def is_coprime(self) -> bool:
        return bf.degree(bf.bf_gcd3(*self.forms, self.p)) == 0

    def __call__(self, s0: int, t0: int) -> Point:
        return tuple(bf.bf_eval(f, s0, t0, self.p) for f in self.forms)


@dataclass(frozen=True)
class SplittingType:
    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError(f"splitting type needs a <= b: ({self.a},{self.b})")

    @property
    def gap(self) -> int:
        return self.b - self.a

    def as_pair(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True)
class SplittingBounds:
    """Range for a from the degree and the largest multiplicity."""

    lo: int
    hi: int
    determined: bool
    forced: SplittingType | None


def splitting_bounds(d: int, m: int) -> SplittingBounds:
    """min(m, d-m) <= a <= d-m; the type is forced to
    (min(m,d-m), max(m,d-m)) when d-m <= m+1."""
    if not 0 <= m <= d:
        raise ValueError(f"need 0 <= m <= d, got m={m}, d={d}")
    lo, hi = min(m, d - m), d - m
    if d - m <= m + 1:
        t = SplittingType(min(m, d - m), max(m, d - m))
        return SplittingBounds(lo, hi, True, t)
    return SplittingBounds(lo, hi, False, None)


def _syzygy_nullity(phi: Parametrization, t: int) -> int:
    d, p = phi.degree, phi.p
    rows, cols = t + d + 1, 3 * (t + 1)
    m = np.zeros((rows, cols), dtype=np.int64)
    for blk, f in enumerate(phi.forms):
        for col in range(t + 1):
            for i, c in enumerate(f):
                m[col + i, blk * (t + 1) + col] = c
    return cols - PrimeFieldMatrix(m, p, reduce=False).rank()


def splitting_type(phi: Parametrization) -> SplittingType:
    """Syzygy-degree scan; checks the kernel-dimension profile at every
    level 0..d, not just the first jump."""
    if not phi.is_coprime():
        raise ValueError("forms are not coprime; the scan would report a "
                         "spurious syzygy")
    d = phi.degree
    a = None
    dims = []
    for t in range(d + 1):
        dims.append(_syzygy_nullity(phi, t))
        if a is None and dims[-1] > 0:
            a = t
    if a is None:
        raise RuntimeError("no syzygy up to degree d; invalid parametrization")
    b = d - a
    for t, dim in enumerate(dims):
        want = max(0, t - a + 1) + max(0, t - b + 1)
        if dim != want:
            raise RuntimeError(
                f"kernel profile mismatch at t={t}: {dim} != {want} "
                f"for type ({a},{b})")
    return SplittingType(a, b)


# -- projective plumbing ----------------------------------------------------

def _mat_vec(m: Sequence[Sequence[int]], v: Point, p: int) -> Point:
    return tuple(sum(m[i][j] * v[j] for j in range(3)) % p for i in range(3))


def _det3(m, p: int) -> int:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) % p


def _adjugate3(m, p: int):
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            s = [k for k in range(3) if k != i]
            minor = m[r[0]][s[0]] * m[r[1]][s[1]] - m[r[0]][s[1]] * m[r[1]][s[0]]
            c[i][j] = (minor if (i + j) % 2 == 0 else -minor) % p
    return c


def _frame_projectivity(base: Sequence[Point], unit: Point, p: int):
    """Matrix sending the coordinate points to `base` and (1,1,1) to `unit`.

    Returns (T, Tinv) with Tinv = adj(T) (inverse up to scale).  Raises on a
    collinear base triple or a unit point on one of its sides.
    """
    b = [tuple(int(x) % p for x in pt) for pt in base]
    bmat = [[b[j][i] for j in range(3)] for i in range(3)]
    if _det3(bmat, p) == 0:
        raise ValueError("degenerate base triple (collinear points)")
    lam = _mat_vec(_adjugate3(bmat, p), tuple(int(x) % p for x in unit), p)
    if any(x == 0 for x in lam):
        raise ValueError("unit point lies on a side of the base triangle")
    t = [[lam[j] * b[j][i] % p for j in range(3)] for i in range(3)]
    return t, _adjugate3(t, p)


def _random_point(p: int, rng: np.random.Generator) -> Point:
    return (int(rng.integers(0, p)), int(rng.integers(0, p)), 1)


def quadratic_map_point(base: Sequence[Point], unit: Point, pt: Point,
                        p: int) -> Point:
    """Image of a point under the conjugated standard quadratic involution."""
    t, tinv = _frame_projectivity(base, unit, p)
    w = _mat_vec(tinv, pt, p)
    sw = (w[1] * w[2] % p, w[0] * w[2] % p, w[0] * w[1] % p)
    return _mat_vec(t, sw, p)


def lift_through_cremona(phi: Parametrization, base: Sequence[Point],
                         unit: Point | None = None,
                         rng: np.random.Generator | None = None
                         ) -> Parametrization:
    """Compose with the quadratic involution based at three points and
    remove the common factor of the resulting forms.

    The output degree is 2d minus the summed multiplicities of the image at
    the base points; a result of degree < 1 means the image was contracted
    (a line through two base points).
    """
    p = phi.p
    if unit is None:
        if rng is None:
            raise ValueError("need a unit point or an rng to pick one")
        unit = _random_point(p, rng)
    t, tinv = _frame_projectivity(base, unit, p)
    w = [bf.bf_lincomb(tinv[i], phi.forms, p) for i in range(3)]
    sw = (bf.bf_mul(w[1], w[2], p), bf.bf_mul(w[0], w[2], p),
          bf.bf_mul(w[0], w[1], p))
    out = [bf.bf_lincomb(t[i], sw, p) for i in range(3)]
    g = bf.bf_gcd3(out[0], out[1], out[2], p)
    if bf.degree(g) > 0:
        out = [bf.bf_div_exact(f, g, p) for f in out]
    if len(out[0]) < 2 or all(bf.is_zero(f) for f in out):
        raise ContractionError("image contracts to a point under the "
                               "quadratic map")
    return Parametrization(p, tuple(out))


def multiplicity_at(phi: Parametrization, pt: Point) -> int:
    """Multiplicity of the image curve at a point: the degree of the gcd of
    the 2x2 minors of [phi | pt] (parameter preimages counted with
    multiplicity).  Returns 0 off the curve."""
    p = phi.p
    pt = tuple(int(x) % p for x in pt)
    f0, f1, f2 = phi.forms
    minors = (
        tuple((pt[1] * a - pt[0] * b) % p for a, b in zip(f0, f1)),
        tuple((pt[2] * a - pt[0] * c) % p for a, c in zip(f0, f2)),
        tuple((pt[2] * b - pt[1] * c) % p for b, c in zip(f1, f2)),
    )
    if all(bf.is_zero(m) for m in minors):
        raise ValueError("degenerate parametrization: image is a point")
    return bf.degree(bf.bf_gcd3(*minors, p))


# -- realizing a class ------------------------------------------------------

_CONIC_MONOMIALS = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def _conic_row(pt: Point, p: int) -> list[int]:
    return [pt[i] * pt[j] % p for i, j in _CONIC_MONOMIALS]


def _parametrize_conic(on_points: list[Point], p: int,
                       rng: np.random.Generator) -> Parametrization:
    """Degree-2 parametrization of a conic through <= 5 given points."""
    if not on_points:
        m = [[int(rng.integers(0, p)) for _ in range(3)] for _ in range(3)]
        if _det3(m, p) == 0:
            raise ConstructionError("singular random conic frame")
        return Parametrization(p, tuple((m[i][0], m[i][1], m[i][2])
                                        for i in range(3)))
    pts = list(on_points)
    while len(pts) < 5:
        pts.append(_random_point(p, rng))
    rows = np.array([_conic_row(q, p) for q in pts], dtype=np.int64)
    ker = PrimeFieldMatrix(rows, p, reduce=False).kernel_basis()
    if ker.rows != 1:
        raise ConstructionError("conic through the points is not unique")
    coeff = [int(x) for x in ker.a[0]]
    inv2 = (p + 1) // 2
    q = [[0] * 3 for _ in range(3)]
    for c, (i, j) in zip(coeff, _CONIC_MONOMIALS):
        if i == j:
            q[i][i] = c % p
        else:
            q[i][j] = q[j][i] = c * inv2 % p

    def qform(x):
        return sum(x[i] * q[i][j] % p * x[j] for i in range(3)
                   for j in range(3)) % p

    def polar(x, y):
        return 2 * sum(x[i] * q[i][j] % p * y[j] for i in range(3)
                       for j in range(3)) % p

    base_pt = on_points[0]
    for _ in range(16):
        u = _random_point(p, rng)
        v = _random_point(p, rng)
        if _det3([list(base_pt), list(u), list(v)], p) == 0:
            continue
        qu, qv, buv = qform(u), qform(v), polar(u, v)
        bpu, bpv = polar(base_pt, u), polar(base_pt, v)
        forms = []
        for c in range(3):
            s2 = (qu * base_pt[c] - bpu * u[c]) % p
            st = (buv * base_pt[c] - bpu * v[c] - bpv * u[c]) % p
            t2 = (qv * base_pt[c] - bpv * v[c]) % p
            forms.append((s2, st, t2))
        phi = Parametrization(p, tuple(forms))
        if phi.is_coprime():
            return phi
    raise ConstructionError("could not parametrize the conic (singular?)")


def _realize_terminal(cls: DivisorClass, points: list[Point], p: int,
                      rng: np.random.Generator) -> Parametrization:
    on_points = [points[i] for i, r in enumerate(cls.mult) if r == 1]
    if cls.d == 1:
        a = on_points[0] if len(on_points) >= 1 else _random_point(p, rng)
        b = on_points[1] if len(on_points) >= 2 else _random_point(p, rng)
        forms = tuple((a[c], b[c]) for c in range(3))
        return Parametrization(p, forms)
    return _parametrize_conic(on_points, p, rng)


def _terminal_realizable(cls: DivisorClass) -> bool:
    if cls.d not in (1, 2):
        return False
    if any(r not in (0, 1) for r in cls.mult):
        return False
    return sum(cls.mult) <= (2 if cls.d == 1 else 5)


@dataclass(frozen=True)
class ConstructedCurve:
    param: Parametrization
    points: tuple[Point, ...]
    attempts: int

    @property
    def cls(self) -> DivisorClass:
        return DivisorClass(self.param.degree,
                            tuple(multiplicity_at(self.param, q)
                                  for q in self.points))


def construct_in_class(cls: DivisorClass, p: int,
                       rng: np.random.Generator,
                       max_attempts: int = 10) -> ConstructedCurve:
    """Build a parametrized curve with the class's degree and multiplicities
    at freshly sampled points, by replaying the Cremona reduction backwards.

    Every attempt verifies degree, the multiplicity at each realized point,
    and that the parametrization is birational onto its image (a generic
    fiber is a single parameter value); failures retry with new randomness.
    """
    check_modulus(p)
    if any(r < 0 for r in cls.mult) or cls.d < 1:
        raise ConstructionError(f"class is not realizable: {cls}")
    red = cremona_reduce(cls)
    if not _terminal_realizable(red.terminal):
        raise ConstructionError(
            f"{cls} does not reduce to a realizable line or conic class "
            f"(terminal {red.terminal})")
    n = cls.n
    last_err = "no attempts made"
    for attempt in range(1, max_attempts + 1):
        try:
            points: list[Point] = []
            seen = set()
            while len(points) < n:
                q = _random_point(p, rng)
                if q not in seen:
                    seen.add(q)
                    points.append(q)
            phi = _realize_terminal(red.terminal, points, p, rng)
            for base_idx in reversed(red.steps):
                base_pts = [points[i] for i in base_idx]
                unit = _random_point(p, rng)
                phi = lift_through_cremona(phi, base_pts, unit=unit)
                for i in range(n):
                    if i in base_idx:
                        continue
                    img = quadratic_map_point(base_pts, unit, points[i], p)
                    if img == (0, 0, 0):
                        raise ConstructionError(
                            "configuration point hit a contracted line")
                    points[i] = img
            if phi.degree != cls.d:
                raise ConstructionError(
                    f"degree {phi.degree} != {cls.d} after replay")
            for i in range(n):
                got = multiplicity_at(phi, points[i])
                if got != cls.mult[i]:
                    raise ConstructionError(
                        f"multiplicity {got} != {cls.mult[i]} at point {i}")
            s0, t0 = int(rng.integers(1, p)), int(rng.integers(1, p))
            img = phi(s0, t0)
            if img == (0, 0, 0) or multiplicity_at(phi, img) != 1:
                raise ConstructionError("parametrization is not birational")
            return ConstructedCurve(phi, tuple(points), attempt)
        except (ConstructionError, ContractionError, ValueError) as exc:
            last_err = str(exc)
    raise ConstructionError(
        f"could not realize {cls} after {max_attempts} attempts: {last_err}")


@dataclass(frozen=True)
class GenericSplit:
    split: SplittingType
    method: str               # "forced" or "constructed"
    trials: int
    agreement: int            # trials realizing the reported (maximal) a


def generic_splitting_type(cls: DivisorClass, p: int,
                           rng: np.random.Generator,
                           trials: int = 3) -> GenericSplit:
    """Splitting type of a general member of the class.

    a is lower-semicontinuous (it can only drop on special curves), so the
    reported type takes the maximal a over independent constructions;
    `agreement` counts how many trials realized it.
    """
    results = []
    for _ in range(trials):
        built = construct_in_class(cls, p, rng)
        results.append(splitting_type(built.param).a)
    a = max(results)
    return GenericSplit(SplittingType(a, cls.d - a), "constructed",
                        trials, results.count(a))


def resolve_splitting(cls: DivisorClass, p: int | None = None,
                      rng: np.random.Generator | None = None,
                      trials: int = 3) -> GenericSplit:
    """Escalation order: forced Lemma bounds first, construction second."""
    m = max([r for r in cls.mult if r > 0], default=0)
    if m > cls.d:
        raise ValueError(f"multiplicity exceeds degree in {cls}")
    bounds = splitting_bounds(cls.d, m)
    if bounds.determined:
        return GenericSplit(bounds.forced, "forced", 0, 0)
    if p is None or rng is None:
        raise ValueError("undetermined splitting type needs a construction "
                         "(pass p and rng)")
    return generic_splitting_type(cls, p, rng, trials=trials)
