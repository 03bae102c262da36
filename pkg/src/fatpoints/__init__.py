"""Exact invariants of fat point schemes in the projective plane.

Divisor-class arithmetic on blown-up planes, Hilbert functions of fat point
ideals (closed forms and a finite-field oracle), splitting types of the
pulled-back cotangent bundle on rational curves, superabundance counts, and
the two failure-of-maximal-rank predictions they support.
"""

from .divisor import (DivisorClass, arithmetic_genus, canonical_class,
                      cremona_reduce, cremona_transform, intersect,
                      is_exceptional)
from .scheme import (CurveData, FatPointScheme, exp_cok_mu,
                     intersection_length, length, residual, shgh_hilbert,
                     strict_transform_pairing)
from .linalg import MERSENNE31, PrimeFieldMatrix, backend_name

__version__ = "0.1.0"
