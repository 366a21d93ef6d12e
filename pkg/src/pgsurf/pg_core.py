"""Pseudo-Galilean linear algebra in affine coordinates (x1 | x2, x3).

The first coordinate is the non-isotropic direction; the metric on the
isotropic plane x1 = 0 has signature (+, -). Branch tests compare against
0.0 exactly: the metric is discontinuous by construction and callers build
vectors with structurally exact zeros.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class PGVec3:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        for name in ("x1", "x2", "x3"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"PGVec3.{name} must be finite, got {value!r}")

    def __add__(self, other: PGVec3) -> PGVec3:
        return PGVec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: PGVec3) -> PGVec3:
        return PGVec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __mul__(self, c: float) -> PGVec3:
        return PGVec3(c * self.x1, c * self.x2, c * self.x3)

    __rmul__ = __mul__

    def __truediv__(self, c: float) -> PGVec3:
        return PGVec3(self.x1 / c, self.x2 / c, self.x3 / c)

    def __iter__(self):
        yield self.x1
        yield self.x2
        yield self.x3

    @property
    def isotropic(self) -> bool:
        return self.x1 == 0.0


class CausalClass(str, enum.Enum):
    NON_ISOTROPIC = "non-isotropic"
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def pg_dot(X: PGVec3, Y: PGVec3) -> float:
    """Pseudo-Galilean scalar product.

    ``x1*y1`` if either vector is non-isotropic, otherwise the Lorentzian
    product ``x2*y2 - x3*y3`` of the isotropic parts.
    """
    if X.x1 != 0.0 or Y.x1 != 0.0:
        return X.x1 * Y.x1
    return X.x2 * Y.x2 - X.x3 * Y.x3


def pg_norm(X: PGVec3) -> float:
    return math.sqrt(abs(pg_dot(X, X)))


def pg_distance(p: PGVec3, q: PGVec3) -> float:
    if p.x1 != q.x1:
        return abs(q.x1 - p.x1)
    d2 = q.x2 - p.x2
    d3 = q.x3 - p.x3
    return math.sqrt(abs(d2 * d2 - d3 * d3))


def pg_cross(X: PGVec3, Y: PGVec3) -> PGVec3:
    """Cross product: formal determinant with first row (0, -e2, e3).

    Expanding along the first row gives
    ``(0, x1*y3 - x3*y1, x1*y2 - x2*y1)``, always isotropic.
    """
    return PGVec3(0.0, X.x1 * Y.x3 - X.x3 * Y.x1, X.x1 * Y.x2 - X.x2 * Y.x1)


def classify(X: PGVec3) -> CausalClass:
    if X.x1 != 0.0:
        return CausalClass.NON_ISOTROPIC
    if abs(X.x2) == abs(X.x3):
        return CausalClass.LIGHTLIKE
    # sign of x2^2 - x3^2 without underflow for tiny components
    if abs(X.x2) > abs(X.x3):
        return CausalClass.SPACELIKE
    return CausalClass.TIMELIKE
