"""Affine factorable surfaces of the second kind, phi(x, z) = (x, f(x) g(z + a x), z)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .funcs import C2Fn
from .pg_core import PGVec3


@dataclass(frozen=True)
class Rect:
    x_min: float
    x_max: float
    z_min: float
    z_max: float

    def __post_init__(self):
        if not (self.x_min <= self.x_max and self.z_min <= self.z_max):
            raise ValueError(f"empty rectangle {self.as_list()}")
        if not all(math.isfinite(v) for v in self.as_list()):
            raise ValueError("rectangle bounds must be finite")

    def contains(self, x, z):
        return (x >= self.x_min) & (x <= self.x_max) & (z >= self.z_min) & (z <= self.z_max)

    def as_list(self) -> list[float]:
        return [self.x_min, self.x_max, self.z_min, self.z_max]

    @classmethod
    def from_seq(cls, seq) -> Rect:
        x_min, x_max, z_min, z_max = (float(v) for v in seq)
        return cls(x_min, x_max, z_min, z_max)


class Jets(NamedTuple):
    """f, f', f'' at x and g, g', g'' at v = z + a x (derivatives in g's own argument)."""

    f: object
    f1: object
    f2: object
    g: object
    g1: object
    g2: object


class Partials(NamedTuple):
    phi_x: PGVec3
    phi_z: PGVec3
    phi_xx: PGVec3
    phi_xz: PGVec3
    phi_zz: PGVec3


@dataclass(frozen=True)
class FactorableSurface:
    f: C2Fn
    g: C2Fn
    a: float
    domain: Rect

    def valid(self, x, z):
        """Mask of points inside the rectangle where both factors are defined."""
        x = np.asarray(x, dtype=float)
        z = np.asarray(z, dtype=float)
        ok = self.domain.contains(x, z) & self.f.valid(x) & self.g.valid(z + self.a * x)
        return ok if np.ndim(ok) else bool(ok)

    def _check(self, x, z) -> None:
        if not np.all(self.valid(x, z)):
            raise DomainError(f"({x!r}, {z!r}) is outside the surface domain {self.domain.as_list()} "
                              "or outside a factor's domain of validity")

    def jets(self, x, z) -> Jets:
        self._check(x, z)
        return Jets(*self.f._jet(x), *self.g._jet(z + self.a * x))

    def height(self, x, z):
        j = self.jets(x, z)
        return j.f * j.g


def position(s: FactorableSurface, x: float, z: float) -> PGVec3:
    return PGVec3(float(x), float(s.height(x, z)), float(z))


def partials(s: FactorableSurface, x: float, z: float) -> Partials:
    """First and second partials of the parametrization.

    The factor ``a`` from the chain rule on g(z + a x) enters here only;
    the factor functions stay univariate.
    """
    F, F1, F2, G, G1, G2 = (float(v) for v in s.jets(x, z))
    a = s.a
    return Partials(
        phi_x=PGVec3(1.0, F1 * G + a * F * G1, 0.0),
        phi_z=PGVec3(0.0, F * G1, 1.0),
        phi_xx=PGVec3(0.0, F2 * G + 2.0 * a * F1 * G1 + a * a * F * G2, 0.0),
        phi_xz=PGVec3(0.0, F1 * G1 + a * F * G2, 0.0),
        phi_zz=PGVec3(0.0, F * G2, 0.0),
    )
