"""Fundamental forms, Gaussian and mean curvature of affine factorable surfaces.

Two independent routes are provided:

* closed forms in the factor jets (``gauss_closed``, ``mean_closed``,
  ``omega``, ``relation_A``), vectorized through :func:`curvature_field`;
* the general route (``form_bundle`` then ``curvature_general``) that builds
  the normal with the pseudo-Galilean cross product and takes scalar
  products of the partials, one point at a time.

The second route is the oracle for the first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateRelation, LightlikeNormal, TimelikeNormal
from .pg_core import CausalClass, PGVec3, pg_cross, pg_dot, pg_norm
from .surface import FactorableSurface, Jets, partials

LIGHTLIKE_EPS = 1e-12
RELATION_EPS = 1e-12


class PointClass(enum.IntEnum):
    """Exclusive classification of grid nodes."""

    ADMISSIBLE = 0  # spacelike normal, D real and positive
    TIMELIKE = 1
    LIGHTLIKE = 2
    DOMAIN = 3


@dataclass(frozen=True)
class FormBundle:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    D: float
    normal: PGVec3


@dataclass(frozen=True)
class CurvaturePoint:
    K: float
    H: Optional[float]
    omega: float
    normal_class: CausalClass


def normal_class(q: float) -> CausalClass:
    """Causal class of the normal direction (0, 1, f g') given q = (f g')^2."""
    gap = 1.0 - q
    if abs(gap) < LIGHTLIKE_EPS:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if gap > 0 else CausalClass.TIMELIKE


def _raise_for(q: float, what: str, allow_timelike: bool = False) -> None:
    cls = normal_class(q)
    if cls is CausalClass.LIGHTLIKE:
        raise LightlikeNormal(f"{what} undefined: lightlike normal, (f g')^2 = {q!r} is within {LIGHTLIKE_EPS} of 1")
    if cls is CausalClass.TIMELIKE and not allow_timelike:
        raise TimelikeNormal(f"{what} undefined: (f g')^2 = {q!r} > 1, D is not real")


# -- closed forms on jets; valid for floats and numpy arrays ---------------

def _q(j: Jets):
    fg1 = j.f * j.g1
    return fg1 * fg1


def _gauss_numerator(j: Jets):
    f1g1 = j.f1 * j.g1
    return f1g1 * f1g1 - j.f2 * j.f * j.g2 * j.g


def _omega(j: Jets, a: float):
    f, f1, f2, g, g1, g2 = j
    return ((1.0 - a * a) * f * g2
            - f2 * g
            - 2.0 * a * f1 * g1
            + f * f * f2 * g1 * g1 * g
            + 2.0 * a * f1 * f * f * g1 ** 3
            + a * a * f ** 3 * g1 * g1 * g2)


def _gauss(j: Jets):
    gap = 1.0 - _q(j)
    return _gauss_numerator(j) / (gap * gap)


def _mean(j: Jets, a: float):
    D = np.sqrt(1.0 - _q(j))
    return _omega(j, a) / (2.0 * D ** 3)


def _relation_parts(j: Jets, a: float):
    f, f1, f2, g, g1, g2 = j
    D = np.sqrt(1.0 - _q(j))
    num = D ** 3 * (a * a * f * g2 + 2.0 * a * f1 * g1 + f2 * g) - f * g2 * D
    t1 = f2 * f * g2 * g
    f1g1 = f1 * g1
    t2 = f1g1 * f1g1
    return num, t1 - t2, np.abs(t1) + np.abs(t2)


def gauss_closed(s: FactorableSurface, x: float, z: float) -> float:
    """K = (f'^2 g'^2 - f'' f g'' g) / (1 - (f g')^2)^2; also defined for timelike normals."""
    j = s.jets(x, z)
    _raise_for(float(_q(j)), "K", allow_timelike=True)
    return float(_gauss(j))


def omega(s: FactorableSurface, x: float, z: float) -> float:
    return float(_omega(s.jets(x, z), s.a))


def mean_closed(s: FactorableSurface, x: float, z: float) -> float:
    j = s.jets(x, z)
    _raise_for(float(_q(j)), "H")
    return float(_mean(j, s.a))


def relation_A(s: FactorableSurface, x: float, z: float) -> float:
    """The factor A(x, z) of the relation H = A K, exactly as printed.

    Measured against the curvatures, ``H / (A K)`` is a constant; see
    :func:`pgsurf.verify.relation_check`.
    """
    j = s.jets(x, z)
    _raise_for(float(_q(j)), "A")
    num, den, scale = (float(v) for v in _relation_parts(j, s.a))
    if abs(den) <= RELATION_EPS * scale or den == 0.0:
        raise DegenerateRelation(f"A undefined at ({x}, {z}): f''f g''g - f'^2 g'^2 = {den!r}")
    return num / den


def curvature_point(s: FactorableSurface, x: float, z: float) -> CurvaturePoint:
    j = s.jets(x, z)
    q = float(_q(j))
    cls = normal_class(q)
    if cls is CausalClass.LIGHTLIKE:
        _raise_for(q, "K")
    H = float(_mean(j, s.a)) if cls is CausalClass.SPACELIKE else None
    return CurvaturePoint(K=float(_gauss(j)), H=H, omega=float(_omega(j, s.a)), normal_class=cls)


# -- general route --------------------------------------------------------

def form_bundle(s: FactorableSurface, x: float, z: float) -> FormBundle:
    p = partials(s, x, z)
    cross = pg_cross(p.phi_x, p.phi_z)
    # pg_dot(cross, cross) = 1 - (f g')^2
    _raise_for(1.0 - pg_dot(cross, cross), "second fundamental form")
    D = pg_norm(cross)
    n = cross / D
    return FormBundle(
        E=pg_dot(p.phi_x, p.phi_x),
        F=pg_dot(p.phi_x, p.phi_z),
        G=pg_dot(p.phi_z, p.phi_z),
        L=pg_dot(p.phi_xx, n),
        M=pg_dot(p.phi_xz, n),
        N=pg_dot(p.phi_zz, n),
        D=D,
        normal=n,
    )


def curvature_general(s: FactorableSurface, x: float, z: float) -> tuple[float, float]:
    """(K, H) from the form coefficients: K = (LN - M^2)/(EG - F^2), H = (EN + GL - 2FM)/(2|EG - F^2|)."""
    b = form_bundle(s, x, z)
    det1 = b.E * b.G - b.F * b.F
    K = (b.L * b.N - b.M * b.M) / det1
    H = (b.E * b.N + b.G * b.L - 2.0 * b.F * b.M) / (2.0 * abs(det1))
    return K, H


# -- vectorized field ------------------------------------------------------

@dataclass
class CurvatureField:
    """Closed-form curvature quantities over an array of points.

    ``K`` is NaN at lightlike and out-of-domain nodes; ``H`` and ``A`` are
    NaN wherever the normal is not spacelike (and ``A`` also where its
    denominator vanishes).
    """

    point_class: np.ndarray
    q: np.ndarray
    height: np.ndarray
    K: np.ndarray
    H: np.ndarray
    omega: np.ndarray
    A: np.ndarray
    A_den: np.ndarray


def curvature_field(s: FactorableSurface, X, Z) -> CurvatureField:
    X = np.asarray(X, dtype=float)
    Z = np.asarray(Z, dtype=float)
    nan = np.full(X.shape, np.nan)
    out = CurvatureField(
        point_class=np.full(X.shape, PointClass.DOMAIN, dtype=np.int8),
        q=nan.copy(), height=nan.copy(), K=nan.copy(), H=nan.copy(), omega=nan.copy(), A=nan.copy(),
        A_den=nan.copy(),
    )
    ok = s.valid(X, Z)
    if not np.any(ok):
        return out
    j = s.jets(X[ok], Z[ok])
    q = _q(j)
    gap = 1.0 - q
    light = np.abs(gap) < LIGHTLIKE_EPS
    space = (gap > 0) & ~light
    cls = np.where(light, PointClass.LIGHTLIKE, np.where(space, PointClass.ADMISSIBLE, PointClass.TIMELIKE))

    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(light, np.nan, _gauss(j))
        H = np.where(space, _mean(j, s.a), np.nan)
        num, den, scale = _relation_parts(j, s.a)
        degenerate = (np.abs(den) <= RELATION_EPS * scale) | (den == 0.0)
        A = np.where(space & ~degenerate, num / den, np.nan)

    out.point_class[ok] = cls
    out.q[ok] = q
    out.height[ok] = j.f * j.g
    out.K[ok] = K
    out.H[ok] = H
    out.omega[ok] = _omega(j, s.a)
    out.A[ok] = A
    out.A_den[ok] = den
    return out
