import math

import numpy as np
import pytest

from helpers import admissible_points, close, random_surface
from pgsurf.curvature import (curvature_field, curvature_general, curvature_point, form_bundle, gauss_closed,
                              mean_closed, omega, relation_A)
from pgsurf.errors import DegenerateRelation, LightlikeNormal, TimelikeNormal
from pgsurf.families import FamilySpec, build
from pgsurf.funcs import Constant, Exp, Linear, Quadratic, Tanh
from pgsurf.pg_core import CausalClass, PGVec3, pg_dot
from pgsurf.surface import FactorableSurface, Rect

UNIT = Rect(-1, 1, -1, 1)
PLANE = FactorableSurface(Constant(1), Linear(0, 1), 1.0, UNIT)
EX1 = FactorableSurface(Exp(8, 5), Exp(1, 1), 1.0, Rect(-1, 1, 0, 2 * math.pi))
EX2 = FactorableSurface(Constant(1.0), Linear(math.sqrt(3) / 2, 9.0), 2.0, Rect(0, 15, -1, 30))
EX3 = FactorableSurface(Tanh(1, 1, 0), Linear(1, 0), 10.0, UNIT)
EX4 = FactorableSurface(Quadratic(-1, 2, 1), Constant(1), 1.0, UNIT)


def test_plane_forms():
    b = form_bundle(PLANE, 0.2, -0.3)
    assert (b.E, b.F, b.G, b.L, b.M, b.N, b.D) == (1, 0, -1, 0, 0, 0, 1)
    assert curvature_general(PLANE, 0.2, -0.3) == (0.0, 0.0)
    assert mean_closed(PLANE, 0.1, 0.1) == 0.0


def test_minimal_example_forms():
    f0 = 1.7
    s = FactorableSurface(Constant(f0), Linear(math.sqrt(3) / (2 * f0), 0.0), 2.0, UNIT)
    b = form_bundle(s, 0.5, 0.5)
    assert b.G == pytest.approx(-0.25, abs=1e-15)
    assert b.D == pytest.approx(0.5, abs=1e-15)
    assert b.L == b.M == b.N == 0


def test_tanh_example_at_origin():
    b = form_bundle(EX3, 0, 0)
    assert (b.D, b.N, b.M, b.L) == (1, 0, 1, 20)
    assert curvature_general(EX3, 0, 0)[0] == 1.0


def test_gauss_examples():
    for x, z in [(-1.0, 0.0), (0.0, 1.0), (0.9, 6.0)]:
        assert abs(gauss_closed(EX1, x, z)) <= 1e-9
    for x, z in [(-0.7, 0.2), (0.0, 0.0), (1.0, -1.0)]:
        assert gauss_closed(EX3, x, z) == pytest.approx(1.0, abs=1e-12)
    assert gauss_closed(FactorableSurface(Constant(2), Tanh(1, 1, 0), 1.0, UNIT), 0.3, 0.1) == 0.0
    assert gauss_closed(FactorableSurface(Exp(1, 1), Constant(2), 1.0, UNIT), 0.3, 0.1) == 0.0


def test_mean_examples():
    for x, z in [(0.0, -1.0), (7.5, 10.0), (15.0, 30.0)]:
        assert mean_closed(EX2, x, z) == 0.0
    for x in np.linspace(-1, 1, 9):
        assert mean_closed(EX4, x, 0.3) == 1.0
        assert omega(EX4, x, 0.3) == 2.0


def test_omega_regrouping_identity():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = random_surface(rng)
        for x, z in admissible_points(s, rng, 10):
            f, f1, f2, g, g1, g2 = (float(v) for v in s.jets(x, z))
            D2 = 1 - (f * g1) ** 2
            other = f * g2 - D2 * (f2 * g + 2 * s.a * f1 * g1 + s.a ** 2 * f * g2)
            scale = abs(f * g2) + abs(f2 * g) + abs(f1 * g1) + abs(f * g2) + 1e-300
            assert abs(omega(s, x, z) - other) <= 1e-12 * scale


def test_degenerate_normals_raise():
    light = FactorableSurface(Constant(0.5), Linear(2.0, 0.0), 1.0, UNIT)
    with pytest.raises(LightlikeNormal):
        gauss_closed(light, 0, 0)
    with pytest.raises(LightlikeNormal):
        form_bundle(light, 0, 0)
    with pytest.raises(TimelikeNormal):
        mean_closed(EX1, 0.5, 1.0)
    with pytest.raises(TimelikeNormal):
        form_bundle(EX1, 0.5, 1.0)
    # K stays defined at timelike points
    assert abs(gauss_closed(EX1, 0.5, 1.0)) <= 1e-9
    cp = curvature_point(EX1, 0.5, 1.0)
    assert cp.H is None and cp.normal_class is CausalClass.TIMELIKE


def test_relation_A_degenerate():
    with pytest.raises(DegenerateRelation):
        relation_A(EX4, 0.1, 0.1)
    with pytest.raises(DegenerateRelation):
        relation_A(FactorableSurface(Constant(0.5), Tanh(1, 1, 0), 1.0, UNIT), 0.1, 0.1)


def test_relation_ratio_is_one_half_on_tanh_example():
    for x, z in [(0.2, 0.3), (-0.8, 0.9), (0.5, -1.0)]:
        H = mean_closed(EX3, x, z)
        K = gauss_closed(EX3, x, z)
        assert H / (relation_A(EX3, x, z) * K) == pytest.approx(0.5, rel=1e-12)


@pytest.mark.parametrize("seed", range(20))
def test_oracle_equivalence_random(seed):
    rng = np.random.default_rng(1000 + seed)
    s = random_surface(rng)
    for x, z in admissible_points(s, rng, 50):
        K, H = curvature_general(s, x, z)
        assert close(gauss_closed(s, x, z), K)
        assert close(mean_closed(s, x, z), H)


@pytest.mark.parametrize("seed", range(10))
def test_form_identities(seed):
    rng = np.random.default_rng(2000 + seed)
    s = random_surface(rng)
    for x, z in admissible_points(s, rng, 30):
        b = form_bundle(s, x, z)
        f, f1, f2, g, g1, g2 = (float(v) for v in s.jets(x, z))
        assert b.E == 1.0 and b.F == 0.0
        assert b.G == (f * g1) ** 2 - 1
        assert close(b.E * b.G - b.F ** 2, -b.D ** 2)
        assert close(pg_dot(b.normal, b.normal), 1.0)
        assert b.normal.x1 == 0.0
        assert close(b.normal.x3 / b.normal.x2, f * g1, rel=1e-14)
        assert close(b.L * b.N - b.M ** 2, (f * f2 * g * g2 - (f1 * g1) ** 2) / b.D ** 2, floor=1e-12)


def test_catalog_surfaces_oracle_points():
    for name in ("const-k", "flat-power", "min-linear-g", "const-h-b", "flat-g-const"):
        s, _ = build(FamilySpec.default(name))
        for x, z in [(-0.5, 0.25), (0.75, -0.8), (0.0, 0.0)]:
            K, H = curvature_general(s, x, z)
            assert close(gauss_closed(s, x, z), K)
            assert close(mean_closed(s, x, z), H)


def test_field_matches_pointwise():
    X, Z = np.meshgrid(np.linspace(-1, 1, 7), np.linspace(-1, 1, 5), indexing="ij")
    cf = curvature_field(EX3, X, Z)
    for i in range(7):
        for j in range(5):
            assert cf.K[i, j] == gauss_closed(EX3, X[i, j], Z[i, j])
            assert cf.H[i, j] == mean_closed(EX3, X[i, j], Z[i, j])
            assert cf.A[i, j] == relation_A(EX3, X[i, j], Z[i, j])
