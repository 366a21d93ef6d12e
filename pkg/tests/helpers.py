"""Random free-form surfaces for property and acceptance tests."""

import numpy as np

from pgsurf.funcs import Exp, Linear, Power, Product, Quadratic, Scale, Sum, Tanh
from pgsurf.surface import FactorableSurface, Rect, position


def random_primitive(rng):
    kind = rng.integers(5)
    if kind == 0:
        return Quadratic(*rng.uniform(-1, 1, 3))
    if kind == 1:
        return Exp(rng.uniform(0.2, 1.0), rng.uniform(-1, 1))
    if kind == 2:
        return Tanh(rng.uniform(-1, 1), rng.uniform(0.5, 2.0), rng.uniform(-1, 1))
    if kind == 3:
        # base m t + b >= 0.8 for |t| <= 3
        return Power(rng.uniform(0.1, 0.4), rng.uniform(2.0, 3.0), rng.uniform(-2.0, 2.5))
    return Linear(*rng.uniform(-1, 1, 2))


def random_fn(rng, depth=1):
    if depth == 0 or rng.random() < 0.4:
        return random_primitive(rng)
    combo = rng.integers(3)
    if combo == 0:
        return Sum((random_fn(rng, depth - 1), random_fn(rng, depth - 1)))
    if combo == 1:
        return Product((random_fn(rng, depth - 1), random_fn(rng, depth - 1)))
    return Scale(rng.uniform(-1.5, 1.5), random_fn(rng, depth - 1))


def random_surface(rng):
    a = rng.choice([-1, 1]) * rng.uniform(0.2, 1.0)
    return FactorableSurface(random_fn(rng), random_fn(rng), float(a), Rect(-1.0, 1.0, -1.0, 1.0))


def random_spacelike_surface(rng, min_fraction=0.5):
    """Draw until at least ``min_fraction`` of a 21x21 grid has (f g')^2 < 1."""
    x, z = np.meshgrid(np.linspace(-1, 1, 21), np.linspace(-1, 1, 21), indexing="ij")
    while True:
        s = random_surface(rng)
        j = s.jets(x, z)
        if np.mean((j.f * j.g1) ** 2 < 0.9) >= min_fraction:
            return s


def admissible_points(s, rng, n, q_max=0.9):
    """Up to n random points where (f g')^2 <= q_max."""
    x = rng.uniform(-1, 1, 4 * n)
    z = rng.uniform(-1, 1, 4 * n)
    j = s.jets(x, z)
    q = (j.f * j.g1) ** 2
    keep = q <= q_max
    return list(zip(x[keep][:n], z[keep][:n]))


def close(a, b, rel=1e-9, floor=1e-12):
    return abs(a - b) <= max(rel * abs(a), rel * abs(b), floor)


def fd_partials(s, x, z, h):
    """Central differences of the height: (y_x, y_z, y_xz)."""
    y = lambda x, z: position(s, x, z).x2
    yx = (y(x + h, z) - y(x - h, z)) / (2 * h)
    yz = (y(x, z + h) - y(x, z - h)) / (2 * h)
    yxz = (y(x + h, z + h) - y(x + h, z - h) - y(x - h, z + h) + y(x - h, z - h)) / (4 * h * h)
    return yx, yz, yxz
