"""Triangle meshes of sampled surfaces and their OBJ / CSV serializations.

Numbers are written with ``repr(float)``: the shortest string that reads
back to the same double (at most 17 significant digits), independent of
locale. Output is byte-deterministic for identical inputs.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curvature import PointClass, curvature_field
from .errors import DomainError
from .surface import FactorableSurface
from .verify import GridSpec

DCLASS_NAMES = {
    PointClass.ADMISSIBLE: "spacelike",
    PointClass.TIMELIKE: "timelike",
    PointClass.LIGHTLIKE: "lightlike",
}


@dataclass
class SurfaceMesh:
    vertices: np.ndarray  # (n, 3) affine (x, y, z)
    faces: np.ndarray  # (m, 3) zero-based, counter-clockwise seen from +y
    dclass: list
    K: Optional[np.ndarray] = None
    H: Optional[np.ndarray] = None


def grid_faces(nx: int, nz: int) -> np.ndarray:
    """Two triangles per grid cell; vertex (i, j) has index i*nz + j."""
    i, j = np.meshgrid(np.arange(nx - 1), np.arange(nz - 1), indexing="ij")
    v00 = (i * nz + j).ravel()
    v01 = v00 + 1
    v10 = v00 + nz
    v11 = v10 + 1
    tri_a = np.stack([v00, v01, v10], axis=1)
    tri_b = np.stack([v10, v01, v11], axis=1)
    return np.stack([tri_a, tri_b], axis=1).reshape(-1, 3)


def mesh(s: FactorableSurface, grid: GridSpec, with_curvature: bool = False) -> SurfaceMesh:
    X, Z = grid.nodes()
    ok = s.valid(X, Z)
    if not np.all(ok):
        i, j = np.argwhere(~ok)[0]
        raise DomainError(f"grid node ({i}, {j}) = ({X[i, j]!r}, {Z[i, j]!r}) is outside the surface domain")
    cf = curvature_field(s, X, Z)
    vertices = np.stack([X.ravel(), cf.height.ravel(), Z.ravel()], axis=1)
    dclass = [DCLASS_NAMES[PointClass(c)] for c in cf.point_class.ravel()]
    out = SurfaceMesh(vertices, grid_faces(grid.nx, grid.nz), dclass)
    if with_curvature:
        out.K = cf.K.ravel()
        out.H = cf.H.ravel()
    return out


def _num(v) -> str:
    return repr(float(v))


def _opt(v) -> str:
    if v is None or not np.isfinite(v):
        return ""
    return repr(float(v))


def obj_text(m: SurfaceMesh) -> str:
    buf = io.StringIO()
    for x, y, z in m.vertices:
        buf.write(f"v {_num(x)} {_num(y)} {_num(z)}\n")
    for a, b, c in m.faces:
        buf.write(f"f {a + 1} {b + 1} {c + 1}\n")
    return buf.getvalue()


def csv_text(m: SurfaceMesh) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "z", "y", "K", "H", "Dclass"])
    n = len(m.vertices)
    K = m.K if m.K is not None else [None] * n
    H = m.H if m.H is not None else [None] * n
    for (x, y, z), k, h, dc in zip(m.vertices, K, H, m.dclass):
        w.writerow([_num(x), _num(z), _num(y), _opt(k), _opt(h), dc])
    return buf.getvalue()


def _write(path, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {os.fspath(path)}: {exc.strerror}") from exc


def write_obj(m: SurfaceMesh, path) -> None:
    _write(path, obj_text(m))


def write_csv(m: SurfaceMesh, path) -> None:
    _write(path, csv_text(m))
