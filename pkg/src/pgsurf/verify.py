"""Grid residual checks for the classification families.

Each check samples a rectangle on a fixed ``nx x nz`` grid (x outer, z inner),
sorts every node into exactly one of admissible / timelike / lightlike /
domain-skipped, and reduces residuals to a JSON-ready report. Maxima are
located with the lowest (x-index, z-index) on ties, so reports are
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .curvature import PointClass, curvature_field, curvature_general
from .errors import DegenerateRelation
from .families import H_CONST, K_CONST, FamilySpec, build, const_k_factors, get_family
from .surface import FactorableSurface, Rect

PASS = "PASS"
FAIL = "FAIL"
DEGENERATE = "DEGENERATE"
DISPUTED = "DISPUTED-REPORT"

ZERO_TOL = 1e-9
CONST_REL_TOL = 1e-8
ABS_FLOOR = 1e-12
ORACLE_REL_TOL = 1e-9
RELATION_EPS = 1e-10
RELATION_SPREAD_TOL = 1e-6
MAX_NODES = 10**7


@dataclass(frozen=True)
class GridSpec:
    nx: int
    nz: int
    rect: Rect

    def __post_init__(self):
        if self.nx < 2 or self.nz < 2:
            raise ValueError(f"grid needs at least 2x2 nodes, got {self.nx}x{self.nz}")
        if self.nx * self.nz > MAX_NODES:
            raise ValueError(f"grid {self.nx}x{self.nz} exceeds {MAX_NODES} nodes")
        r = self.rect
        if not (r.x_max > r.x_min and r.z_max > r.z_min):
            raise ValueError(f"grid rectangle must have positive extents, got {r.as_list()}")

    @property
    def size(self) -> int:
        return self.nx * self.nz

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        r = self.rect
        return np.linspace(r.x_min, r.x_max, self.nx), np.linspace(r.z_min, r.z_max, self.nz)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        xs, zs = self.axes()
        return np.meshgrid(xs, zs, indexing="ij")

    def to_dict(self) -> dict:
        return {"nx": self.nx, "nz": self.nz, "rect": self.rect.as_list()}


@dataclass
class VerificationReport:
    family: str
    check: str
    grid: GridSpec
    counts: dict
    residuals: dict
    verdict: str
    tolerance: Optional[float] = None
    target: Optional[str] = None
    measured: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return _jsonable({
            "family": self.family,
            "check": self.check,
            "grid": self.grid.to_dict(),
            "counts": self.counts,
            "target": self.target,
            "tolerance": self.tolerance,
            "residuals": self.residuals,
            "measured": self.measured,
            "verdict": self.verdict,
            "notes": self.notes,
        })


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _counts(point_class: np.ndarray) -> dict:
    n = np.bincount(point_class.ravel().astype(np.int64), minlength=4)
    return {
        "total": int(point_class.size),
        "admissible": int(n[PointClass.ADMISSIBLE]),
        "timelike_normal": int(n[PointClass.TIMELIKE]),
        "lightlike_skipped": int(n[PointClass.LIGHTLIKE]),
        "domain_skipped": int(n[PointClass.DOMAIN]),
    }


def residual_stats(residual: np.ndarray, mask: np.ndarray, X: np.ndarray, Z: np.ndarray) -> dict:
    """max / mean / argmax of ``residual`` over ``mask``; argmax ties go to the lowest (i, j)."""
    if not np.any(mask):
        return {"max": None, "mean": None, "argmax": None, "index": None, "n": 0}
    r = np.where(mask, residual, -np.inf)
    flat = int(np.argmax(r))  # first occurrence in row-major order
    i, j = np.unravel_index(flat, r.shape)
    return {
        "max": float(r.flat[flat]),
        "mean": float(np.mean(residual[mask])),
        "argmax": [float(X[i, j]), float(Z[i, j])],
        "index": [int(i), int(j)],
        "n": int(np.count_nonzero(mask)),
    }


def _field_stats(values: np.ndarray, mask: np.ndarray) -> dict:
    if not np.any(mask):
        return {"min": None, "max": None, "mean": None}
    v = values[mask]
    return {"min": float(np.min(v)), "max": float(np.max(v)), "mean": float(np.mean(v))}


def default_tolerance(kind: str, value: float) -> float:
    if kind in (K_CONST, H_CONST):
        return max(CONST_REL_TOL * abs(value), ABS_FLOOR)
    return ZERO_TOL


def default_grid(rect: Rect, n: int = 101) -> GridSpec:
    return GridSpec(n, n, rect)


def verify_surface(s: FactorableSurface, kind: str, value: float, grid: GridSpec,
                   tol: Optional[float] = None, *, name: str = "surface",
                   disputed: bool = False) -> VerificationReport:
    """Check one expected invariant (K or H, zero or constant) on ``grid``.

    K targets are also checked at timelike-normal nodes, where the closed
    form stays defined; H targets use admissible nodes only.
    """
    X, Z = grid.nodes()
    cf = curvature_field(s, X, Z)
    counts = _counts(cf.point_class)
    quantity = kind[0]
    values = cf.K if quantity == "K" else cf.H
    if quantity == "K":
        mask = (cf.point_class == PointClass.ADMISSIBLE) | (cf.point_class == PointClass.TIMELIKE)
    else:
        mask = cf.point_class == PointClass.ADMISSIBLE
    target = 0.0 if kind.endswith("zero") else float(value)
    tol = default_tolerance(kind, target) if tol is None else float(tol)
    stats = residual_stats(np.abs(values - target), mask, X, Z)
    evaluated = stats["n"]
    counts["evaluated"] = evaluated

    notes = []
    if disputed:
        verdict = DISPUTED
        notes.append(f"claimed {quantity} = {target!r}; the measured {quantity} field is reported instead of a verdict")
    elif evaluated == 0 and counts["lightlike_skipped"] > 0:
        verdict = DEGENERATE
        notes.append(f"no evaluable node: {counts['lightlike_skipped']} of {counts['total']} nodes have a "
                     f"lightlike normal (D = 0), {quantity} undefined")
    elif evaluated > 0 and stats["max"] <= tol and 2 * evaluated >= counts["total"]:
        verdict = PASS
    else:
        verdict = FAIL
        if 2 * evaluated < counts["total"]:
            notes.append(f"only {evaluated} of {counts['total']} nodes were evaluable")
    return VerificationReport(
        family=name,
        check="invariant",
        grid=grid,
        counts=counts,
        residuals={quantity: stats},
        verdict=verdict,
        tolerance=tol,
        target=f"{quantity} = {target!r}",
        measured={quantity: _field_stats(values, mask)},
        notes=notes,
    )


def verify_family(spec: FamilySpec, grid: Optional[GridSpec] = None,
                  tol: Optional[float] = None) -> VerificationReport:
    if grid is None:
        s, inv = build(spec)
        grid = default_grid(s.domain)
    else:
        s, inv = build(spec, grid.rect)
    report = verify_surface(s, inv.kind, inv.value, grid, tol, name=spec.name, disputed=inv.disputed)
    note = get_family(spec.name).note
    if note:
        report.notes.append(note)
    return report


def oracle_compare(s: FactorableSurface, grid: GridSpec, *, name: str = "surface",
                   rel: float = ORACLE_REL_TOL, floor: float = ABS_FLOOR,
                   q_max: Optional[float] = None) -> VerificationReport:
    """Closed-form K, H against the form-coefficient route at every admissible node.

    The residual is ``|a - b| / max(|a|, |b|, floor/rel)``; it is at most
    ``rel`` exactly when ``|a - b| <= max(rel*|a|, rel*|b|, floor)``.
    ``q_max`` restricts the comparison to nodes with (f g')^2 <= q_max:
    close to the light cone both routes lose accuracy like 1/D^4.
    """
    X, Z = grid.nodes()
    cf = curvature_field(s, X, Z)
    counts = _counts(cf.point_class)
    mask = cf.point_class == PointClass.ADMISSIBLE
    notes = []
    if q_max is not None:
        mask &= cf.q <= q_max
        notes.append(f"restricted to (f g')^2 <= {q_max!r}")
    rK = np.zeros(X.shape)
    rH = np.zeros(X.shape)
    for i, j in zip(*np.nonzero(mask)):
        Kg, Hg = curvature_general(s, float(X[i, j]), float(Z[i, j]))
        Kc, Hc = cf.K[i, j], cf.H[i, j]
        rK[i, j] = abs(Kc - Kg) / max(abs(Kc), abs(Kg), floor / rel)
        rH[i, j] = abs(Hc - Hg) / max(abs(Hc), abs(Hg), floor / rel)
    residuals = {"K": residual_stats(rK, mask, X, Z), "H": residual_stats(rH, mask, X, Z)}
    n = residuals["K"]["n"]
    counts["evaluated"] = n
    if n == 0:
        verdict = DEGENERATE if counts["lightlike_skipped"] else FAIL
    else:
        verdict = PASS if max(residuals["K"]["max"], residuals["H"]["max"]) <= rel else FAIL
    return VerificationReport(
        family=name, check="oracle", grid=grid, counts=counts, residuals=residuals,
        verdict=verdict, tolerance=rel, target="closed form == general formula", notes=notes,
    )


def relation_check(s: FactorableSurface, grid: GridSpec, *, name: str = "surface",
                   spread_tol: float = RELATION_SPREAD_TOL) -> VerificationReport:
    """Measure the pointwise ratio H / (A K) and whether it is constant on the grid.

    Only admissible nodes with |K|, |H| and |A denominator| above 1e-10 enter.
    """
    X, Z = grid.nodes()
    cf = curvature_field(s, X, Z)
    counts = _counts(cf.point_class)
    mask = ((cf.point_class == PointClass.ADMISSIBLE)
            & (np.abs(cf.K) > RELATION_EPS)
            & (np.abs(cf.H) > RELATION_EPS)
            & (np.abs(cf.A_den) > RELATION_EPS)
            & np.isfinite(cf.A))
    if not np.any(mask):
        raise DegenerateRelation(f"{name}: no grid node with K, H and the A denominator all nonzero")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = cf.H / (cf.A * cf.K)
    stats = _field_stats(ratio, mask)
    spread = stats["max"] - stats["min"]
    counts["evaluated"] = int(np.count_nonzero(mask))
    mean = stats["mean"]
    dev = residual_stats(np.abs(ratio - mean), mask, X, Z)
    constant = spread <= spread_tol
    return VerificationReport(
        family=name, check="relation", grid=grid, counts=counts,
        residuals={"ratio_minus_mean": dev},
        verdict=PASS if constant else FAIL,
        tolerance=spread_tol,
        target="H / (A K) constant over the grid",
        measured={"ratio": {**stats, "spread": spread, "constant": constant}},
        notes=[f"measured H / (A K) = {mean!r}"],
    )


def tanh_rate_probe(K0: float, g0: float, grid: Optional[GridSpec] = None, *,
                     lam1: float = 0.0, lam2: float = 0.0, a: float = 1.0, sign: float = 1.0,
                     tol: float = ZERO_TOL) -> dict:
    """K field of the constant-K family for both printed tanh rates.

    ``statement`` uses tanh(sqrt(K0) x ...), ``proof`` uses
    tanh(g0 sqrt(K0) x ...). Each report holds max |K - K0|.
    """
    grid = grid or default_grid(Rect(-1.0, 1.0, -1.0, 1.0))
    out = {"K0": K0, "g0": g0}
    for label, proof in (("statement", False), ("proof", True)):
        f, g = const_k_factors(K0, g0, lam1, lam2, sign, proof_variant=proof)
        s = FactorableSurface(f, g, a, grid.rect)
        report = verify_surface(s, K_CONST, K0, grid, tol, name=f"const-k/{label}")
        out[label] = report
    return out
