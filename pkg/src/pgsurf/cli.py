"""Command-line front end.

Machine-readable JSON goes to stdout, diagnostics to stderr. Exit codes:
0 success (PASS / DEGENERATE / DISPUTED-REPORT), 1 a verification FAIL,
2 bad input (schema, unknown family, constraint), 3 domain or degeneracy.

Surface spec documents look like::

    {"a": 2.0,
     "f": {"kind": "const", "c": 1.0},
     "g": {"kind": "linear", "m": 0.866, "b": 9.0},
     "domain": [0, 15, -1, 30]}
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Optional

from . import export
from .curvature import curvature_point, form_bundle
from .errors import ConstraintError, CurvatureError, DomainError, SpecError
from .families import FAMILIES, FamilySpec, build, catalog, get_family
from .funcs import from_dict
from .pg_core import CausalClass, pg_dot
from .surface import FactorableSurface, Rect, partials
from .verify import (FAIL, GridSpec, oracle_compare, relation_check, tanh_rate_probe,
                     verify_family, verify_surface)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3

FIGURES = [
    ("fig1", "flat-exp"),
    ("fig2", "min-sqrt-g"),
    ("fig3", "const-k"),
    ("fig4", "const-h-b"),
]


class InputError(Exception):
    """Bad command-line input; exits with code 2."""


def surface_from_doc(doc: Any) -> FactorableSurface:
    if not isinstance(doc, dict):
        raise SpecError("", "expected a JSON object")
    for key in ("a", "f", "g", "domain"):
        if key not in doc:
            raise SpecError(f"/{key}", "missing required field")
    a = doc["a"]
    if isinstance(a, bool) or not isinstance(a, (int, float)) or not math.isfinite(a):
        raise SpecError("/a", f"expected a finite number, got {a!r}")
    dom = doc["domain"]
    if (not isinstance(dom, list) or len(dom) != 4
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in dom)):
        raise SpecError("/domain", "expected [x_min, x_max, z_min, z_max]")
    try:
        rect = Rect.from_seq(dom)
    except ValueError as exc:
        raise SpecError("/domain", str(exc)) from None
    return FactorableSurface(from_dict(doc["f"], "/f"), from_dict(doc["g"], "/g"), float(a), rect)


def surface_to_doc(s: FactorableSurface) -> dict:
    return {"a": s.a, "f": s.f.to_dict(), "g": s.g.to_dict(), "domain": s.domain.as_list()}


def load_surface(path: str) -> FactorableSurface:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError("", f"invalid JSON: {exc}") from None
    return surface_from_doc(doc)


def _parse_value(text: str):
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        raise InputError(f"cannot parse value {text!r}") from None
    if isinstance(value, dict):
        return from_dict(value)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"expected a number or a function node, got {text!r}")
    return float(value)


def family_spec(name: str, assignments: list[str]) -> FamilySpec:
    if name not in FAMILIES:
        raise InputError(f"unknown family {name!r}; valid names: {', '.join(FAMILIES)}")
    overrides = {}
    for item in assignments or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--set expects NAME=VALUE, got {item!r}")
        overrides[key.strip()] = _parse_value(value)
    try:
        return FamilySpec.default(name, **overrides)
    except ConstraintError as exc:
        raise InputError(str(exc)) from None


def parse_grid(text: str) -> tuple[int, int]:
    try:
        nx, nz = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 101x101, got {text!r}") from None
    return nx, nz


def _resolve_surface(args) -> tuple[FactorableSurface, Optional[FamilySpec]]:
    if args.spec:
        return load_surface(args.spec), None
    spec = family_spec(args.family, args.set)
    rect = Rect.from_seq(args.domain) if getattr(args, "domain", None) else None
    s, _ = build(spec, rect)
    return s, spec


def _grid_for(args, rect: Rect) -> GridSpec:
    if getattr(args, "domain", None):
        rect = Rect.from_seq(args.domain)
    nx, nz = args.grid
    return GridSpec(nx, nz, rect)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, allow_nan=False) + "\n")


# -- commands ---------------------------------------------------------------

def cmd_forms(args) -> int:
    s, _ = _resolve_surface(args)
    b = form_bundle(s, args.x, args.z)
    _emit({"E": b.E, "F": b.F, "G": b.G, "L": b.L, "M": b.M, "N": b.N, "D": b.D,
           "normal": list(b.normal)})
    return EXIT_OK


def cmd_curvature(args) -> int:
    s, _ = _resolve_surface(args)
    cp = curvature_point(s, args.x, args.z)
    p = partials(s, args.x, args.z)
    out: dict[str, Any] = {}
    if cp.normal_class is CausalClass.SPACELIKE:
        b = form_bundle(s, args.x, args.z)
        out.update(E=b.E, F=b.F, G=b.G, L=b.L, M=b.M, N=b.N, D=b.D)
    else:
        out.update(E=pg_dot(p.phi_x, p.phi_x), F=pg_dot(p.phi_x, p.phi_z), G=pg_dot(p.phi_z, p.phi_z))
    out["K"] = cp.K
    if cp.H is not None:
        out["H"] = cp.H
    else:
        out["H_undefined"] = "timelike normal: (f g')^2 > 1, D is not real"
    out["omega"] = cp.omega
    out["normal_class"] = cp.normal_class.value
    _emit(out)
    return EXIT_OK


def _invariant_from_expect(text: str) -> tuple[str, float]:
    key, _, value = text.partition("=")
    key = key.strip().upper()
    if key not in ("K", "H"):
        raise InputError(f"--expect must be K=<value> or H=<value>, got {text!r}")
    try:
        v = float(value)
    except ValueError:
        raise InputError(f"--expect value must be a number, got {text!r}") from None
    return (f"{key}_zero" if v == 0.0 else f"{key}_const"), v


def cmd_verify(args) -> int:
    if args.all:
        reports = []
        for entry in catalog():
            nx, nz = args.grid
            reports.append(verify_family(entry.spec, GridSpec(nx, nz, entry.domain), args.tol))
        rows = [{"family": r.family, "verdict": r.verdict,
                 "max_residual": next(iter(r.residuals.values()))["max"]} for r in reports]
        for row in rows:
            print(f"{row['family']:<20} {row['verdict']:<16} {row['max_residual']}", file=sys.stderr)
        _emit({"reports": [r.to_dict() for r in reports], "summary": rows})
        return EXIT_FAIL if any(r.verdict == FAIL for r in reports) else EXIT_OK

    s, spec = _resolve_surface(args)
    grid = _grid_for(args, s.domain)
    name = spec.name if spec else os.path.basename(args.spec)
    if args.oracle:
        report = oracle_compare(s, grid, name=name, q_max=args.q_max)
    elif args.relation:
        report = relation_check(s, grid, name=name)
    elif spec is not None:
        report = verify_family(spec, grid, args.tol)
    elif args.expect:
        kind, value = _invariant_from_expect(args.expect)
        report = verify_surface(s, kind, value, grid, args.tol, name=name)
    else:
        report = oracle_compare(s, grid, name=name, q_max=args.q_max)
    _emit(report.to_dict())
    return EXIT_FAIL if report.verdict == FAIL else EXIT_OK


def cmd_catalog(args) -> int:
    _emit([e.to_dict() for e in catalog()])
    return EXIT_OK


def cmd_export_mesh(args) -> int:
    s, _ = _resolve_surface(args)
    grid = _grid_for(args, s.domain)
    m = export.mesh(s, grid, with_curvature=args.curvature)
    out = Path(args.out)
    if out.parent and not out.parent.exists():
        out.parent.mkdir(parents=True)
    obj_path, csv_path = out.with_suffix(".obj"), out.with_suffix(".csv")
    export.write_obj(m, obj_path)
    export.write_csv(m, csv_path)
    _emit({"obj": str(obj_path), "csv": str(csv_path),
           "vertices": len(m.vertices), "faces": len(m.faces)})
    return EXIT_OK


def run_figures(outdir: Path, nx: int = 101, nz: int = 101) -> dict:
    outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    for label, name in FIGURES:
        fam = get_family(name)
        spec = FamilySpec.default(name)
        s, _ = build(spec)
        grid = GridSpec(nx, nz, s.domain)
        m = export.mesh(s, grid, with_curvature=True)
        export.write_obj(m, outdir / f"{label}.obj")
        export.write_csv(m, outdir / f"{label}.csv")
        report = verify_family(spec, grid)
        quantity, stats = next(iter(report.residuals.items()))
        summary.append({
            "figure": label,
            "family": name,
            "example": fam.example,
            "formula": fam.formula,
            "domain": s.domain.as_list(),
            "grid": [nx, nz],
            "files": [f"{label}.obj", f"{label}.csv"],
            "target": report.target,
            "max_residual": stats["max"],
            "verdict": report.verdict,
            "counts": report.counts,
        })
    doc = {"figures": summary}
    (outdir / "summary.json").write_text(json.dumps(doc, indent=2) + "\n", encoding="ascii")
    return doc


def cmd_figures(args) -> int:
    nx, nz = args.grid
    doc = run_figures(Path(args.outdir), nx, nz)
    _emit(doc)
    return EXIT_FAIL if any(f["verdict"] == FAIL for f in doc["figures"]) else EXIT_OK


def cmd_typo_probe(args) -> int:
    nx, nz = args.grid
    rect = Rect.from_seq(args.domain) if args.domain else Rect(-1.0, 1.0, -1.0, 1.0)
    try:
        res = tanh_rate_probe(args.K0, args.g0, GridSpec(nx, nz, rect), lam1=args.lam1,
                               lam2=args.lam2, a=args.a, sign=args.sign)
    except ConstraintError as exc:
        raise InputError(str(exc)) from None
    out = {"K0": args.K0, "g0": args.g0}
    for label in ("statement", "proof"):
        r = res[label]
        out[label] = {"max_abs_K_minus_K0": r.residuals["K"]["max"], "K": r.measured["K"],
                      "verdict": r.verdict}
    _emit(out)
    return EXIT_OK


# -- parser -----------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--spec", help="JSON surface spec file")
    src.add_argument("--family", help="catalog family name")
    p.add_argument("--set", action="append", metavar="NAME=VALUE", default=[],
                   help="override a family constant (repeatable)")


def _add_grid(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid", type=parse_grid, default=(101, 101), metavar="NXxNZ",
                   help="grid size (default 101x101)")
    p.add_argument("--domain", type=float, nargs=4, metavar=("XMIN", "XMAX", "ZMIN", "ZMAX"),
                   help="override the sampled rectangle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pgsurf", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, helptext in (("curvature", cmd_curvature, "K, H, omega and forms at a point"),
                               ("forms", cmd_forms, "fundamental form coefficients at a point")):
        p = sub.add_parser(name, help=helptext)
        _add_source(p)
        p.add_argument("x", type=float)
        p.add_argument("z", type=float)
        p.set_defaults(func=fn)

    p = sub.add_parser("verify", help="grid residual check of a family or spec")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec")
    src.add_argument("--family")
    src.add_argument("--all", action="store_true", help="every catalog family")
    p.add_argument("--set", action="append", metavar="NAME=VALUE", default=[])
    _add_grid(p)
    p.add_argument("--tol", type=float, default=None, help="absolute residual tolerance")
    p.add_argument("--expect", help="for --spec: K=<value> or H=<value>")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true", help="closed form vs general formula")
    mode.add_argument("--relation", action="store_true", help="measure H / (A K)")
    p.add_argument("--q-max", type=float, default=None, help="oracle: only nodes with (f g')^2 <= Q")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list classification families")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("figures", help="write meshes of the four worked examples")
    p.add_argument("outdir")
    p.add_argument("--grid", type=parse_grid, default=(101, 101), metavar="NXxNZ")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("export-mesh", help="write OBJ + CSV for a surface")
    _add_source(p)
    _add_grid(p)
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--curvature", action="store_true", help="fill K and H columns")
    p.set_defaults(func=cmd_export_mesh)

    p = sub.add_parser("typo-probe", help="constant-K family: statement vs proof tanh rate")
    p.add_argument("--K0", type=float, required=True)
    p.add_argument("--g0", type=float, required=True)
    p.add_argument("--lam1", type=float, default=0.0)
    p.add_argument("--lam2", type=float, default=0.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--sign", type=float, default=1.0)
    _add_grid(p)
    p.set_defaults(func=cmd_typo_probe)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpecError, InputError, ConstraintError) as exc:
        print(f"pgsurf: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, CurvatureError) as exc:
        print(f"pgsurf: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"pgsurf: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
