"""Closed-form families from the flat / minimal / constant-curvature classification.

Every family is addressed by a kebab-case name and a dict of constants.
``build`` turns a :class:`FamilySpec` into a surface plus the curvature
invariant the classification claims for it. Constant names follow the
derivations (c1..c10, b1..b13, lam1..lam6); where a printed solution reuses
one symbol for two independent constants, the second copy gets a suffix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import ConstraintError
from .funcs import C2Fn, Constant, Exp, Linear, Power, Quadratic, Sum, Tanh
from .surface import FactorableSurface, Rect

K_ZERO = "K_zero"
H_ZERO = "H_zero"
K_CONST = "K_const"
H_CONST = "H_const"


@dataclass(frozen=True)
class ExpectedInvariant:
    kind: str
    value: float = 0.0
    disputed: bool = False

    @property
    def quantity(self) -> str:
        return self.kind[0]

    def describe(self) -> str:
        if self.kind in (K_ZERO, H_ZERO):
            return f"{self.quantity} = 0"
        return f"{self.quantity} = {self.value!r}"


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def default(cls, name: str, **overrides) -> FamilySpec:
        fam = get_family(name)
        unknown = set(overrides) - set(fam.defaults)
        if unknown:
            raise ConstraintError(f"{name}: unknown constant(s) {sorted(unknown)}; "
                                  f"expected {sorted(fam.defaults)}")
        return cls(name, {**fam.defaults, **overrides})


@dataclass(frozen=True)
class Family:
    name: str
    group: str
    formula: str
    build: Callable[[Mapping, Rect], tuple[C2Fn, C2Fn, float, ExpectedInvariant]]
    defaults: Mapping[str, object]
    domain: Rect
    example: Optional[str] = None
    note: str = ""


def _require(ok: bool, family: str, inequality: str, **values) -> None:
    if not ok:
        shown = ", ".join(f"{k}={v!r}" for k, v in values.items())
        raise ConstraintError(f"{family}: constraint {inequality} violated ({shown})")


def _v_range(dom: Rect, a: float) -> tuple[float, float]:
    corners = [z + a * x for x in (dom.x_min, dom.x_max) for z in (dom.z_min, dom.z_max)]
    return min(corners), max(corners)


# -- flat families ---------------------------------------------------------

def _flat_f_const(p, dom):
    return Constant(p["f0"]), p["g"], p["a"], ExpectedInvariant(K_ZERO)


def _flat_g_const(p, dom):
    return p["f"], Constant(p["g0"]), p["a"], ExpectedInvariant(K_ZERO)


def _flat_exp(p, dom):
    # y = c5 exp(c6 x + c4 z) with f = c5 exp(c2 x), g = exp(c4 v), c6 = c2 + a c4
    c2 = p["c6"] - p["a"] * p["c4"]
    return Exp(p["c5"], c2), Exp(1.0, p["c4"]), p["a"], ExpectedInvariant(K_ZERO)


def _flat_power(p, dom):
    k, a = p["k"], p["a"]
    _require(k not in (0.0, 1.0), "flat-power", "k not in {0, 1}", k=k)
    mf, bf = (1.0 - k) * p["c7"], (1.0 - k) * p["c8"]
    r = (k - 1.0) / k
    mg, bg = r * p["c9"], r * p["c10"]
    lo, hi = _v_range(dom, a)
    for x in (dom.x_min, dom.x_max):
        _require(mf * x + bf > 0, "flat-power", "(1-k)(c7 x + c8) > 0 on the domain", x=x)
    for v in (lo, hi):
        _require(mg * v + bg > 0, "flat-power", "((k-1)/k)(c9 v + c10) > 0 on the domain", v=v)
    f = Power(mf, bf, 1.0 / (1.0 - k), domain=(dom.x_min, dom.x_max))
    g = Power(mg, bg, k / (k - 1.0), domain=(lo, hi))
    return f, g, a, ExpectedInvariant(K_ZERO)


# -- minimal families ------------------------------------------------------

def _min_linear_g(p, dom):
    return Constant(p["f0"]), Linear(p["b1"], p["b2"]), p["a"], ExpectedInvariant(H_ZERO)


def _min_sqrt_g(p, dom):
    f0, a = p["f0"], p["a"]
    _require(a * a > 1.0, "min-sqrt-g", "a**2 > 1", a=a)
    _require(f0 != 0.0, "min-sqrt-g", "f0 != 0", f0=f0)
    slope = math.sqrt((a * a - 1.0) / (a * a * f0 * f0))
    return Constant(f0), Linear(slope, p["b3"]), a, ExpectedInvariant(H_ZERO)


def _min_linear_f(p, dom):
    return Linear(p["b4"], p["b5"]), Constant(p["g0"]), p["a"], ExpectedInvariant(H_ZERO)


def _min_f_lin_g_const(p, dom):
    return Linear(p["b6"], p["b7"]), Constant(p["b8"]), p["a"], ExpectedInvariant(H_ZERO)


def _min_f_lin_g_lin(p, dom):
    # measured H = -a f' g' / D, nonzero unless a f' g' = 0
    return (Linear(p["b6"], p["b7"]), Linear(p["b9"], p["b10"]), p["a"],
            ExpectedInvariant(H_ZERO, disputed=True))


def _min_g_lin_f_lin(p, dom):
    return (Linear(p["b12x"], p["b13"]), Linear(p["b11"], p["b12"]), p["a"],
            ExpectedInvariant(H_ZERO, disputed=True))


def _min_g_lin_f_const(p, dom):
    b11 = p["b11"]
    _require(b11 != 0.0, "min-g-lin-f-const", "b11 != 0", b11=b11)
    return Constant(1.0 / b11), Linear(b11, p["b12"]), p["a"], ExpectedInvariant(H_ZERO)


# -- constant curvature families ------------------------------------------

def const_k_factors(K0: float, g0: float, lam1: float, lam2: float, sign: float = 1.0,
                    proof_variant: bool = False) -> tuple[C2Fn, C2Fn]:
    """f = +-(1/g0) tanh(w x -+ g0 lam1), g = g0 v + lam2.

    The rate ``w`` is sqrt(K0), or g0*sqrt(K0) for ``proof_variant``.
    """
    _require(K0 > 0.0, "const-k", "K0 > 0", K0=K0)
    _require(g0 != 0.0, "const-k", "g0 != 0", g0=g0)
    _require(sign in (1.0, -1.0), "const-k", "sign in {+1, -1}", sign=sign)
    rate = math.sqrt(K0) * (g0 if proof_variant else 1.0)
    return Tanh(sign / g0, rate, -sign * g0 * lam1), Linear(g0, lam2)


def _const_k(p, dom):
    f, g = const_k_factors(p["K0"], p["g0"], p["lam1"], p["lam2"], float(p["sign"]))
    return f, g, p["a"], ExpectedInvariant(K_CONST, p["K0"])


def _const_h_a(p, dom):
    H0, f0, lam3, a = p["H0"], p["f0"], p["lam3"], p["a"]
    _require(H0 != 0.0, "const-h-a", "H0 != 0", H0=H0)
    _require(f0 != 0.0, "const-h-a", "f0 != 0", f0=f0)
    disc = 9.0 * H0 * H0 - a ** 4 * f0 * f0 * lam3 * lam3
    _require(disc >= 0.0, "const-h-a", "9 H0**2 >= a**4 f0**2 lam3**2", H0=H0, a=a, f0=f0, lam3=lam3)
    _require(p["sign"] in (1.0, -1.0), "const-h-a", "sign in {+1, -1}", sign=p["sign"])
    slope = float(p["sign"]) * math.sqrt(disc) / (3.0 * f0 * H0)
    return Constant(f0), Linear(slope, p["lam4"]), a, ExpectedInvariant(H_CONST, H0, disputed=True)


def _const_h_b(p, dom):
    H0, g0 = p["H0"], p["g0"]
    _require(H0 != 0.0, "const-h-b", "H0 != 0", H0=H0)
    _require(g0 != 0.0, "const-h-b", "g0 != 0", g0=g0)
    return Quadratic(-H0 / g0, p["lam5"], p["lam6"]), Constant(g0), p["a"], ExpectedInvariant(H_CONST, H0)


_UNIT = Rect(-1.0, 1.0, -1.0, 1.0)

FAMILIES: dict[str, Family] = {
    fam.name: fam
    for fam in [
        Family("flat-f-const", "flat", "y = f0 g(z + a x)", _flat_f_const,
               {"f0": 0.5, "g": Sum((Quadratic(0.1, 0.0, 0.0), Tanh(1.0, 1.0, 0.0))), "a": 1.0}, _UNIT),
        Family("flat-g-const", "flat", "y = g0 f(x)", _flat_g_const,
               {"g0": 2.0, "f": Sum((Exp(1.0, 0.5), Quadratic(1.0, -1.0, 0.0))), "a": 1.0}, _UNIT),
        Family("flat-exp", "flat", "y = c5 exp(c6 x + c4 z)", _flat_exp,
               {"c5": 8.0, "c6": 6.0, "c4": 1.0, "a": 1.0}, Rect(-1.0, 1.0, 0.0, 2.0 * math.pi),
               example="fig1"),
        Family("flat-power", "flat",
               "y = [(1-k)(c7 x + c8)]^(1/(1-k)) [((k-1)/k)(c9 v + c10)]^(k/(k-1))", _flat_power,
               {"k": 2.0, "c7": -1.0, "c8": -3.0, "c9": 0.2, "c10": 2.0, "a": 1.0}, _UNIT),
        Family("min-linear-g", "minimal", "y = f0 (b1 v + b2)", _min_linear_g,
               {"f0": 0.5, "b1": 1.0, "b2": 0.0, "a": 2.0}, _UNIT),
        Family("min-sqrt-g", "minimal", "y = f0 (sqrt((a^2-1)/(a^2 f0^2)) v + b3)", _min_sqrt_g,
               {"f0": 1.0, "b3": 9.0, "a": 2.0}, Rect(0.0, 15.0, -1.0, 30.0), example="fig2"),
        Family("min-linear-f", "minimal", "y = g0 (b4 x + b5)", _min_linear_f,
               {"g0": 2.0, "b4": 1.5, "b5": -1.0, "a": 1.0}, _UNIT),
        Family("min-f-lin-g-const", "minimal", "y = b8 (b6 x + b7)", _min_f_lin_g_const,
               {"b6": 1.0, "b7": 0.5, "b8": 2.0, "a": 1.0}, _UNIT),
        Family("min-f-lin-g-lin", "minimal", "y = (b6 x + b7)(b9 v + b10)", _min_f_lin_g_lin,
               {"b6": 0.5, "b7": 0.25, "b9": 0.5, "b10": 1.0, "a": 1.0}, _UNIT,
               note="measured H = -a b6 b9 / D is not zero for a b6 b9 != 0"),
        Family("min-g-lin-f-lin", "minimal", "y = (b12x x + b13)(b11 v + b12)", _min_g_lin_f_lin,
               {"b11": 0.5, "b12": 1.0, "b12x": 0.5, "b13": 0.25, "a": 1.0}, _UNIT,
               note="measured H = -a b12x b11 / D is not zero for a b12x b11 != 0"),
        Family("min-g-lin-f-const", "minimal", "y = (1/b11)(b11 v + b12)", _min_g_lin_f_const,
               {"b11": 2.0, "b12": 0.5, "a": 1.0}, _UNIT,
               note="f g' = 1 identically: every point has a lightlike normal"),
        Family("const-k", "constant-K", "y = (g0 v + lam2)(+-(1/g0) tanh(sqrt(K0) x -+ g0 lam1))", _const_k,
               {"K0": 1.0, "g0": 1.0, "lam1": 0.0, "lam2": 0.0, "a": 10.0, "sign": 1.0}, _UNIT,
               example="fig3"),
        Family("const-h-a", "constant-H", "y = f0 (+-sqrt(9 H0^2 - a^4 f0^2 lam3^2)/(3 f0 H0) v + lam4)", _const_h_a,
               {"H0": 1.0, "f0": 0.5, "lam3": 1.0, "lam4": 0.0, "a": 2.0, "sign": 1.0}, _UNIT,
               note="g is linear so g'' = 0, which forces H = 0"),
        Family("const-h-b", "constant-H", "y = g0 (-(H0/g0) x^2 + lam5 x + lam6)", _const_h_b,
               {"H0": 1.0, "g0": 1.0, "lam5": 2.0, "lam6": 1.0, "a": 1.0}, _UNIT, example="fig4"),
    ]
}


def get_family(name: str) -> Family:
    try:
        return FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; valid names: {', '.join(FAMILIES)}") from None


def build(spec: FamilySpec, domain: Optional[Rect] = None) -> tuple[FactorableSurface, ExpectedInvariant]:
    fam = get_family(spec.name)
    params = {**fam.defaults, **spec.params}
    dom = domain or fam.domain
    f, g, a, inv = fam.build(params, dom)
    return FactorableSurface(f, g, float(a), dom), inv


@dataclass(frozen=True)
class CatalogEntry:
    spec: FamilySpec
    domain: Rect
    family: Family

    def to_dict(self) -> dict:
        params = {k: (v.to_dict() if isinstance(v, C2Fn) else v) for k, v in self.spec.params.items()}
        _, inv = build(self.spec, self.domain)
        return {
            "family": self.family.name,
            "group": self.family.group,
            "formula": self.family.formula,
            "constants": params,
            "domain": self.domain.as_list(),
            "expected": inv.describe(),
            "disputed": inv.disputed,
            "example": self.family.example,
            "note": self.family.note or None,
        }


def catalog() -> list[CatalogEntry]:
    return [CatalogEntry(FamilySpec(f.name, dict(f.defaults)), f.domain, f) for f in FAMILIES.values()]
