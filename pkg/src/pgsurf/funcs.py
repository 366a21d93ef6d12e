"""Closed-form C^2 scalar functions with exact first and second derivatives.

Every node evaluates a second-order jet ``(value, d1, d2)`` by structural
rules, so derivatives never come from numeric differencing. All methods
accept a float or a numpy array of arguments.

Each node carries a closed validity interval ``domain = (lo, hi)``;
:class:`Power` additionally requires a positive base ``m*t + b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping

import numpy as np

from .errors import DomainError, SpecError

Interval = tuple[float, float]
_EVERYWHERE: Interval = (-math.inf, math.inf)


def _zeros_like(t):
    return 0.0 * np.asarray(t, dtype=float) if np.ndim(t) else 0.0


class C2Fn:
    """Base class. Subclasses implement ``_jet`` and ``_params``."""

    domain: Interval
    kind: str = ""

    def _jet(self, t):
        raise NotImplementedError

    def _params(self) -> dict:
        raise NotImplementedError

    def _valid_here(self, t):
        return True

    def _children(self) -> tuple[C2Fn, ...]:
        return ()

    def valid(self, t):
        """Boolean (or boolean array) telling where the jet is defined."""
        t = np.asarray(t, dtype=float)
        lo, hi = self.domain
        ok = (t >= lo) & (t <= hi) & np.isfinite(t)
        ok = ok & self._valid_here(t)
        for child in self._children():
            ok = ok & child.valid(t)
        return ok if ok.ndim else bool(ok)

    def check(self, t) -> None:
        ok = self.valid(t)
        if not np.all(ok):
            bad = t if np.ndim(t) == 0 else np.asarray(t)[~np.asarray(ok)][0]
            raise DomainError(f"{self!r} is undefined at t={float(bad)!r}")

    def jet(self, t):
        self.check(t)
        return self._jet(t)

    def eval(self, t):
        return self.jet(t)[0]

    def d1(self, t):
        return self.jet(t)[1]

    def d2(self, t):
        return self.jet(t)[2]

    __call__ = eval

    def fd_check(self, t: float, h: float) -> tuple[float, float]:
        """Central-difference estimates of (f'(t), f''(t)). Test oracle only."""
        if not h > 0:
            raise ValueError(f"step must be positive, got h={h!r}")
        self.check(np.array([t - h, t, t + h]))
        fm, f0, fp = (float(self._jet(s)[0]) for s in (t - h, t, t + h))
        return (fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind, **self._params()}
        if self.domain != _EVERYWHERE:
            out["domain"] = list(self.domain)
        return out


@dataclass(frozen=True)
class Constant(C2Fn):
    c: float
    domain: Interval = _EVERYWHERE
    kind = "const"

    def _jet(self, t):
        z = _zeros_like(t)
        return self.c + z, z, z

    def _params(self):
        return {"c": self.c}


@dataclass(frozen=True)
class Linear(C2Fn):
    """m*t + b"""

    m: float
    b: float
    domain: Interval = _EVERYWHERE
    kind = "linear"

    def _jet(self, t):
        z = _zeros_like(t)
        return self.m * t + self.b, self.m + z, z

    def _params(self):
        return {"m": self.m, "b": self.b}


@dataclass(frozen=True)
class Quadratic(C2Fn):
    """p*t**2 + q*t + r"""

    p: float
    q: float
    r: float
    domain: Interval = _EVERYWHERE
    kind = "quadratic"

    def _jet(self, t):
        z = _zeros_like(t)
        return self.p * t * t + self.q * t + self.r, 2.0 * self.p * t + self.q, 2.0 * self.p + z

    def _params(self):
        return {"p": self.p, "q": self.q, "r": self.r}


@dataclass(frozen=True)
class Exp(C2Fn):
    """c * exp(k*t)"""

    c: float
    k: float
    domain: Interval = _EVERYWHERE
    kind = "exp"

    def _jet(self, t):
        e = self.c * np.exp(self.k * t)
        return e, self.k * e, self.k * self.k * e

    def _params(self):
        return {"c": self.c, "k": self.k}


@dataclass(frozen=True)
class Tanh(C2Fn):
    """s * tanh(k*t + b)"""

    s: float
    k: float
    b: float
    domain: Interval = _EVERYWHERE
    kind = "tanh"

    def _jet(self, t):
        th = np.tanh(self.k * t + self.b)
        sech2 = 1.0 - th * th
        sk = self.s * self.k
        return self.s * th, sk * sech2, -2.0 * sk * self.k * th * sech2

    def _params(self):
        return {"s": self.s, "k": self.k, "b": self.b}


@dataclass(frozen=True)
class Power(C2Fn):
    """(m*t + b) ** e, defined where the base is positive."""

    m: float
    b: float
    e: float
    domain: Interval = _EVERYWHERE
    kind = "power"

    def _valid_here(self, t):
        return self.m * t + self.b > 0.0

    def _jet(self, t):
        u = self.m * t + self.b
        e, m = self.e, self.m
        return u**e, e * m * u ** (e - 1.0), e * (e - 1.0) * m * m * u ** (e - 2.0)

    def _params(self):
        return {"m": self.m, "b": self.b, "e": self.e}


@dataclass(frozen=True)
class Sum(C2Fn):
    args: tuple[C2Fn, ...]
    domain: Interval = _EVERYWHERE
    kind = "sum"

    def __post_init__(self):
        if not self.args:
            raise ValueError("Sum needs at least one term")
        object.__setattr__(self, "args", tuple(self.args))

    def _children(self):
        return self.args

    def _jet(self, t):
        v, d1, d2 = self.args[0]._jet(t)
        for arg in self.args[1:]:
            w, e1, e2 = arg._jet(t)
            v, d1, d2 = v + w, d1 + e1, d2 + e2
        return v, d1, d2

    def _params(self):
        return {"args": [a.to_dict() for a in self.args]}


@dataclass(frozen=True)
class Product(C2Fn):
    args: tuple[C2Fn, ...]
    domain: Interval = _EVERYWHERE
    kind = "product"

    def __post_init__(self):
        if not self.args:
            raise ValueError("Product needs at least one factor")
        object.__setattr__(self, "args", tuple(self.args))

    def _children(self):
        return self.args

    def _jet(self, t):
        u, u1, u2 = self.args[0]._jet(t)
        for arg in self.args[1:]:
            w, w1, w2 = arg._jet(t)
            u, u1, u2 = u * w, u1 * w + u * w1, u2 * w + 2.0 * u1 * w1 + u * w2
        return u, u1, u2

    def _params(self):
        return {"args": [a.to_dict() for a in self.args]}


@dataclass(frozen=True)
class Scale(C2Fn):
    c: float
    arg: C2Fn
    domain: Interval = _EVERYWHERE
    kind = "scale"

    def _children(self):
        return (self.arg,)

    def _jet(self, t):
        v, d1, d2 = self.arg._jet(t)
        return self.c * v, self.c * d1, self.c * d2

    def _params(self):
        return {"c": self.c, "args": [self.arg.to_dict()]}


_PRIMITIVES: dict[str, tuple[type, tuple[str, ...]]] = {
    "const": (Constant, ("c",)),
    "linear": (Linear, ("m", "b")),
    "quadratic": (Quadratic, ("p", "q", "r")),
    "exp": (Exp, ("c", "k")),
    "tanh": (Tanh, ("s", "k", "b")),
    "power": (Power, ("m", "b", "e")),
}
KINDS = (*_PRIMITIVES, "sum", "product", "scale")


def _number(doc: Mapping, key: str, path: str) -> float:
    if key not in doc:
        raise SpecError(f"{path}/{key}", "missing required number")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecError(f"{path}/{key}", f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SpecError(f"{path}/{key}", "must be finite")
    return float(value)


def _interval(doc: Mapping, path: str) -> Interval:
    raw = doc.get("domain")
    if raw is None:
        return _EVERYWHERE
    if not isinstance(raw, list) or len(raw) != 2:
        raise SpecError(f"{path}/domain", "expected [lo, hi]")
    lo, hi = (_number({"v": v}, "v", f"{path}/domain/{i}") for i, v in enumerate(raw))
    if not lo <= hi:
        raise SpecError(f"{path}/domain", f"empty interval [{lo}, {hi}]")
    return lo, hi


def from_dict(doc: Any, path: str = "") -> C2Fn:
    """Build a function tree from its JSON node, reporting JSON-pointer paths."""
    if not isinstance(doc, Mapping):
        raise SpecError(path, "expected an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SpecError(f"{path}/kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    domain = _interval(doc, path)
    if kind in _PRIMITIVES:
        cls, names = _PRIMITIVES[kind]
        return cls(*(_number(doc, n, path) for n in names), domain=domain)

    args = doc.get("args")
    if not isinstance(args, list) or not args:
        raise SpecError(f"{path}/args", "expected a non-empty list of function nodes")
    children = tuple(from_dict(a, f"{path}/args/{i}") for i, a in enumerate(args))
    if kind == "sum":
        return Sum(children, domain=domain)
    if kind == "product":
        return Product(children, domain=domain)
    if len(children) != 1:
        raise SpecError(f"{path}/args", "scale takes exactly one argument")
    return Scale(_number(doc, "c", path), children[0], domain=domain)
