"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PGSurfError(Exception):
    """Base class for all package errors."""


class DomainError(PGSurfError, ValueError):
    """A function or surface was evaluated outside its domain of validity."""


class CurvatureError(PGSurfError, ArithmeticError):
    """A curvature quantity is undefined at the requested point."""


class LightlikeNormal(CurvatureError):
    """(f g')^2 == 1: the normal is lightlike and D vanishes."""


class TimelikeNormal(CurvatureError):
    """(f g')^2 > 1: D is not real, so the second form and H are undefined."""


class DegenerateRelation(CurvatureError):
    """The factor A(x, z) relating H and K has a vanishing denominator."""


class ConstraintError(PGSurfError, ValueError):
    """Family constants violate a reality constraint."""


class SpecError(PGSurfError, ValueError):
    """A JSON surface spec is malformed. ``path`` is a JSON-pointer."""

    def __init__(self, path: str, message: str):
        self.path = path or "/"
        super().__init__(f"{self.path}: {message}")
