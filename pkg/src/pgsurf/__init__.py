"""Affine factorable surfaces of the second kind in pseudo-Galilean 3-space.

Metric operations, fundamental forms, Gaussian and mean curvature, the
closed-form classification families, and grid residual verification.
"""

from .curvature import (CurvatureField, CurvaturePoint, FormBundle, curvature_field, curvature_general,
                        curvature_point, form_bundle, gauss_closed, mean_closed, omega, relation_A)
from .errors import (ConstraintError, CurvatureError, DegenerateRelation, DomainError, LightlikeNormal,
                     PGSurfError, SpecError, TimelikeNormal)
from .families import ExpectedInvariant, FamilySpec, build, catalog
from .funcs import C2Fn, Constant, Exp, Linear, Power, Product, Quadratic, Scale, Sum, Tanh
from .pg_core import CausalClass, PGVec3, classify, pg_cross, pg_distance, pg_dot, pg_norm
from .surface import FactorableSurface, Rect, partials, position
from .verify import GridSpec, VerificationReport, oracle_compare, relation_check, tanh_rate_probe, verify_family

__version__ = "0.1.0"
