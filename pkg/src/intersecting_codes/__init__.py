"""Intersecting linear codes over finite fields and their projective systems."""

from .constructions import catalogue, concatenate, rs_arc_code, rs_code, sparse_tetrahedron
from .errors import BudgetExceeded, DegenerateCode, FieldMismatch, InsufficientCoverage, NotConverged
from .finite_field import FieldCtx, expand, gf, make_field
from .intersecting_checks import (
    is_intersecting,
    is_intersecting_geometric,
    is_intersecting_supports,
    is_minimal_code,
    is_outer_minimal_base2,
)
from .linalg_codes import LinearCode
from .projective_geometry import ProjectiveSystem, is_t_cohyperplanar, system_from_generator

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DegenerateCode",
    "FieldCtx",
    "FieldMismatch",
    "InsufficientCoverage",
    "LinearCode",
    "NotConverged",
    "ProjectiveSystem",
    "catalogue",
    "concatenate",
    "expand",
    "gf",
    "is_intersecting",
    "is_intersecting_geometric",
    "is_intersecting_supports",
    "is_minimal_code",
    "is_outer_minimal_base2",
    "is_t_cohyperplanar",
    "make_field",
    "rs_arc_code",
    "rs_code",
    "sparse_tetrahedron",
    "system_from_generator",
]
