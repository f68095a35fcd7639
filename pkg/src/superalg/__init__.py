"""Exact invariants of finitely generated supercommutative superalgebras.

Public surface: polynomial arithmetic (superpoly), module Gröbner bases
and superideals (groebner), dimension theory (sdim), Harish-Chandra pair
groups (hcgroup), odd unipotent orbits (orbits), the text format (dsl)
and the command line (cli).
"""

__version__ = "0.1.0"

from superalg.scalars import QQ, Field, FieldError
from superalg.superpoly import ParityError, StructureError, SuperPoly, VarSet

__all__ = [
    "QQ",
    "Field",
    "FieldError",
    "ParityError",
    "StructureError",
    "SuperPoly",
    "VarSet",
    "__version__",
]
