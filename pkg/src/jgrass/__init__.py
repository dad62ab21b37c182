"""Rational subgeometries of Grassmannians of A_n and D_n buildings over finite fields."""

__version__ = "0.1.0"

from .gf import FieldSpec, make_field
from .grassmann import GeometrySpec, Grassmannian, PolarGrassmannian, make_geometry
from .rational_geom import RationalContext, nearly_rational, rational_points, witness_outside_omega
from .generation import closure, k0_generated

__all__ = [
    "__version__", "FieldSpec", "make_field", "GeometrySpec", "Grassmannian", "PolarGrassmannian",
    "make_geometry", "RationalContext", "nearly_rational", "rational_points", "witness_outside_omega",
    "closure", "k0_generated",
]
