"""Monodromy invariants of hypersurface singularities, computed from an
embedded resolution and independently from jet counts over finite fields."""

from .poly import MultiPoly, parse_poly, mult_at_point
from .resolve import ResolutionData, resolve, load_resolution

__version__ = "0.1.0"

__all__ = ["MultiPoly", "parse_poly", "mult_at_point", "ResolutionData", "resolve", "load_resolution"]
