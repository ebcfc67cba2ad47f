"""Cubulations of cusped hyperbolic 4-manifolds: cycles of squares, cusp shapes, surgeries and search."""
from .cubulation import Cubulation, CubulationError, Pairing, load, parse, save, validate
from .cycles import invariant_report, trace_cycles
from .hypercube import Facet, SquareFace
from .signed_perm import SignedPerm

__version__ = "0.1.0"

__all__ = [
    "Cubulation",
    "CubulationError",
    "Facet",
    "Pairing",
    "SignedPerm",
    "SquareFace",
    "invariant_report",
    "load",
    "parse",
    "save",
    "trace_cycles",
    "validate",
]
