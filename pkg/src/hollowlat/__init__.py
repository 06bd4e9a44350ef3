"""Finite multiplicative lattices: construction, predicates, hollowness and theorem checks."""
from .core import (AxiomReport, InvariantError, LatticeError, MultLattice, NotALatticeError,
                   StructureError, join, meet, nilradical, nilpotents, primes, residual, validate)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "AxiomReport", "InvariantError", "LatticeError", "MultLattice", "NotALatticeError",
    "StructureError", "join", "meet", "nilradical", "nilpotents", "primes", "residual",
    "validate", "BACKEND",
]
