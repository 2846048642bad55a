"""Orbits, characteristic cycles and micro-packets for G2(lambda) symmetric pairs."""

from .ccsolver import NonUniqueError, SolverError, solve_integral
from .fixtures import FixtureError
from .orbitgeom import get_pair, orbit_model

__version__ = "0.1.0"

__all__ = [
    "FixtureError",
    "NonUniqueError",
    "SolverError",
    "get_pair",
    "orbit_model",
    "solve_integral",
    "__version__",
]
