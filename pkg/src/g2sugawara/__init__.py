"""Exact verification of the Segal-Sugawara vectors of type G2 and their applications.

Modules:

``exact``     Q(sqrt 2) scalars, parameter polynomials, rational functions in u
``g2``        the 7-dimensional matrix presentation, structure table, tensor operators
``pbw``       loop generators, PBW normal ordering, cyclic-module engine
``sugawara``  the matrices G[r], trace vectors S2..S6 and their invariance
``walgebra``  Miura transformation, screening operators, Harish-Chandra images
``gaudin``    shift-of-argument subalgebras, Gaudin eigenvalues, Bethe equations
``cli``       command-line certificates
"""
from __future__ import annotations

__version__ = "0.1.0"
SCHEMA_VERSION = "1.0.0"


def report_schema_version() -> str:
    return SCHEMA_VERSION
