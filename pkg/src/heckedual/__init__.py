"""Exact Hecke algebra computations over Coxeter groups.

Builds finite (or length-truncated) Coxeter groups, the Hecke algebra over
Z[v, v^-1], the Kazhdan-Lusztig basis, the Ext bilinear form and the
projective basis, and verifies the duality identities connecting them.
"""

from .laurent import LaurentPoly
from .coxeter import (
    CoxeterMatrix,
    GroupContext,
    build,
    CoxeterError,
    OutOfWindowError,
    IncompleteContextError,
    EnumerationCapError,
)
from .hecke import HeckeAlgebra, HeckeElement, ConsistencyError
from .klbasis import KLBasis
from .projective import ProjectiveBasis

__all__ = [
    "LaurentPoly",
    "CoxeterMatrix",
    "GroupContext",
    "build",
    "CoxeterError",
    "OutOfWindowError",
    "IncompleteContextError",
    "EnumerationCapError",
    "HeckeAlgebra",
    "HeckeElement",
    "ConsistencyError",
    "KLBasis",
    "ProjectiveBasis",
]

__version__ = "0.1.0"
