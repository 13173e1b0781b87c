"""Finite-dimensional verification toolkit for quantum permutation group actions
on glued product spaces ``X_n x Y / ~``.

Submodules
----------
numerics   dense complex linear algebra helpers
magic      magic unitaries and the comultiplication
ncalg      symbolic engine for the magic-unitary relations
spaces     discretized base spaces and the gluing relation
coaction   the coaction and its verification routines
cli        command-line front end
"""

from qperm.errors import DimensionError, StructuralError
from qperm.report import CheckReport

__all__ = ["CheckReport", "DimensionError", "StructuralError"]
__version__ = "0.1.0"
