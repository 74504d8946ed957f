"""
qmds - quantum MDS codes from Hermitian self-orthogonal generalized Reed-Solomon codes.
"""

from qmds.gf import ZERO, FieldContext, FieldError, make_field
from qmds.grs import BudgetExceededError, CodeError, GrsCode, QuantumParams, quantum_params

__version__ = "0.1.0"

__all__ = [
    "ZERO",
    "BudgetExceededError",
    "CodeError",
    "FieldContext",
    "FieldError",
    "GrsCode",
    "QuantumParams",
    "make_field",
    "quantum_params",
]
