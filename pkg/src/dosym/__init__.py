"""Degree of symmetry of quantum Hamiltonians and states under products of SO(2).

The core quantity compares an operator with its image under independent
phase rotations about the z axis of every spin, averaged over the group.
Closed forms for a mean-field spin model, the BCS pseudospin model and a
Dicke-type condensate are checked against direct matrix evaluation.
"""
from .operators import Operator, State, thermal_state
from .symmetry import (
    DosResult,
    GroupSpec,
    SO2ProductElement,
    UndefinedDosError,
    dos_hamiltonian,
    dos_state,
)
from .numerics import BracketError, ConvergenceError

__all__ = [
    "BracketError",
    "ConvergenceError",
    "DosResult",
    "GroupSpec",
    "Operator",
    "SO2ProductElement",
    "State",
    "UndefinedDosError",
    "dos_hamiltonian",
    "dos_state",
    "thermal_state",
]
__version__ = "0.1.0"
