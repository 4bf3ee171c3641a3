"""Excitation sectors and the collective Dicke ladder."""

from .dicke import DickeModel, dicke_step_coeff, ladder_deviation, raising_matrix
from .basis import (
    Occupation,
    SectorBasis,
    StateVector,
    basis_state,
    coupling_matrix,
    enumerate_sector,
    sector_size,
    superposition,
)

__all__ = [
    "DickeModel",
    "dicke_step_coeff",
    "ladder_deviation",
    "raising_matrix",
    "Occupation",
    "SectorBasis",
    "StateVector",
    "basis_state",
    "coupling_matrix",
    "enumerate_sector",
    "sector_size",
    "superposition",
]
