"""
Exchange Hamiltonian on one excitation sector.

    H = g1 (C1 + C1^dag) + g2 (C2 + C2^dag),   C_m = R+ a_m / sqrt(N)

With real couplings H is real symmetric. In the unnormalized convention
H' = sqrt(N) [eps_1 (R+ a_1 + h.c.) + eps_2 (R+ a_2 + h.c.)] the same matrix is
obtained with g_m = N * eps_m.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..errors import DomainError, SectorMismatchError
from ..sector import DickeModel, SectorBasis, coupling_matrix
from .pulses import PulseSegment

logger = logging.getLogger(__name__)

HERMITICITY_TOLERANCE = 1e-14


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    """Dense Hamiltonian of one sector."""

    sector: SectorBasis
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (self.sector.dim, self.sector.dim):
            raise SectorMismatchError(f"Hamiltonian shape {matrix.shape} does not match sector dimension {self.sector.dim}")
        object.__setattr__(self, "matrix", matrix)

    def hermiticity_error(self) -> float:
        """Largest entrywise deviation |H - H^dag|."""
        if self.matrix.size == 0:
            return 0.0
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T)))

    def is_hermitian(self, tol: float = HERMITICITY_TOLERANCE) -> bool:
        return self.hermiticity_error() <= tol


@lru_cache(maxsize=256)
def sector_generators(sector: SectorBasis, model: DickeModel) -> Tuple[np.ndarray, np.ndarray]:
    """
    Real symmetric generators A_m = C_m + C_m^dag for both photon modes.

    H = g1 * A_1 + g2 * A_2 on this sector.
    """
    generators = []
    for mode in (1, 2):
        c = coupling_matrix(mode, sector, model).real
        a = c + c.T
        a.setflags(write=False)
        generators.append(a)
    return generators[0], generators[1]


def build_hamiltonian(seg: PulseSegment, sector: SectorBasis, model: DickeModel) -> HamiltonianMatrix:
    """
    Hamiltonian of one pulse segment restricted to a sector.

    Args:
        seg: Pulse segment with couplings g1, g2
        sector: Sector basis
        model: Dicke model the sector was enumerated for

    Returns:
        HamiltonianMatrix holding g1 (C1 + C1^dag) + g2 (C2 + C2^dag)
    """
    a1, a2 = sector_generators(sector, model)
    hamiltonian = HamiltonianMatrix(sector=sector, matrix=seg.g1 * a1 + seg.g2 * a2)
    if not hamiltonian.is_hermitian():
        raise RuntimeError(f"Hamiltonian lost Hermiticity (error {hamiltonian.hermiticity_error():.3e})")
    return hamiltonian


def effective_coupling(g3: float, omega_L: float, delta: float) -> float:
    """
    Effective Raman coupling after adiabatic elimination of the excited level.

    Args:
        g3: Photon coupling to the far-detuned level 3
        omega_L: Control laser Rabi frequency
        delta: Detuning from level 3

    Returns:
        eps = g3 * omega_L / delta

    Raises:
        DomainError: On resonance (delta = 0), where elimination is invalid
    """
    if delta == 0:
        raise DomainError("Adiabatic elimination requires a non-zero detuning from level 3")
    return g3 * omega_L / delta
