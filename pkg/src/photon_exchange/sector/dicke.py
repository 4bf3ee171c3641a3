"""
Symmetric Dicke ladder for the collective mode of an atomic medium.

The collective excitation created by R+(p) on N atoms climbs a symmetric
ladder |r> -> |r+1> with matrix element sqrt((r+1)(N-r)). Operators here are
normalized by sqrt(N), so the step coefficient is sqrt((r+1)(N-r)/N) and the
bosonic limit N -> infinity is the harmonic value sqrt(r+1). The couplings
g_m = N * eps_m absorb the rescaling (see PulseSegment.from_physical).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..errors import DomainError

logger = logging.getLogger(__name__)

BOSONIC_LABELS = ("inf", "infinity", "∞", "bosonic")


@dataclass(frozen=True)
class DickeModel:
    """
    Collective-mode model of a medium with ``n_atoms`` atoms.

    ``n_atoms=None`` is the bosonic limit. ``wave_vector_label`` records which
    phase-matched Dicke mode R+(p) is simulated; it has no dynamical effect.
    """

    n_atoms: Optional[int] = None
    wave_vector_label: str = "p"

    def __post_init__(self):
        if self.n_atoms is None:
            return
        if isinstance(self.n_atoms, bool) or not isinstance(self.n_atoms, (int, np.integer)):
            raise DomainError(f"n_atoms must be a positive integer or None, got {self.n_atoms!r}")
        if self.n_atoms < 1:
            raise DomainError(f"n_atoms must be positive, got {self.n_atoms}")
        object.__setattr__(self, "n_atoms", int(self.n_atoms))

    @classmethod
    def bosonic(cls, wave_vector_label: str = "p") -> "DickeModel":
        """Model in the N -> infinity limit."""
        return cls(n_atoms=None, wave_vector_label=wave_vector_label)

    @classmethod
    def from_label(cls, value: Union[int, float, str], wave_vector_label: str = "p") -> "DickeModel":
        """
        Build a model from a CLI/config value.

        Args:
            value: Integer atom number, ``"inf"`` (or ``"∞"``), or ``math.inf``
            wave_vector_label: Metadata tag for the Dicke mode

        Returns:
            DickeModel instance
        """
        if isinstance(value, str):
            text = value.strip().lower()
            if text in BOSONIC_LABELS:
                return cls.bosonic(wave_vector_label)
            try:
                value = int(text)
            except ValueError:
                raise DomainError(f"Unrecognized atom number {value!r}; use a positive integer or 'inf'")
        if isinstance(value, float):
            if math.isinf(value) and value > 0:
                return cls.bosonic(wave_vector_label)
            if not value.is_integer():
                raise DomainError(f"Atom number must be integral, got {value}")
            value = int(value)
        return cls(n_atoms=value, wave_vector_label=wave_vector_label)

    @property
    def is_bosonic(self) -> bool:
        return self.n_atoms is None

    @property
    def label(self) -> str:
        """``"inf"`` for the bosonic limit, else the atom number."""
        return "inf" if self.n_atoms is None else str(self.n_atoms)

    def max_excitations(self, n_exc: int) -> int:
        """Largest collective excitation count reachable in sector ``n_exc``."""
        return n_exc if self.n_atoms is None else min(n_exc, self.n_atoms)


def dicke_step_coeff(r: int, model: DickeModel) -> float:
    """
    Normalized ladder element <r+1| R+/sqrt(N) |r>.

    Args:
        r: Current number of collective excitations
        model: Dicke model (finite N or bosonic limit)

    Returns:
        sqrt((r+1)(N-r)/N) for finite N, sqrt(r+1) in the bosonic limit;
        0 at r = N where the ladder saturates

    Raises:
        DomainError: If r is negative or exceeds N
    """
    if r < 0:
        raise DomainError(f"Collective excitation count must be non-negative, got {r}")
    if model.n_atoms is None:
        return math.sqrt(r + 1)
    n = model.n_atoms
    if r > n:
        raise DomainError(f"Collective excitation count {r} exceeds atom number {n}")
    return math.sqrt((r + 1) * (n - r) / n)


def ladder_deviation(r: int, n_atoms: int) -> float:
    """Ratio of the finite-N step coefficient to its bosonic value, sqrt(1 - r/N)."""
    if n_atoms < 1:
        raise DomainError(f"n_atoms must be positive, got {n_atoms}")
    if r < 0 or r > n_atoms:
        raise DomainError(f"r must lie in [0, {n_atoms}], got {r}")
    return math.sqrt(1.0 - r / n_atoms)


def raising_matrix(model: DickeModel, r_max: int) -> np.ndarray:
    """
    Normalized raising operator on the collective ladder |0>, ..., |r_max>.

    Args:
        model: Dicke model
        r_max: Highest ladder state kept (clipped to N for finite models)

    Returns:
        Real (r_max+1) x (r_max+1) matrix with the step coefficients on the
        first subdiagonal
    """
    top = model.max_excitations(r_max)
    matrix = np.zeros((top + 1, top + 1))
    for r in range(top):
        matrix[r + 1, r] = dicke_step_coeff(r, model)
    return matrix
