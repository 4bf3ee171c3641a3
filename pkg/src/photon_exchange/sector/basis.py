"""
Excitation-number sectors of the two photon modes plus one collective mode.

Every term of the exchange Hamiltonian moves one excitation between a photon
mode and the collective mode, so the total n1 + n2 + r is conserved and the
dynamics split into independent finite sectors.
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from ..errors import DomainError, SectorMismatchError
from .dicke import DickeModel, dicke_step_coeff

logger = logging.getLogger(__name__)

Occupation = Tuple[int, int, int]


@dataclass(frozen=True)
class SectorBasis:
    """
    Ordered basis |n1, n2, r> of one excitation sector.

    States are sorted lexicographically on (n1, n2, r). The sector remembers
    the Dicke model it was enumerated for, since the ladder cap and the
    coupling coefficients both depend on it.
    """

    n_exc: int
    states: Tuple[Occupation, ...]
    model: DickeModel = DickeModel()
    _positions: Dict[Occupation, int] = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_positions", {state: i for i, state in enumerate(self.states)})

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, occupation) -> bool:
        return tuple(occupation) in self._positions

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, occupation: Sequence[int]) -> int:
        """Position of an occupation triple in the basis ordering."""
        key = tuple(int(n) for n in occupation)
        try:
            return self._positions[key]
        except KeyError:
            raise DomainError(f"Occupation {key} is not a state of sector n_exc={self.n_exc}")


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes aligned with a sector basis."""

    sector: SectorBasis
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.shape != (self.sector.dim,):
            raise SectorMismatchError(
                f"Amplitude vector of shape {amplitudes.shape} does not match sector dimension {self.sector.dim}"
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        if self.sector != other.sector:
            raise SectorMismatchError(
                f"Cannot overlap states of sectors n_exc={self.sector.n_exc} and n_exc={other.sector.n_exc}"
            )
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def amplitude(self, occupation: Sequence[int]) -> complex:
        return complex(self.amplitudes[self.sector.index(occupation)])

    def probabilities(self) -> Dict[Occupation, float]:
        return {state: float(abs(a) ** 2) for state, a in zip(self.sector.states, self.amplitudes)}

    def to_dict(self) -> Dict[str, list]:
        """JSON-friendly form: occupation label -> [re, im]."""
        return {
            ",".join(str(n) for n in state): [float(a.real), float(a.imag)]
            for state, a in zip(self.sector.states, self.amplitudes)
        }


@lru_cache(maxsize=256)
def enumerate_sector(n_exc: int, model: DickeModel) -> SectorBasis:
    """
    Enumerate all |n1, n2, r> with n1 + n2 + r = n_exc.

    Args:
        n_exc: Total excitation number
        model: Dicke model; finite N drops states with r > N

    Returns:
        SectorBasis in lexicographic order on (n1, n2, r)
    """
    if n_exc < 0:
        raise DomainError(f"Excitation number must be non-negative, got {n_exc}")
    r_cap = model.max_excitations(n_exc)
    states = []
    for n1 in range(n_exc + 1):
        for n2 in range(n_exc - n1 + 1):
            r = n_exc - n1 - n2
            if r <= r_cap:
                states.append((n1, n2, r))
    logger.debug(f"Sector n_exc={n_exc} (N={model.label}) has {len(states)} states")
    return SectorBasis(n_exc=n_exc, states=tuple(states), model=model)


def sector_size(n_exc: int, model: DickeModel) -> int:
    """Stars-and-bars count with the r <= N filter applied."""
    total = math.comb(n_exc + 2, 2)
    if model.n_atoms is None or model.n_atoms >= n_exc:
        return total
    # states with r = N+1 .. n_exc each leave n_exc - r + 1 photon splittings
    excess = sum(n_exc - r + 1 for r in range(model.n_atoms + 1, n_exc + 1))
    return total - excess


def basis_state(sector: SectorBasis, occupation: Sequence[int]) -> StateVector:
    """Fock state |n1, n2, r> as a StateVector of its sector."""
    amplitudes = np.zeros(sector.dim, dtype=complex)
    amplitudes[sector.index(occupation)] = 1.0
    return StateVector(sector=sector, amplitudes=amplitudes)


def superposition(sector: SectorBasis, weights: Iterable[Tuple[Sequence[int], complex]]) -> StateVector:
    """Normalized superposition of Fock states of one sector."""
    amplitudes = np.zeros(sector.dim, dtype=complex)
    for occupation, weight in weights:
        amplitudes[sector.index(occupation)] += weight
    norm = np.linalg.norm(amplitudes)
    if norm == 0:
        raise DomainError("Superposition weights sum to the zero vector")
    return StateVector(sector=sector, amplitudes=amplitudes / norm)


@lru_cache(maxsize=512)
def _coupling_matrix_cached(mode: int, sector: SectorBasis, model: DickeModel) -> np.ndarray:
    matrix = np.zeros((sector.dim, sector.dim), dtype=complex)
    for col, (n1, n2, r) in enumerate(sector.states):
        n_m = n1 if mode == 1 else n2
        if n_m == 0:
            continue
        step = dicke_step_coeff(r, model)
        if step == 0.0:
            continue
        target = (n1 - 1, n2, r + 1) if mode == 1 else (n1, n2 - 1, r + 1)
        matrix[sector.index(target), col] = step * math.sqrt(n_m)
    matrix.setflags(write=False)
    return matrix


def coupling_matrix(mode: int, sector: SectorBasis, model: DickeModel) -> np.ndarray:
    """
    Matrix of R+ a_m (normalized collective operator) restricted to a sector.

    Args:
        mode: Photon mode, 1 or 2
        sector: Sector basis
        model: Dicke model

    Returns:
        Complex matrix C_m with C_m[target, source] = step(r) * sqrt(n_m) where
        target moves one photon from mode m into the collective mode
    """
    if mode not in (1, 2):
        raise DomainError(f"Photon mode must be 1 or 2, got {mode}")
    if sector.model.n_atoms != model.n_atoms:
        raise SectorMismatchError(f"Sector was enumerated for N={sector.model.label}, not N={model.label}")
    return _coupling_matrix_cached(mode, sector, model).copy()
