"""
Passive linear interferometers at desk scale.

An interferometer is a single-particle transfer matrix over optical modes.
Lossy elements are embedded in a larger unitary whose extra modes collect the
absorbed light, so photon loss becomes "photon ended in a loss mode".
Multi-photon amplitudes come from permanents of transfer submatrices.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..errors import DomainError, NonUnitaryError, UnphysicalBeamSplitterError, UnsupportedScaleError
from ..observables import is_unitary, transition_amplitude

logger = logging.getLogger(__name__)

MAX_PHOTONS = 2
PROBABILITY_TOLERANCE = 1e-12
# Slack on the spectral-norm test of a beam-splitter block
NORM_SLACK = 1e-12

Occupation = Tuple[int, ...]


@dataclass(frozen=True)
class InterferometerSpec:
    """Unitary single-particle mode map plus the modes that count as loss."""

    n_modes: int
    transfer: np.ndarray = field(repr=False)
    loss_modes: Tuple[int, ...] = ()

    def __post_init__(self):
        u = np.asarray(self.transfer, dtype=complex)
        if u.shape != (self.n_modes, self.n_modes):
            raise DomainError(f"Transfer matrix shape {u.shape} does not match {self.n_modes} modes")
        if not is_unitary(u):
            raise NonUnitaryError(f"Transfer matrix over {self.n_modes} modes is not unitary")
        bad = [m for m in self.loss_modes if not 0 <= m < self.n_modes]
        if bad:
            raise DomainError(f"Loss modes {bad} outside 0..{self.n_modes - 1}")
        u.setflags(write=False)
        object.__setattr__(self, "transfer", u)
        object.__setattr__(self, "loss_modes", tuple(sorted(set(int(m) for m in self.loss_modes))))

    @classmethod
    def from_transfer(cls, matrix: Any, loss_modes: Sequence[int] = ()) -> "InterferometerSpec":
        u = np.asarray(matrix, dtype=complex)
        if u.ndim != 2:
            raise DomainError(f"Transfer matrix must be 2-D, got shape {u.shape}")
        return cls(n_modes=u.shape[0], transfer=u, loss_modes=tuple(loss_modes))

    @property
    def signal_modes(self) -> Tuple[int, ...]:
        return tuple(m for m in range(self.n_modes) if m not in self.loss_modes)

    def doubled(self) -> "InterferometerSpec":
        """
        Attach a two-level internal label to every mode.

        Mode m with label l becomes mode 2m + l; the network acts identically
        on both labels.
        """
        loss = tuple(2 * m + label for m in self.loss_modes for label in (0, 1))
        return InterferometerSpec(
            n_modes=2 * self.n_modes,
            transfer=np.kron(self.transfer, np.eye(2)),
            loss_modes=loss,
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_modes": self.n_modes,
            "loss_modes": list(self.loss_modes),
            "transfer": [[[float(z.real), float(z.imag)] for z in row] for row in self.transfer],
        }


@dataclass
class AbsorptionStats:
    """Probability that k photons ended in loss modes, k = 0, 1, 2."""

    p_absorbed: Dict[int, float]

    def __post_init__(self):
        self.p_absorbed = {k: float(self.p_absorbed.get(k, 0.0)) for k in range(MAX_PHOTONS + 1)}
        total = sum(self.p_absorbed.values())
        if abs(total - 1.0) > PROBABILITY_TOLERANCE:
            raise DomainError(f"Absorption probabilities sum to {total!r}, expected 1")
        if any(p < -PROBABILITY_TOLERANCE or p > 1 + PROBABILITY_TOLERANCE for p in self.p_absorbed.values()):
            raise DomainError(f"Absorption probabilities out of range: {self.p_absorbed}")

    def to_dict(self) -> Dict[str, float]:
        return {f"p{k}": p for k, p in self.p_absorbed.items()}


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    """Square root of a Hermitian positive semidefinite matrix; tiny negative eigenvalues are clipped."""
    values, vectors = np.linalg.eigh(m)
    return (vectors * np.sqrt(np.clip(values, 0.0, None))) @ vectors.conj().T


def dilate_lossy_bs(t: complex, r: complex) -> InterferometerSpec:
    """
    Embed the symmetric beam-splitter block [[t, r], [r, t]] in a 4-mode unitary.

    Modes 0 and 1 are the signal ports, modes 2 and 3 collect the absorbed
    light. The completion is the unitary dilation

        W = [[A, sqrt(I - A A^H)], [sqrt(I - A^H A), -A^H]]

    which is fixed once A is given.

    Raises:
        UnphysicalBeamSplitterError: If |t + r| > 1 or |t - r| > 1
    """
    t, r = complex(t), complex(r)
    # The block is diagonal in the symmetric/antisymmetric port basis
    for name, value in (("t + r", t + r), ("t - r", t - r)):
        if abs(value) > 1.0 + NORM_SLACK:
            raise UnphysicalBeamSplitterError(f"|{name}| = {abs(value):.6g} exceeds 1 for t={t}, r={r}")

    a = np.array([[t, r], [r, t]], dtype=complex)
    eye = np.eye(2)
    w = np.block(
        [
            [a, _psd_sqrt(eye - a @ a.conj().T)],
            [_psd_sqrt(eye - a.conj().T @ a), -a.conj().T],
        ]
    )
    logger.debug(f"Dilated beam splitter t={t}, r={r}")
    return InterferometerSpec(n_modes=4, transfer=w, loss_modes=(2, 3))


@lru_cache(maxsize=64)
def _occupations(n_modes: int, n_photons: int) -> Tuple[Occupation, ...]:
    """All occupation vectors with n_photons over n_modes, in a fixed order."""
    result: List[Occupation] = []
    for modes in itertools.combinations_with_replacement(range(n_modes), n_photons):
        occ = [0] * n_modes
        for m in modes:
            occ[m] += 1
        result.append(tuple(occ))
    return tuple(result)


def _check_input(spec: InterferometerSpec, input_occ: Sequence[int]) -> Occupation:
    occ = tuple(int(n) for n in input_occ)
    if len(occ) != spec.n_modes:
        raise DomainError(f"Occupation {occ} has {len(occ)} entries for {spec.n_modes} modes")
    if any(n < 0 for n in occ):
        raise DomainError(f"Negative occupation in {occ}")
    if sum(occ) > MAX_PHOTONS:
        raise UnsupportedScaleError(f"{sum(occ)} photons requested; at most {MAX_PHOTONS} are supported")
    return occ


def fock_evolve_linear(spec: InterferometerSpec, input_occ: Sequence[int]) -> Dict[Occupation, complex]:
    """
    Output amplitudes of a Fock input state.

    Args:
        spec: Interferometer
        input_occ: Photon number per mode

    Returns:
        Map from every output occupation with the same photon number to its amplitude

    Raises:
        UnsupportedScaleError: For more than two photons
    """
    occ = _check_input(spec, input_occ)
    return {out: transition_amplitude(spec.transfer, occ, out) for out in _occupations(spec.n_modes, sum(occ))}


def output_distribution(spec: InterferometerSpec, input_occ: Sequence[int]) -> Dict[Occupation, float]:
    return {out: float(abs(amp) ** 2) for out, amp in fock_evolve_linear(spec, input_occ).items()}


def absorption_from_amplitudes(spec: InterferometerSpec, amplitudes: Dict[Occupation, complex]) -> AbsorptionStats:
    """Group output probabilities by the number of photons found in loss modes."""
    p = {k: 0.0 for k in range(MAX_PHOTONS + 1)}
    for out, amp in amplitudes.items():
        absorbed = sum(out[m] for m in spec.loss_modes)
        p[absorbed] += float(abs(amp) ** 2)
    return AbsorptionStats(p_absorbed=p)


def absorption_statistics(spec: InterferometerSpec, input_occ: Sequence[int]) -> AbsorptionStats:
    return absorption_from_amplitudes(spec, fock_evolve_linear(spec, input_occ))


def hom_coincidence(t: complex, r: complex) -> float:
    """
    Coincidence probability for one photon in each port of a lossless beam splitter.

    Raises:
        NonUnitaryError: If [[t, r], [r, t]] is not unitary
    """
    spec = InterferometerSpec.from_transfer([[t, r], [r, t]])
    return float(abs(fock_evolve_linear(spec, (1, 1))[(1, 1)]) ** 2)
