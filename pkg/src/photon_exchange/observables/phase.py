"""
Return probability, photon loss and the nonlinear phase shift.

The nonlinear phase compares the phase picked up by a two-photon probe with
the sum of single-photon phases:

    two-mode:  phi = arg A_11 - arg A_10 - arg A_01 + arg A_00
    one-mode:  phi = arg A_2 - 2 arg A_1 + arg A_0

where A is the amplitude to find the probe back in its initial Fock state
with the collective mode empty. Loss is any failure to return.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..dynamics import PulseSequence, sector_generators, sector_propagator
from ..errors import PhaseUndefinedError
from ..sector import DickeModel, StateVector, enumerate_sector

logger = logging.getLogger(__name__)

PHASE_AMPLITUDE_TOLERANCE = 1e-8
PHASE_WRAP_TOLERANCE = 1e-12


class Variant(str, Enum):
    """Which set of probe inputs defines the nonlinear phase."""

    TWO_MODE = "two-mode"
    ONE_MODE = "one-mode"


# probe label -> (occupation, weight of its arg in the phase combination)
PROBES: Dict[Variant, Dict[str, Tuple[Tuple[int, int, int], int]]] = {
    Variant.TWO_MODE: {
        "0,0": ((0, 0, 0), 1),
        "1,0": ((1, 0, 0), -1),
        "0,1": ((0, 1, 0), -1),
        "1,1": ((1, 1, 0), 1),
    },
    Variant.ONE_MODE: {
        "0": ((0, 0, 0), 1),
        "1": ((1, 0, 0), -2),
        "2": ((2, 0, 0), 1),
    },
}

# the two-photon probe whose return defines p0
MAIN_PROBE = {Variant.TWO_MODE: "1,1", Variant.ONE_MODE: "2"}


@dataclass
class EvolutionReport:
    """Outcome of running the phase probes through a pulse sequence."""

    variant: Variant
    p0: float
    p_loss: float
    phi_nl: Optional[float]
    per_input_return: Dict[str, float]
    composite_loss: float
    amplitudes: Dict[str, complex]
    final_states: Dict[str, StateVector] = field(default_factory=dict, repr=False)

    @property
    def phase_defined(self) -> bool:
        return self.phi_nl is not None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "variant": self.variant.value,
            "p0": self.p0,
            "p_loss": self.p_loss,
            "phi_nl": self.phi_nl,
            "phase_defined": self.phase_defined,
            "per_input_return": dict(self.per_input_return),
            "composite_loss": self.composite_loss,
            "amplitudes": {k: [v.real, v.imag] for k, v in self.amplitudes.items()},
            "final_states": {k: v.to_dict() for k, v in self.final_states.items()},
        }


def wrap_phase(x: float) -> float:
    """Wrap to (-pi, pi]; -pi maps to +pi."""
    wrapped = math.pi - ((math.pi - x) % (2 * math.pi))
    # sums of args land a few ulp inside -pi when the exact value is pi
    return math.pi if wrapped <= -math.pi + PHASE_WRAP_TOLERANCE else wrapped


def return_probability(final: StateVector, initial: StateVector) -> float:
    """
    Squared overlap |<initial|final>|^2.

    Raises:
        SectorMismatchError: If the states belong to different sectors
    """
    overlap = initial.overlap(final)
    return float(min(1.0, max(0.0, abs(overlap) ** 2)))


def probe_report(
    seq: PulseSequence,
    model: DickeModel,
    variant: Variant = Variant.TWO_MODE,
    amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE,
) -> EvolutionReport:
    """
    Evaluate all phase probes without raising on an undefined phase.

    Args:
        seq: Pulse sequence
        model: Dicke model
        variant: Probe set
        amplitude_tolerance: Smallest amplitude modulus whose arg is trusted

    Returns:
        EvolutionReport; phi_nl is None when any probe amplitude is below tolerance
    """
    variant = Variant(variant)
    probes = PROBES[variant]
    propagators: Dict[int, np.ndarray] = {}
    amplitudes: Dict[str, complex] = {}
    final_states: Dict[str, StateVector] = {}
    for label, (occupation, _) in probes.items():
        n_exc = sum(occupation)
        sector = enumerate_sector(n_exc, model)
        if n_exc not in propagators:
            propagators[n_exc] = sector_propagator(seq, sector)
        column = propagators[n_exc][:, sector.index(occupation)]
        amplitudes[label] = complex(column[sector.index(occupation)])
        final_states[label] = StateVector(sector=sector, amplitudes=column)

    per_input_return = {label: float(min(1.0, abs(a) ** 2)) for label, a in amplitudes.items()}
    composite_loss = max(1.0 - p for p in per_input_return.values())
    p0 = per_input_return[MAIN_PROBE[variant]]

    phi_nl: Optional[float] = None
    if all(abs(a) > amplitude_tolerance for a in amplitudes.values()):
        total = sum(weight * np.angle(amplitudes[label]) for label, (_, weight) in probes.items())
        phi_nl = wrap_phase(float(total))

    return EvolutionReport(
        variant=variant,
        p0=p0,
        p_loss=1.0 - p0,
        phi_nl=phi_nl,
        per_input_return=per_input_return,
        composite_loss=composite_loss,
        amplitudes=amplitudes,
        final_states=final_states,
    )


def nonlinear_phase(
    seq: PulseSequence,
    model: DickeModel,
    variant: Variant = Variant.TWO_MODE,
    amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE,
) -> Tuple[float, EvolutionReport]:
    """
    Nonlinear phase shift of a pulse sequence.

    Args:
        seq: Pulse sequence
        model: Dicke model
        variant: ``two-mode`` (cross-Kerr probes) or ``one-mode`` (self-Kerr probes)
        amplitude_tolerance: Smallest amplitude modulus whose arg is trusted

    Returns:
        Tuple of phi_nl wrapped to (-pi, pi] and the full report

    Raises:
        PhaseUndefinedError: If a probe is (almost) entirely lost
    """
    report = probe_report(seq, model, variant, amplitude_tolerance)
    if report.phi_nl is None:
        lost = [label for label, a in report.amplitudes.items() if abs(a) <= amplitude_tolerance]
        raise PhaseUndefinedError(
            f"Nonlinear phase undefined: probe(s) {', '.join(lost)} returned with amplitude below {amplitude_tolerance}",
            report=report,
        )
    return report.phi_nl, report


class ProbeEvaluator:
    """
    Composite loss and phi_NL of raw parameter vectors on one model.

    Sector generators and probe positions are resolved once. A call
    diagonalizes the K segments of each sector as a batch and carries only the
    probe columns through the sequence, which is what the optimizer needs per
    objective evaluation. Negative durations are clipped to zero.
    """

    def __init__(
        self,
        model: DickeModel,
        variant: Variant = Variant.TWO_MODE,
        amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE,
    ):
        self.model = model
        self.variant = Variant(variant)
        self.amplitude_tolerance = amplitude_tolerance
        probes = PROBES[self.variant]
        self.labels = list(probes)
        self.weights = np.array([weight for _, weight in probes.values()], dtype=float)

        by_sector: Dict[int, List[Tuple[int, Tuple[int, int, int]]]] = {}
        for position, (occupation, _) in enumerate(probes.values()):
            by_sector.setdefault(sum(occupation), []).append((position, occupation))

        self._sectors = []
        for n_exc, members in sorted(by_sector.items()):
            if n_exc == 0:
                # the vacuum does not couple: its amplitude is exactly 1
                continue
            sector = enumerate_sector(n_exc, model)
            a1, a2 = sector_generators(sector, model)
            rows = np.array([sector.index(occupation) for _, occupation in members])
            positions = np.array([position for position, _ in members])
            self._sectors.append((a1, a2, rows, positions))

    def amplitudes(self, x: np.ndarray) -> np.ndarray:
        """Return amplitudes in PROBES order for the flat vector [g1, g2, duration] * K."""
        values = np.asarray(x, dtype=float).reshape(-1, 3)
        out = np.ones(len(self.labels), dtype=complex)
        if len(values) == 0:
            return out
        durations = np.clip(values[:, 2], 0.0, None)
        for a1, a2, rows, positions in self._sectors:
            stacked = values[:, 0, None, None] * a1 + values[:, 1, None, None] * a2
            w, v = np.linalg.eigh(stacked)
            phases = np.exp(-1j * w * durations[:, None])
            columns = np.arange(len(rows))
            psi = np.zeros((a1.shape[0], len(rows)), dtype=complex)
            psi[rows, columns] = 1.0
            for k in range(len(values)):
                psi = v[k] @ (phases[k][:, None] * (v[k].T @ psi))
            out[positions] = psi[rows, columns]
        return out

    def evaluate(self, x: np.ndarray) -> Tuple[float, Optional[float]]:
        """
        Composite loss and phi_NL of one parameter vector.

        Returns:
            Tuple of the worst probe loss and phi_NL (None when undefined)
        """
        amplitudes = self.amplitudes(x)
        moduli = np.abs(amplitudes)
        composite_loss = float(np.max(1.0 - np.minimum(1.0, moduli**2)))
        if np.all(moduli > self.amplitude_tolerance):
            return composite_loss, wrap_phase(float(np.dot(self.weights, np.angle(amplitudes))))
        return composite_loss, None


@lru_cache(maxsize=64)
def probe_evaluator(
    model: DickeModel,
    variant: Variant = Variant.TWO_MODE,
    amplitude_tolerance: float = PHASE_AMPLITUDE_TOLERANCE,
) -> ProbeEvaluator:
    """Shared ProbeEvaluator per (model, variant, tolerance)."""
    return ProbeEvaluator(model, variant, amplitude_tolerance)
