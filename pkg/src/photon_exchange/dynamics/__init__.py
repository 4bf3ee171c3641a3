"""Pulse sequences, the exchange Hamiltonian and exact sector evolution."""

from .pulses import DEFAULT_COUPLING_BOUND, DEFAULT_DURATION_BOUND, PulseSegment, PulseSequence
from .hamiltonian import HamiltonianMatrix, build_hamiltonian, effective_coupling, sector_generators
from .evolution import (
    check_segment_inverse,
    evolve_sequence,
    propagator_from_hamiltonian,
    sector_propagator,
    segment_propagators,
    single_particle_transfer,
)

__all__ = [
    "DEFAULT_COUPLING_BOUND",
    "DEFAULT_DURATION_BOUND",
    "PulseSegment",
    "PulseSequence",
    "HamiltonianMatrix",
    "build_hamiltonian",
    "effective_coupling",
    "sector_generators",
    "check_segment_inverse",
    "evolve_sequence",
    "propagator_from_hamiltonian",
    "sector_propagator",
    "segment_propagators",
    "single_particle_transfer",
]
