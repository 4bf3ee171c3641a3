"""Linear-optics postselection experiments: lossy beam splitters and the nonlinear-sign gate."""

from .interferometer import (
    AbsorptionStats,
    InterferometerSpec,
    absorption_from_amplitudes,
    absorption_statistics,
    dilate_lossy_bs,
    fock_evolve_linear,
    hom_coincidence,
    output_distribution,
)
from .resch import absorption_curve, resch_experiment
from .ns_gate import (
    MODULUS_TOLERANCE,
    NsGateResult,
    ns_fidelity,
    ns_gate_search,
    ns_postselected_amplitudes,
    ns_success_probability,
    polish_gate,
    unitary_from_parameters,
)

__all__ = [
    "AbsorptionStats",
    "InterferometerSpec",
    "absorption_from_amplitudes",
    "absorption_statistics",
    "dilate_lossy_bs",
    "fock_evolve_linear",
    "hom_coincidence",
    "output_distribution",
    "absorption_curve",
    "resch_experiment",
    "MODULUS_TOLERANCE",
    "NsGateResult",
    "ns_fidelity",
    "ns_gate_search",
    "ns_postselected_amplitudes",
    "ns_success_probability",
    "polish_gate",
    "unitary_from_parameters",
]
