"""Return probabilities, nonlinear phases and the bosonic-limit oracle."""

from .phase import (
    MAIN_PROBE,
    PHASE_AMPLITUDE_TOLERANCE,
    PROBES,
    EvolutionReport,
    ProbeEvaluator,
    Variant,
    nonlinear_phase,
    probe_evaluator,
    probe_report,
    return_probability,
    wrap_phase,
)
from .bosonic import (
    ScalingRow,
    bosonic_two_photon_amplitude,
    coupling_product_from_hamiltonian,
    is_unitary,
    occupation_to_modes,
    permanent,
    scaling_table,
    transition_amplitude,
    two_photon_coupling_product,
)

__all__ = [
    "MAIN_PROBE",
    "PHASE_AMPLITUDE_TOLERANCE",
    "PROBES",
    "EvolutionReport",
    "ProbeEvaluator",
    "Variant",
    "nonlinear_phase",
    "probe_evaluator",
    "probe_report",
    "return_probability",
    "wrap_phase",
    "ScalingRow",
    "bosonic_two_photon_amplitude",
    "coupling_product_from_hamiltonian",
    "is_unitary",
    "occupation_to_modes",
    "permanent",
    "scaling_table",
    "transition_amplitude",
    "two_photon_coupling_product",
]
